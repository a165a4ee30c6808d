# boundlab/audit.py
"""
Worst observed ratios over many vertex pairs of one triangulation, with the
lemma suite run on every trace. Violations, including pairs the router fails
on, are collected into replayable counterexample bundles.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np
import structlog

from boundlab.lemmas import LemmaCheck, run_lemma_suite
from boundlab.ratios import RatioReport
from boundlab.worst_case import TAU_NUM, UPPER_BOUND
from infrastructure.errors import BoundViolationError, ConfigError, RoutingError
from routing.chew import RoutingTrace, chew_route
from triangulation.delaunay import Triangulation

logger = structlog.get_logger(__name__)

Pairs = Union[str, int, Sequence[Tuple[int, int]]]


@dataclass(frozen=True)
class PairRecord:
    s: int
    t: int
    ratio: float
    trace: RoutingTrace = field(repr=False, compare=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"s": self.s, "t": self.t, "ratio": self.ratio, "vertex_path": list(self.trace.vertex_path)}


@dataclass
class AuditResult:
    pairs_checked: int = 0
    worst_routing: Optional[PairRecord] = None
    worst_arc: Optional[PairRecord] = None
    worst_competitive: Optional[PairRecord] = None
    lemma_rows: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)
    routing_failures: int = 0
    bundles: List[Dict[str, Any]] = field(default_factory=list)
    bound: float = UPPER_BOUND

    @property
    def within_bound(self) -> bool:
        return self.worst_arc is None or self.worst_arc.ratio <= self.bound + TAU_NUM

    @property
    def clean(self) -> bool:
        return self.within_bound and not self.violations

    def to_dict(self) -> Dict[str, Any]:
        def rec(r):
            return r.to_dict() if r else None

        return {
            "pairs_checked": self.pairs_checked,
            "bound": self.bound,
            "worst_routing": rec(self.worst_routing),
            "worst_arc": rec(self.worst_arc),
            "worst_competitive": rec(self.worst_competitive),
            "lemma_rows": self.lemma_rows,
            "routing_failures": self.routing_failures,
            "violation_count": len(self.violations),
            "violations": self.violations,
        }


def counterexample_bundle(trace: RoutingTrace, rows: Sequence[LemmaCheck], reason: str) -> Dict[str, Any]:
    """Everything needed to replay a failing route"""
    tri = trace.triangulation
    ps = tri.point_set if tri is not None else None
    return {
        "reason": reason,
        "s": trace.s,
        "t": trace.t,
        "vertex_path": list(trace.vertex_path),
        "arc_length": trace.arc_length,
        "st_distance": trace.st_distance,
        "points": [[p.x, p.y] for p in ps.points] if ps else [],
        "labels": list(ps.labels) if ps else [],
        "seed": tri.build_info.get("seed") if tri is not None else None,
        "rows": [row.to_dict() for row in rows],
    }


def _failure_bundle(tri: Triangulation, s: int, t: int, error: Exception) -> Dict[str, Any]:
    ps = tri.point_set
    return {
        "reason": f"routing {s}->{t} failed: {error}",
        "s": s,
        "t": t,
        "vertex_path": [],
        "points": [[p.x, p.y] for p in ps.points],
        "labels": list(ps.labels),
        "seed": tri.build_info.get("seed"),
        "rows": [],
    }


def select_pairs(n: int, pairs: Pairs = "all", seed: int = 0) -> List[Tuple[int, int]]:
    if isinstance(pairs, str):
        if pairs != "all":
            raise ConfigError(f"unknown pair selection {pairs!r}")
        return [(s, t) for s in range(n) for t in range(n) if s != t]
    if isinstance(pairs, int):
        rng = np.random.default_rng(seed)
        out = []
        while len(out) < pairs:
            s, t = (int(v) for v in rng.integers(0, n, size=2))
            if s != t:
                out.append((s, t))
        return out
    return [(int(s), int(t)) for s, t in pairs]


def _keep_max(current: Optional[PairRecord], s: int, t: int, ratio: float, trace: RoutingTrace) -> PairRecord:
    if current is None or ratio > current.ratio:
        return PairRecord(s, t, ratio, trace)
    return current


def theorem1_audit(
    tri: Triangulation,
    pairs: Pairs = "all",
    seed: int = 0,
    lemmas: bool = True,
    strict: bool = False,
    tau: float = TAU_NUM,
) -> AuditResult:
    """
    Route every selected pair, keep the worst routing, arc and competitive
    ratios with their traces, and collect bound or lemma violations.
    strict=True raises BoundViolationError on the first violation.
    """
    result = AuditResult()
    graph: nx.Graph = tri.graph()
    selected = select_pairs(tri.n, pairs, seed)
    by_source: Dict[int, Dict[int, float]] = {}

    for s, t in selected:
        try:
            trace = chew_route(tri, s, t)
        except RoutingError as e:
            logger.error(f"audit failed routing {s}->{t}: {e}")
            bundle = _failure_bundle(tri, s, t, e)
            result.routing_failures += 1
            result.bundles.append(bundle)
            result.violations.append({"s": s, "t": t, "check": "routing", "index": None, "margin": None, "error": str(e)})
            if strict:
                raise BoundViolationError(bundle["reason"], bundle=bundle) from e
            continue

        if s not in by_source:
            by_source[s] = nx.single_source_dijkstra_path_length(graph, s, weight="weight")
        report = RatioReport(s, t, trace.st_distance, trace.edge_length, trace.arc_length, by_source[s][t])
        report.check()

        result.pairs_checked += 1
        result.worst_routing = _keep_max(result.worst_routing, s, t, report.routing_ratio, trace)
        result.worst_arc = _keep_max(result.worst_arc, s, t, report.arc_routing_ratio, trace)
        result.worst_competitive = _keep_max(result.worst_competitive, s, t, report.competitive_ratio, trace)

        failing: List[LemmaCheck] = []
        reason = ""
        if report.arc_routing_ratio > UPPER_BOUND + tau:
            reason = f"arc ratio {report.arc_routing_ratio:.12f} exceeds {UPPER_BOUND:.8f}"
        if lemmas:
            _, lemma = run_lemma_suite(trace)
            result.lemma_rows += len(lemma)
            failing = lemma.violations(tau)
            if failing and not reason:
                reason = f"{len(failing)} lemma rows below -{tau}"
        if reason:
            bundle = counterexample_bundle(trace, failing, reason)
            result.bundles.append(bundle)
            result.violations.extend({"s": s, "t": t, **row.to_dict()} for row in failing)
            if not failing:
                margin = UPPER_BOUND - report.arc_routing_ratio
                result.violations.append({"s": s, "t": t, "check": "upper-bound", "index": trace.k, "margin": margin})
            logger.warning(f"violation on {s}->{t}: {reason}")
            if strict:
                raise BoundViolationError(reason, bundle=bundle)

    if result.worst_arc is not None:
        logger.info(
            f"audited {result.pairs_checked} pairs on n={tri.n}: worst arc ratio {result.worst_arc.ratio:.6f}, "
            f"{len(result.violations)} violations"
        )
    return result

