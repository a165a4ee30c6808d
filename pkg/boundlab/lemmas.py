# boundlab/lemmas.py
"""
Numeric checks of the inequalities behind the upper bound, evaluated on the
worst-case steps of one trace. Each check yields rows with a margin; a row
passes when margin >= -tau, or margin > 0 for the strict angle rows.
All quantities are in the |st| = 1 frame.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd

from boundlab.worst_case import DELTA, TAU_NUM, CircleType, WorstCaseStep, worst_case_circles
from geometry.primitives import distance
from geometry.snail import snail_length
from routing.chew import RoutingTrace

THREE_HALF_PI = 1.5 * math.pi


@dataclass(frozen=True)
class LemmaCheck:
    check: str
    index: int
    margin: float
    # strict rows need a positive margin, tau does not relax them
    strict: bool = False

    def passed(self, tau: float = TAU_NUM) -> bool:
        return self.margin > 0.0 if self.strict else self.margin >= -tau

    def to_dict(self) -> Dict[str, object]:
        return {"check": self.check, "index": self.index, "margin": self.margin, "strict": self.strict}


@dataclass
class LemmaReport:
    rows: List[LemmaCheck] = field(default_factory=list)

    def __add__(self, other: "LemmaReport") -> "LemmaReport":
        return LemmaReport(self.rows + other.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def add(self, check: str, index: int, margin: float, strict: bool = False) -> None:
        self.rows.append(LemmaCheck(check, index, float(margin), strict))

    def violations(self, tau: float = TAU_NUM) -> List[LemmaCheck]:
        return [row for row in self.rows if not row.passed(tau)]

    def passed(self, tau: float = TAU_NUM) -> bool:
        return not self.violations(tau)

    def of(self, check: str) -> List[LemmaCheck]:
        return [row for row in self.rows if row.check == check]

    def min_margin(self, check: Optional[str] = None) -> Optional[float]:
        rows = self.of(check) if check else self.rows
        return min((row.margin for row in rows), default=None)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([row.to_dict() for row in self.rows], columns=["check", "index", "margin"])

    def summary(self) -> Dict[str, Dict[str, float]]:
        """Row count and smallest margin per check"""
        if not self.rows:
            return {}
        grouped = self.to_frame().groupby("check")["margin"].agg(["count", "min"])
        return {name: {"count": int(r["count"]), "min_margin": float(r["min"])} for name, r in grouped.iterrows()}


def _s_x(steps: Sequence[WorstCaseStep], i: int) -> float:
    return 1.0 if i == len(steps) else steps[i].s_point.x


def _t_x(steps: Sequence[WorstCaseStep], i: int) -> float:
    return 1.0 if i == len(steps) else steps[i].t_point.x


def check_si_order(steps: Sequence[WorstCaseStep]) -> LemmaReport:
    """x(s_{i-1}) <= x(s_i) and x(s_i) <= x(t_{i-1}) <= x(t_i) for 0 < i <= k"""
    report = LemmaReport()
    k = len(steps)
    if k < 2:
        return report
    for i in range(1, k + 1):
        report.add("s-order", i, _s_x(steps, i) - _s_x(steps, i - 1))
        report.add("s-before-t", i, _t_x(steps, i - 1) - _s_x(steps, i))
        report.add("t-order", i, _t_x(steps, i) - _t_x(steps, i - 1))
    return report


def check_angles(steps: Sequence[WorstCaseStep]) -> LemmaReport:
    """0 <= alpha < theta < 3pi/2, on the worst-case circles and on the circumcircles"""
    report = LemmaReport()
    for step in steps[1:]:
        i = step.index
        report.add("alpha-nonnegative", i, step.alpha)
        report.add("alpha-below-theta", i, step.theta - step.alpha, strict=True)
        report.add("theta-below-three-half-pi", i, THREE_HALF_PI - step.theta, strict=True)
        if step.routing_alpha is not None and step.routing_theta is not None:
            report.add("circumcircle-alpha-below-theta", i, step.routing_theta - step.routing_alpha, strict=True)
            report.add("circumcircle-theta-below-three-half-pi", i, THREE_HALF_PI - step.routing_theta, strict=True)
    return report


def induction_margins(prev: WorstCaseStep, cur: WorstCaseStep, delta: float = DELTA) -> Tuple[float, float]:
    """(margin of the general inequality, margin of the type-A form)"""
    lhs = prev.path_length + abs(prev.t_point.y)
    snail = snail_length(prev.s_point.x, cur.s_point.x)
    rhs = cur.partial_path_length + snail + abs(cur.t_point.y) + delta * abs(cur.t_point.x - prev.t_point.x)
    short = cur.partial_path_length + snail - prev.path_length
    return rhs - lhs, short


def check_induction(steps: Sequence[WorstCaseStep], delta: float = DELTA) -> LemmaReport:
    report = LemmaReport()
    for prev, cur in zip(steps, steps[1:]):
        general, short = induction_margins(prev, cur, delta)
        report.add("induction", cur.index, general)
        # t_0 = p_1 always since p_0 = s sits on st
        if prev.type is not CircleType.B and prev.index > 0:
            premise = 0.0 if prev.t_vertex == cur.t_vertex else -distance(prev.t_point, cur.t_point)
            report.add("induction-type-a-premise", cur.index, premise)
            report.add("induction-type-a", cur.index, short)
    return report


def check_closing_arc(steps: Sequence[WorstCaseStep]) -> LemmaReport:
    """The last path fits under the snail curve from s_{k-1} to t"""
    report = LemmaReport()
    if steps:
        last = steps[-1]
        report.add("closing-arc", last.index, snail_length(last.s_point.x, 1.0) - last.path_length)
    return report


def check_arc_domination(steps: Sequence[WorstCaseStep]) -> LemmaReport:
    report = LemmaReport()
    for step in steps:
        report.add("arc-domination", step.index, step.arc_prime_length - step.routing_arc_length)
    return report


def check_sums(steps: Sequence[WorstCaseStep]) -> LemmaReport:
    """Telescoping of the snail lengths and the total horizontal travel of t'"""
    report = LemmaReport()
    k = len(steps)
    if not k:
        return report
    total = sum(snail_length(_s_x(steps, i - 1), _s_x(steps, i)) for i in range(1, k + 1))
    whole = snail_length(_s_x(steps, 0), 1.0)
    report.add("snail-telescoping", k, 1e-12 * max(1.0, abs(whole)) - abs(total - whole))
    travel = sum(abs(_t_x(steps, i) - _t_x(steps, i - 1)) for i in range(1, k))
    report.add("t-prime-travel", k, 1.0 - travel)
    return report


def lemma_report(steps: Sequence[WorstCaseStep], delta: float = DELTA) -> LemmaReport:
    return (
        check_si_order(steps)
        + check_angles(steps)
        + check_induction(steps, delta)
        + check_closing_arc(steps)
        + check_arc_domination(steps)
        + check_sums(steps)
    )


def run_lemma_suite(trace: RoutingTrace, delta: float = DELTA) -> Tuple[List[WorstCaseStep], LemmaReport]:
    steps = worst_case_circles(trace)
    return steps, lemma_report(steps, delta)


def merge_reports(reports: Iterable[LemmaReport]) -> LemmaReport:
    out = LemmaReport()
    for report in reports:
        out.rows.extend(report.rows)
    return out
