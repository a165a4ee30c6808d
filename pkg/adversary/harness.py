# adversary/harness.py
"""
Indistinguishability harness: run one deterministic k-local router on an
instance and its mirrored twin, and check that it decides the same way for
as long as its k-hop views of the two instances are congruent.

Views are compared as geometric graphs: a networkx isomorphism whose node
match compares coordinates either directly or reflected over the x-axis
(s and t are fixed by that reflection).
"""
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx
import structlog
from networkx.algorithms import isomorphism

from adversary.l2_lower import right_of_line
from infrastructure.errors import LocalityViolationError
from routing.local import LocalRouter, LocalView, local_view
from triangulation.delaunay import Triangulation

logger = structlog.get_logger(__name__)

POSITION_TOL = 1e-12


@dataclass(frozen=True)
class RouterRun:
    path: Tuple[int, ...]
    length: float
    st_distance: float
    shortest_length: float
    reached: bool = True
    stop_reason: Optional[str] = None

    @property
    def routing_ratio(self) -> float:
        return self.length / self.st_distance if self.reached else math.inf

    @property
    def competitive_ratio(self) -> float:
        return self.length / self.shortest_length if self.reached else math.inf

    def to_dict(self) -> Dict[str, Any]:
        return {
            "path": list(self.path),
            "length": self.length,
            "st_distance": self.st_distance,
            "shortest_length": self.shortest_length,
            "reached": self.reached,
            "stop_reason": self.stop_reason,
            "routing_ratio": self.routing_ratio,
            "competitive_ratio": self.competitive_ratio,
        }


@dataclass(frozen=True)
class AdversaryVerdict:
    router: str
    hops: int
    original: RouterRun
    mirrored: RouterRun
    divergence: Optional[int]
    divergence_step: Optional[int]

    @property
    def routing_ratio(self) -> float:
        return max(self.original.routing_ratio, self.mirrored.routing_ratio)

    @property
    def competitive_ratio(self) -> float:
        return max(self.original.competitive_ratio, self.mirrored.competitive_ratio)

    @property
    def worse(self) -> str:
        return "mirrored" if self.mirrored.routing_ratio > self.original.routing_ratio else "original"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "router": self.router,
            "hops": self.hops,
            "divergence": self.divergence,
            "divergence_step": self.divergence_step,
            "routing_ratio": self.routing_ratio,
            "competitive_ratio": self.competitive_ratio,
            "worse": self.worse,
            "original": self.original.to_dict(),
            "mirrored": self.mirrored.to_dict(),
        }


class TeleportRouter:
    """
    Negative control: follows the global shortest path, which a k-local router
    cannot know. The harness hands it the whole graph through bind().
    """

    name = "teleport"
    hops = 1

    def __init__(self):
        self._next: Dict[int, int] = {}

    def bind(self, graph: nx.Graph, t: int) -> None:
        paths = nx.single_source_dijkstra_path(graph, t, weight="weight")
        self._next = {v: p[-2] for v, p in paths.items() if len(p) > 1}

    def decide(self, view: LocalView) -> int:
        return self._next[view.current]


def _congruences(a: LocalView, b: LocalView) -> List[Dict[int, int]]:
    """Vertex maps between two views that preserve edges, the current vertex and coordinates up to reflection"""
    found: List[Dict[int, int]] = []
    if a.graph.number_of_nodes() != b.graph.number_of_nodes():
        return found
    for sign in (1.0, -1.0):

        def match(u: Dict[str, Any], v: Dict[str, Any]) -> bool:
            (ux, uy), (vx, vy) = u["pos"], v["pos"]
            return abs(ux - vx) <= POSITION_TOL and abs(uy - sign * vy) <= POSITION_TOL

        matcher = isomorphism.GraphMatcher(a.graph, b.graph, node_match=match)
        found.extend(m for m in matcher.isomorphisms_iter() if m[a.current] == b.current)
    return found


@dataclass(frozen=True)
class LocalRoute:
    """Vertices visited by one router run; a run that loops or runs out of hops ends unreached"""

    path: Tuple[int, ...]
    views: Tuple[LocalView, ...]
    reached: bool = True
    stop_reason: Optional[str] = None


def route_local(
    router: LocalRouter, tri: Triangulation, s: int, t: int, hops: int, graph: Optional[nx.Graph] = None
) -> LocalRoute:
    """
    Run a router from s to t. The router only ever sees its k-hop view and
    must answer with a neighbour of the current vertex in that view. A run
    that revisits a vertex or exceeds n^2 moves is returned with reached=False.
    """
    g = graph if graph is not None else tri.graph()
    if hasattr(router, "bind"):
        router.bind(g, t)

    limit = tri.n * tri.n
    path, views, seen = [s], [], {s}
    current = s
    while current != t:
        if len(views) >= limit:
            return _stopped(router, path, views, f"no arrival at {t} within {limit} moves")
        view = local_view(g, current, s, t, hops)
        nxt = router.decide(view)
        if nxt == current or not view.graph.has_edge(current, nxt):
            raise LocalityViolationError(f"{router.name} jumped from {current} to non-neighbour {nxt}")
        views.append(view)
        path.append(nxt)
        # a router that sees only its view loops forever once it revisits a vertex
        if nxt in seen and not hasattr(router, "bind"):
            return _stopped(router, path, views, f"revisited vertex {nxt} on the way to {t}")
        seen.add(nxt)
        current = nxt
    return LocalRoute(tuple(path), tuple(views))


def _stopped(router: LocalRouter, path: List[int], views: List[LocalView], reason: str) -> LocalRoute:
    logger.warning(f"{router.name} stopped after {len(views)} moves: {reason}")
    return LocalRoute(tuple(path), tuple(views), reached=False, stop_reason=reason)


def _run_record(tri: Triangulation, graph: nx.Graph, route: LocalRoute, s: int, t: int) -> RouterRun:
    pts = tri.point_set.points
    path = route.path
    length = sum(math.dist(pts[u], pts[v]) for u, v in zip(path, path[1:]))
    shortest = nx.dijkstra_path_length(graph, s, t, weight="weight")
    return RouterRun(tuple(path), length, math.dist(pts[s], pts[t]), shortest, route.reached, route.stop_reason)


def adversary_run(router: LocalRouter, pair, hops: Optional[int] = None) -> AdversaryVerdict:
    """
    pair is an (instance, mirrored twin) tuple from the lower-bound generators.
    Raises LocalityViolationError when the router decides differently on
    congruent views. A twin the router never finishes is reported with
    reached=False and infinite ratios.
    """
    original, mirrored = pair
    k = hops if hops is not None else router.hops
    s, t = original.s, original.t

    runs: List[Tuple[LocalRoute, nx.Graph]] = []
    for instance in (original, mirrored):
        graph = instance.triangulation.graph()
        try:
            route = route_local(router, instance.triangulation, s, t, k, graph)
        except LocalityViolationError as e:
            logger.error(f"{router.name} failed on the {'mirrored' if instance.mirrored else 'original'} instance: {e}")
            raise
        runs.append((route, graph))

    (route_a, graph_a), (route_b, graph_b) = runs
    path_a, path_b = route_a.path, route_b.path
    divergence, divergence_step = None, None
    for i, (va, vb) in enumerate(zip(route_a.views, route_b.views)):
        mappings = _congruences(va, vb)
        if not mappings:
            divergence, divergence_step = va.current, i
            break
        if all(m.get(path_a[i + 1]) != path_b[i + 1] for m in mappings):
            raise LocalityViolationError(
                f"{router.name} moved {va.current}->{path_a[i + 1]} and {vb.current}->{path_b[i + 1]} "
                f"on congruent {k}-hop views at step {i}"
            )

    verdict = AdversaryVerdict(
        router.name,
        k,
        _run_record(original.triangulation, graph_a, route_a, s, t),
        _run_record(mirrored.triangulation, graph_b, route_b, s, t),
        divergence,
        divergence_step,
    )
    logger.info(
        f"adversary {router.name} k={k}: ratios {verdict.original.routing_ratio:.4f} / "
        f"{verdict.mirrored.routing_ratio:.4f}, divergence at {divergence}"
    )
    return verdict


def mirror_mismatches(pair, hops: int = 1) -> List[int]:
    """
    Vertices left of qq' whose k-hop views differ between the twins beyond a
    reflection. Empty when the twin construction is sound for every vertex
    whose view stays on the left.
    """
    original, mirrored = pair
    ga, gb = original.triangulation.graph(), mirrored.triangulation.graph()
    pts = original.point_set.points
    q, q_prime = pts[original.vertex("q")], pts[original.vertex("q'")]
    s, t = original.s, original.t
    bad = []
    for v in range(original.triangulation.n):
        va = local_view(ga, v, s, t, hops)
        if any(right_of_line(q, q_prime, pts[u]) for u in va.graph.nodes):
            continue
        if not _congruences(va, local_view(gb, v, s, t, hops)):
            bad.append(v)
    return bad
