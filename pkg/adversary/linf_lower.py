# adversary/linf_lower.py
"""
Instance against k-local routers on L-infinity Delaunay triangulations.

s sits at the origin with k vertices on each of the open segments (s, q) and
(s, q'). A, B and t complete the upper route, B' the parallelogram q' B t B'.
[Bt] and [q'B'] are sampled densely. The twin reflects everything strictly
right of the line qq' over the x-axis; [q'B'] and B' lie left of it and stay.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import networkx as nx
import structlog

from adversary.l2_lower import reflect_right_of
from geometry.primitives import Point
from infrastructure.errors import ParameterOutOfRangeError
from triangulation.delaunay import Triangulation
from triangulation.linf import build_linf_delaunay_bruteforce
from triangulation.point_set import PointSet

logger = structlog.get_logger(__name__)

D = (2.0 - math.sqrt(2.0)) / 4.0
FORCED_LENGTH = 2.0 + math.sqrt(2.0) / 2.0
SHORTEST_LENGTH = 1.0 + math.sqrt(2.0)
COMPETITIVE_RATIO = FORCED_LENGTH / SHORTEST_LENGTH

DEFAULT_EPSILON = 1e-4
DEFAULT_DENSITY = 100.0


@dataclass(frozen=True)
class LinfLowerInstance:
    epsilon: float
    k: int
    density: float
    mirrored: bool
    point_set: PointSet
    triangulation: Triangulation = field(repr=False, compare=False)
    d: float = D

    def vertex(self, label: str) -> int:
        return self.point_set.role(label)

    @property
    def s(self) -> int:
        return self.vertex("s")

    @property
    def t(self) -> int:
        return self.vertex("t")

    @property
    def forced_side(self) -> int:
        """The end of the s-cluster from which every continuation pays 3 - 3d"""
        return self.vertex("q'") if self.mirrored else self.vertex("q")

    def bounds(self, graph: Optional[nx.Graph] = None) -> Dict[str, float]:
        g = graph if graph is not None else self.triangulation.graph()
        s, t, q = self.s, self.t, self.forced_side
        forced = nx.dijkstra_path_length(g, s, q, weight="weight") + nx.dijkstra_path_length(g, q, t, weight="weight")
        shortest = nx.dijkstra_path_length(g, s, t, weight="weight")
        st = math.dist(self.point_set[s], self.point_set[t])
        return {
            "forced_length": forced,
            "shortest_s_to_t": shortest,
            "st_distance": st,
            "routing_ratio": forced / st,
            "competitive_ratio": forced / shortest,
        }


def _on_segment(a: Point, b: Point, count: int) -> List[Point]:
    """count points strictly inside [ab], evenly spaced"""
    return [Point(a.x + (b.x - a.x) * m / (count + 1), a.y + (b.y - a.y) * m / (count + 1)) for m in range(1, count + 1)]


def gen_linf_lower(
    epsilon: float = DEFAULT_EPSILON, k: int = 3, mirrored: bool = False, density: float = DEFAULT_DENSITY
) -> LinfLowerInstance:
    if not 0 < epsilon <= 1e-2:
        raise ParameterOutOfRangeError(f"epsilon must lie in (0, 1e-2], got {epsilon}")
    if k < 1:
        raise ParameterOutOfRangeError(f"k must be at least 1, got {k}")
    if density < 1:
        raise ParameterOutOfRangeError(f"density must be at least 1 point per unit, got {density}")

    eps, h = epsilon, D
    s = Point(0.0, 0.0)
    q, q_prime = Point(eps, h), Point(2 * eps, -h)
    a = Point(3 * eps, 1 - D + eps)
    b = Point(1 + 2 * eps, 1 - D)
    t = Point(1 + 3 * eps, 0.0)
    b_prime = Point(q_prime.x + t.x - b.x, q_prime.y + t.y - b.y)

    dense_bt = _on_segment(b, t, max(1, math.ceil(math.dist(b, t) * density)))
    dense_qb = _on_segment(q_prime, b_prime, max(1, math.ceil(math.dist(q_prime, b_prime) * density)))

    named = {"s": s, "q": q, "q'": q_prime, "A": a, "B": b, "t": t, "B'": b_prime}
    coords: List[Point] = list(named.values())
    labels = list(named.keys())
    groups = (
        ("sq", _on_segment(s, q, k)),
        ("sq'", _on_segment(s, q_prime, k)),
        ("Bt", dense_bt),
        ("q'B'", dense_qb),
    )
    for prefix, pts in groups:
        coords += pts
        labels += [f"{prefix}-{m}" for m in range(len(pts))]

    if mirrored:
        coords = reflect_right_of(coords, q, q_prime)

    metadata: Dict[str, Any] = {
        "generator": "linf-lower",
        "epsilon": epsilon,
        "k": k,
        "density": density,
        "mirrored": mirrored,
        "d": D,
        "triangulation_rule": "brute-force empty-square edges, greedy planarisation shortest first, loose edges kept",
    }
    roles = {label: labels.index(label) for label in named}
    ps = PointSet.from_coordinates(coords, labels, roles=roles, metadata=metadata)
    try:
        tri = build_linf_delaunay_bruteforce(ps)
    except Exception as e:
        logger.error(f"linf-lower triangulation failed for epsilon={epsilon}, k={k}: {e}")
        raise

    logger.info(f"linf-lower epsilon={epsilon} k={k} mirrored={mirrored}: n={len(ps)}")
    return LinfLowerInstance(epsilon, k, density, mirrored, ps, tri)


def gen_linf_lower_pair(epsilon: float = DEFAULT_EPSILON, k: int = 3, density: float = DEFAULT_DENSITY):
    return gen_linf_lower(epsilon, k, False, density), gen_linf_lower(epsilon, k, True, density)
