# adversary/l2_lower.py
"""
Two-circle instance against every deterministic k-local router on Delaunay
triangulations.

Points sit densely on the arcs of C0 and C1 outside the other circle, with a
small gap around A and B where the shield vertices A' and B' stand.

The cocircular samples are pushed radially inward to choose the
triangulation. With x the position along the circle's axis (s-O0 for C0,
t-O1 for C1) and x_end the axis position of the junction closing the shorter
side (A on C0, B on C1), a sample sinks by

    lift * R * ((1 - x_end)^2 - max(0, x - x_end)^2)

The depth is strictly convex in x where both sides of the circle carry
samples, which gives ladder rungs crossing the axis, and constant over the
cap beyond x_end. The closing junction sits a little deeper than the cap and
the other junction a little shallower, so each cap is a fan from its closing
junction. Shortest paths then follow the arcs and no chord but [AB] shortens
them.

The mirrored twin reflects every point right of the line qq' over the x-axis.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Set, Tuple

import networkx as nx
import structlog

from geometry.predicates import orient
from geometry.primitives import Circle, Point, angle_of, circle_intersections
from infrastructure.errors import DensityTooLowError, ParameterOutOfRangeError
from triangulation.delaunay import Edge, Triangulation, build_delaunay
from triangulation.point_set import PointSet

logger = structlog.get_logger(__name__)

C0 = Circle(Point(1.0, 0.0), 1.0)
C1 = Circle(Point(1.4804533538, 0.2990071425), 1.2285346394)
SHIELD_OFFSET = 0.0718725166

ARC_S_TO_Q = 0.477998
Q_TO_T = 4.0693551467
ST_DISTANCE = 2.6720456033
SHORTEST_S_TO_T = 3.6888
ROUTING_RATIO = 1.7018
COMPETITIVE_RATIO = 1.2327

MIN_DENSITY = 100.0
DEFAULT_DENSITY = 500.0
DEFAULT_LIFT = 1e-7
# extra depth of a junction relative to the cap, in units of lift * R
JUNCTION_BIAS = 0.01
MAX_GAP_SHRINKS = 5

ROLE_LABELS = ("s", "t", "q", "q'", "A", "B", "A'", "B'")


@dataclass(frozen=True)
class L2LowerInstance:
    density: float
    gap: float
    mirrored: bool
    lift: float
    point_set: PointSet
    triangulation: Triangulation = field(repr=False, compare=False)
    c0: Circle = C0
    c1: Circle = C1
    shield_offset: float = SHIELD_OFFSET

    def vertex(self, label: str) -> int:
        return self.point_set.role(label)

    @property
    def s(self) -> int:
        return self.vertex("s")

    @property
    def t(self) -> int:
        return self.vertex("t")

    @property
    def q(self) -> int:
        return self.vertex("q")

    @property
    def q_prime(self) -> int:
        return self.vertex("q'")

    @property
    def forced_side(self) -> int:
        """q on the original, q' on the twin: the arc end from which the detour starts"""
        return self.q_prime if self.mirrored else self.q

    def bounds(self, graph: Optional[nx.Graph] = None) -> Dict[str, float]:
        g = graph if graph is not None else self.triangulation.graph()
        s, t, q = self.s, self.t, self.forced_side
        arc_sq = nx.dijkstra_path_length(g, s, q, weight="weight")
        q_to_t = nx.dijkstra_path_length(g, q, t, weight="weight")
        shortest = nx.dijkstra_path_length(g, s, t, weight="weight")
        st = math.dist(self.point_set[s], self.point_set[t])
        forced = arc_sq + q_to_t
        return {
            "arc_s_to_q": arc_sq,
            "q_to_t": q_to_t,
            "st_distance": st,
            "shortest_s_to_t": shortest,
            "routing_ratio": forced / st,
            "competitive_ratio": forced / shortest,
        }


def _target() -> Point:
    return Point(C1.center.x + math.sqrt(C1.radius**2 - C1.center.y**2), 0.0)


def _shield(p: Point) -> Point:
    d = p - C0.center
    k = 1.0 + SHIELD_OFFSET / d.norm()
    return C0.center + d.scale(k)


def _angles(a0: float, a1: float, radius: float, density: float, phase: float = 0.0) -> List[float]:
    """Samples a0 + (a1 - a0) * (m - phase) / n for m = 1..n, about `density` per unit of arc"""
    n = max(2, math.ceil(abs(a1 - a0) * radius * density))
    return [a0 + (a1 - a0) * (m - phase) / n for m in range(1, n + 1)]


def _depth(x: float, x_end: float) -> float:
    return (1.0 - x_end) ** 2 - max(0.0, x - x_end) ** 2


def _lifted(circle: Circle, axis: Point, angle: float, lift: float, x_end: float) -> Point:
    ux, uy = math.cos(angle), math.sin(angle)
    x = ux * axis.x + uy * axis.y
    r = circle.radius * (1.0 - lift * _depth(x, x_end))
    return Point(circle.center.x + r * ux, circle.center.y + r * uy)


def _junction(p: Point, axes: Tuple[Point, Point], ends: Tuple[float, float], lift: float, deeper_on_c0: bool) -> Point:
    """
    Move a circle intersection so that it sinks by the cap depth plus
    JUNCTION_BIAS on one circle and by the cap depth minus JUNCTION_BIAS on
    the other. The two radial conditions fix the displacement.
    """
    sink = []
    units = []
    for circle, axis, x_end, sign in zip((C0, C1), axes, ends, (1.0, -1.0) if deeper_on_c0 else (-1.0, 1.0)):
        u = (p - circle.center).scale(1.0 / circle.radius)
        x = u.x * axis.x + u.y * axis.y
        sink.append(lift * circle.radius * (_depth(x, x_end) + sign * JUNCTION_BIAS))
        units.append(u)
    (u0, u1), (d0, d1) = units, sink
    det = u0.x * u1.y - u0.y * u1.x
    dx = (-d0 * u1.y + d1 * u0.y) / det
    dy = (-d1 * u0.x + d0 * u1.x) / det
    return Point(p.x + dx, p.y + dy)


def _raw_points(density: float, gap: float, lift: float) -> Tuple[List[Point], List[str]]:
    s, t = Point(0.0, 0.0), _target()
    b, a = circle_intersections(C0, C1)
    theta_a, theta_b = angle_of(C0, a), angle_of(C0, b)
    theta_q = theta_a + math.acos(1.0 / (1.0 + SHIELD_OFFSET))
    gap0 = 2.0 * math.asin(gap / 2.0)
    gap1 = 2.0 * math.asin(gap / (2.0 * C1.radius))

    axis0 = Point(-1.0, 0.0)
    t_dir = (t - C1.center).scale(1.0 / C1.radius)
    # axis positions of the junctions closing the short side of each circle
    end0 = (a.x - C0.center.x) * axis0.x + (a.y - C0.center.y) * axis0.y
    ub = (b - C1.center).scale(1.0 / C1.radius)
    end1 = ub.x * t_dir.x + ub.y * t_dir.y
    coords: List[Point] = [s, t]
    labels = ["s", "t"]

    # C0: s -> q -> A on top, s -> q' -> B below, the lower samples offset by half a step
    upper = _angles(math.pi, theta_q, 1.0, density)
    upper_far = _angles(theta_q, theta_a + gap0, 1.0, density)
    lower = _angles(math.pi, 2.0 * math.pi - theta_q, 1.0, density, phase=0.5)
    lower_far = _angles(2.0 * math.pi - theta_q, theta_b - gap0, 1.0, density)

    q = _lifted(C0, axis0, theta_q, lift, end0)
    coords += [q, Point(q.x, -q.y)]
    labels += ["q", "q'"]
    for name, angles in (("u", upper[:-1] + upper_far), ("l", lower + lower_far)):
        coords += [_lifted(C0, axis0, a_, lift, end0) for a_ in angles]
        labels += [f"c0-{name}{m}" for m in range(len(angles))]

    # C1: clockwise from A over the top to t, then on to B
    phi_a, phi_t = angle_of(C1, a), angle_of(C1, t) - 2.0 * math.pi
    phi_b = angle_of(C1, b) - 2.0 * math.pi
    before_t = _angles(phi_a - gap1, phi_t, C1.radius, density, phase=1.0)
    after_t = _angles(phi_t, phi_b + gap1, C1.radius, density)
    arc1 = before_t + after_t
    coords += [_lifted(C1, t_dir, a_, lift, end1) for a_ in arc1]
    labels += [f"c1-{m}" for m in range(len(arc1))]

    axes, ends = (axis0, t_dir), (end0, end1)
    coords += [
        _junction(a, axes, ends, lift, deeper_on_c0=True),
        _junction(b, axes, ends, lift, deeper_on_c0=False),
        _shield(a),
        _shield(b),
    ]
    labels += ["A", "B", "A'", "B'"]
    return coords, labels


def right_of_line(q: Point, q_prime: Point, p) -> bool:
    """Strictly east of the line through q' and q"""
    return orient(q_prime, q, p) < 0


def reflect_right_of(coords: List[Point], q: Point, q_prime: Point) -> List[Point]:
    return [Point(p.x, -p.y) if right_of_line(q, q_prime, p) else p for p in coords]


def _group(label: str) -> Optional[int]:
    if label.startswith("c0-") or label in ("s", "q", "q'"):
        return 0
    if label.startswith("c1-") or label == "t":
        return 1
    return None


def shortcut_edges(ps: PointSet, tri: Triangulation) -> Set[Edge]:
    """Edges joining a C0 sample straight to a C1 sample, bypassing A, B and the shields"""
    groups = [_group(label) for label in ps.labels]
    return {(u, v) for u, v in tri.edges() if {groups[u], groups[v]} == {0, 1}}


def gen_l2_lower(
    density: float = DEFAULT_DENSITY,
    gap: Optional[float] = None,
    mirrored: bool = False,
    lift: float = DEFAULT_LIFT,
    seed: int = 0,
) -> L2LowerInstance:
    if density < MIN_DENSITY:
        raise DensityTooLowError(f"density {density} is below {MIN_DENSITY} points per unit arc")
    gap = SHIELD_OFFSET if gap is None else gap
    if not 0 < gap < 0.5:
        raise ParameterOutOfRangeError(f"gap must lie in (0, 0.5), got {gap}")
    if not 0 < lift < 1e-3:
        raise ParameterOutOfRangeError(f"lift must lie in (0, 1e-3), got {lift}")

    for attempt in range(MAX_GAP_SHRINKS + 1):
        coords, labels = _raw_points(density, gap, lift)
        roles = {label: labels.index(label) for label in ROLE_LABELS}
        if mirrored:
            coords = reflect_right_of(coords, coords[roles["q"]], coords[roles["q'"]])
        metadata: Dict[str, Any] = {
            "generator": "l2-lower",
            "density": density,
            "gap": gap,
            "mirrored": mirrored,
            "lift": lift,
            "triangulation_rule": "radial sink lift*R*((1-x_end)^2 - max(0, x-x_end)^2) along the s-O0 and t-O1 axes, caps fanned from the closing junction",
        }
        ps = PointSet.from_coordinates(coords, labels, roles=roles, metadata=metadata)
        try:
            tri = build_delaunay(ps, seed=seed)
        except Exception as e:
            logger.error(f"l2-lower triangulation failed at density={density}: {e}")
            raise

        shortcuts = shortcut_edges(ps, tri)
        if not shortcuts:
            break
        logger.warning(f"l2-lower: {len(shortcuts)} shortcut edges with gap={gap:.4g}, shrinking (attempt {attempt + 1})")
        gap *= 0.5
    else:
        raise DensityTooLowError(f"shortcut edges remain after {MAX_GAP_SHRINKS} gap shrinks at density={density}")

    for u, v in (("A", "A'"), ("B", "B'")):
        if not tri.has_edge(roles[u], roles[v]):
            raise DensityTooLowError(f"shield edge {u}{v} is missing at density={density}, gap={gap:.4g}")

    logger.info(f"l2-lower density={density} mirrored={mirrored}: n={len(ps)}, gap={gap:.4g}")
    return L2LowerInstance(density, gap, mirrored, lift, ps, tri)


def gen_l2_lower_pair(density: float = DEFAULT_DENSITY, gap: Optional[float] = None, seed: int = 0):
    """The instance and its mirrored twin"""
    return gen_l2_lower(density, gap, False, seed=seed), gen_l2_lower(density, gap, True, seed=seed)
