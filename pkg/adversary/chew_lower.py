# adversary/chew_lower.py
"""
Point set on which Chew's routing path approaches [s p1] + [p1 p2] + S(p2, t).

C0 and C1 are fixed circles. After p1 and p2, a chain of circles C2.. climbs
an almost vertical line: every circle passes through t, and the chain point
on it sits a hair clockwise of its west point, so Chew keeps turning up. The
last circle has t as its lowest point and carries the closing arc, whose
samples are pushed outward so that every chord of the arc reaches t.

Chain heights, closing-arc sampling and perturbation directions are
reconstructed choices; they are recorded in the instance metadata
and checked on the generated triangulation.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import structlog

from geometry.primitives import Circle, Point, circle_intersections, circumcircle
from infrastructure.errors import ParameterOutOfRangeError
from routing.chew import RoutingTrace, chew_route
from triangulation.delaunay import Triangulation, build_delaunay
from triangulation.point_set import PointSet

logger = structlog.get_logger(__name__)

C0 = Circle(Point(-0.7652277146, 0.0), 0.2369448832)
C1 = Circle(Point(0.0, -0.0320133045), 1.0)
FEATURE_SCALE = C0.radius

ST_DISTANCE = 2.00166
ARC_PATH_LENGTH = 11.4660626
ROUTING_RATIO = 5.7282

# s sits this many epsilons clockwise past the west point of its circle
S_OFFSET = 4.0


@dataclass(frozen=True)
class ChewLowerInstance:
    c0: Circle
    c1: Circle
    spiral: Tuple[Circle, ...]
    j: int
    k: int
    epsilon: float
    point_set: PointSet
    triangulation: Triangulation = field(repr=False, compare=False)

    @property
    def s(self) -> int:
        return self.point_set.role("s")

    @property
    def t(self) -> int:
        return self.point_set.role("t")

    @property
    def closing_circle(self) -> Circle:
        return self.spiral[-1]

    def route(self) -> RoutingTrace:
        return chew_route(self.triangulation, self.s, self.t)

    def measurements(self) -> Dict[str, float]:
        trace = self.route()
        return {
            "st_distance": trace.st_distance,
            "arc_path_length": trace.arc_length,
            "edge_path_length": trace.edge_length,
            "routing_ratio": trace.arc_length / trace.st_distance,
        }


def _target() -> Point:
    """Rightmost crossing of C1 with the x-axis"""
    return Point(C1.center.x + math.sqrt(C1.radius**2 - C1.center.y**2), 0.0)


def _tilted_circle(p: Point, t: Point, alpha: float) -> Circle:
    """Circle through p and t on which p lies alpha clockwise past the west point"""
    ux, uy = math.cos(alpha), -math.sin(alpha)
    dx, dy = p.x - t.x, p.y - t.y
    radius = -(dx * dx + dy * dy) / (2.0 * (dx * ux + dy * uy))
    return Circle(Point(p.x + radius * ux, p.y + radius * uy), radius)


def _left_point_at_height(circle: Circle, y: float) -> Point:
    dy = y - circle.center.y
    if abs(dy) > circle.radius:
        raise ParameterOutOfRangeError(f"chain height {y} is above circle top {circle.center.y + circle.radius}")
    return Point(circle.center.x - math.sqrt(circle.radius**2 - dy * dy), y)


def _closing_point(circle: Circle, t: Point, alpha: float) -> Tuple[Point, Circle]:
    """Where the ray t + lam * (-cos a, 1 + sin a) leaves `circle`, and the circle tangent to the axis at t there"""
    vx, vy = -math.cos(alpha), 1.0 + math.sin(alpha)
    ox, oy = t.x - circle.center.x, t.y - circle.center.y
    lam = -2.0 * (ox * vx + oy * vy) / (vx * vx + vy * vy)
    if lam <= 0:
        raise ParameterOutOfRangeError("closing ray misses the last chain circle")
    top = Point(t.x + lam * vx, t.y + lam * vy)
    return top, Circle(Point(t.x, t.y + lam), lam)


def _chain(p2: Point, t: Point, j: int, alpha: float) -> Tuple[List[Point], List[Circle]]:
    """Chain points p2..p_{j+1} and circles C2..C_{j+1}; heights grow geometrically"""
    span = t.x - p2.x
    ceiling = span * (1.0 - 1.0 / j)
    points, circles = [p2], [_tilted_circle(p2, t, alpha)]
    for i in range(1, j - 1):
        y = p2.y * (ceiling / p2.y) ** (i / (j - 1))
        p = _left_point_at_height(circles[-1], y)
        points.append(p)
        circles.append(_tilted_circle(p, t, alpha))

    top, closing = _closing_point(circles[-1], t, alpha)
    if top.y <= points[-1].y:
        raise ParameterOutOfRangeError(f"closing point at height {top.y} is below the chain top {points[-1].y}")
    points.append(top)
    circles.append(closing)
    return points, circles


def _closing_arc(circle: Circle, k: int, alpha: float, epsilon: float) -> List[Point]:
    """k samples clockwise from the top point to t, pushed outward by a bump vanishing at both ends"""
    start, sweep = math.pi - alpha, 1.5 * math.pi - alpha
    out = []
    for m in range(1, k + 1):
        f = m / (k + 1)
        angle = start - sweep * f
        r = circle.radius * (1.0 + epsilon * math.sin(math.pi * f))
        out.append(Point(circle.center.x + r * math.cos(angle), circle.center.y + r * math.sin(angle)))
    return out


def _check_first_edges(instance: ChewLowerInstance) -> RoutingTrace:
    trace = instance.route()
    expected = (instance.s, instance.point_set.index_of("p1"), instance.point_set.index_of("p2"))
    if trace.vertex_path[:3] != expected:
        raise ParameterOutOfRangeError(
            f"Chew's route starts {trace.vertex_path[:3]}, expected {expected}; "
            f"epsilon={instance.epsilon} does not realise the construction"
        )
    return trace


def gen_chew_lower(j: int = 1000, k: int = 1000, epsilon: float = 1e-6, seed: int = 0) -> ChewLowerInstance:
    if j < 2 or k < 2:
        raise ParameterOutOfRangeError(f"j and k must be at least 2, got j={j}, k={k}")
    if not 0 < epsilon < 1e-4 * FEATURE_SCALE:
        raise ParameterOutOfRangeError(f"epsilon must lie in (0, {1e-4 * FEATURE_SCALE:.3e}), got {epsilon}")

    t = _target()
    # the lower crossing is w1
    p2 = circle_intersections(C0, C1)[-1]
    p1 = C1.point_at(math.pi - epsilon)
    start = circumcircle(C0.west, p1, p2)
    s = start.point_at(math.pi + S_OFFSET * epsilon)

    chain, spiral = _chain(p2, t, j, epsilon)
    arc = _closing_arc(spiral[-1], k, epsilon, epsilon)

    coords = [s, p1] + chain + arc + [t]
    labels = ["s", "p1"] + [f"p{i}" for i in range(2, len(chain) + 2)] + [f"a{m}" for m in range(1, k + 1)] + ["t"]
    metadata: Dict[str, Any] = {
        "generator": "chew-lower",
        "j": j,
        "k": k,
        "epsilon": epsilon,
        "chain_heights": "geometric from p2 to (1 - 1/j) of the horizontal span",
        "closing_arc_push": "outward, epsilon * R * sin(pi * f)",
        "s_offset": S_OFFSET * epsilon,
    }
    ps = PointSet.from_coordinates(coords, labels, roles={"s": 0, "t": len(coords) - 1}, metadata=metadata)

    try:
        tri = build_delaunay(ps, seed=seed)
    except Exception as e:
        logger.error(f"chew-lower triangulation failed for j={j}, k={k}: {e}")
        raise

    instance = ChewLowerInstance(C0, C1, tuple(spiral), j, k, epsilon, ps, tri)
    trace = _check_first_edges(instance)
    logger.info(
        f"chew-lower j={j} k={k}: n={len(ps)}, |st|={trace.st_distance:.6f}, "
        f"arc ratio {trace.arc_length / trace.st_distance:.4f}"
    )
    return instance
