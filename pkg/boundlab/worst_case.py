# boundlab/worst_case.py
"""
Worst-case circles of a Chew trace.

For every step p_i -> p_{i+1} the analysis replaces the circumcircle by a
circle of the pencil through p_i and p_{i+1}, pushed towards the side of the
traversed arc: either the one with a vertical tangent at p_i, or the one
tangent to line st. Everything here lives in the normalized frame with
s = (0, 0) and t = (1, 0).
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import structlog

from geometry.primitives import (
    Circle,
    Orientation,
    Point,
    circle_segment_intersections,
    distance,
    sweep_between,
)
from infrastructure.errors import InvalidPairError
from routing.chew import RoutingTrace
from triangulation.corridor import vertex_side

logger = structlog.get_logger(__name__)

DELTA = 0.185043874
UPPER_BOUND = 1.185043874 + 1.5 * math.pi
TAU_NUM = 1e-9

UNIT_SEGMENT = (Point(0.0, 0.0), Point(1.0, 0.0))


class CircleType(str, Enum):
    A1 = "A1"
    A2 = "A2"
    B = "B"


@dataclass(frozen=True)
class WorstCaseStep:
    index: int
    vertex: int
    next_vertex: int
    p: Point
    next: Point
    orientation: Orientation
    circle: Circle
    type: CircleType
    construction: str
    t_vertex: int
    t_point: Point
    alpha: float
    theta: Optional[float] = None
    routing_circle: Optional[Circle] = None
    routing_arc_length: float = 0.0
    routing_alpha: Optional[float] = None
    routing_theta: Optional[float] = None

    @property
    def center(self) -> Point:
        return self.circle.center

    @property
    def west(self) -> Point:
        return self.circle.west

    @property
    def s_point(self) -> Point:
        return Point(self.west.x, 0.0)

    @property
    def t_prime(self) -> Point:
        return Point(self.t_point.x, 0.0)

    @property
    def arc_prime_length(self) -> float:
        return self.circle.radius * sweep_between(self.circle, self.p, self.next, self.orientation)

    @property
    def path_length(self) -> float:
        """Vertical drop from w' to the axis plus the arc from w' to p_{i+1}"""
        return abs(self.west.y) + self.circle.radius * sweep_between(self.circle, self.west, self.next, self.orientation)

    @property
    def partial_path_length(self) -> float:
        """Same path stopped at p_i"""
        return abs(self.west.y) + self.circle.radius * self.alpha


def _pencil(p: Point, q: Point, orientation: Orientation) -> Tuple[Point, Point, float]:
    """Chord midpoint, unit normal towards the side of the oriented arc, half-chord squared"""
    dx, dy = q.x - p.x, q.y - p.y
    length = math.hypot(dx, dy)
    if length == 0:
        raise InvalidPairError(f"degenerate chord at {tuple(p)}")
    # clockwise arcs from p to q run left of the directed chord
    if orientation is Orientation.CLOCKWISE:
        n = Point(-dy / length, dx / length)
    else:
        n = Point(dy / length, -dx / length)
    m = Point((p.x + q.x) / 2, (p.y + q.y) / 2)
    return m, n, (length / 2) ** 2


def _pencil_circle(m: Point, n: Point, lam: float, h2: float) -> Circle:
    return Circle(Point(m.x + lam * n.x, m.y + lam * n.y), math.sqrt(h2 + lam * lam))


def pencil_offset(circle: Circle, p: Point, q: Point, orientation: Orientation) -> float:
    m, n, _ = _pencil(p, q, orientation)
    return (circle.center.x - m.x) * n.x + (circle.center.y - m.y) * n.y


def vertical_tangent_circle(p: Point, q: Point, orientation: Orientation) -> Optional[Circle]:
    """Circle through p and q whose tangent at p is vertical; None for a vertical chord"""
    m, n, h2 = _pencil(p, q, orientation)
    if abs(n.y) < 1e-15:
        return None
    return _pencil_circle(m, n, (p.y - m.y) / n.y, h2)


def axis_tangent_circle(p: Point, q: Point, orientation: Orientation, min_offset: float) -> Optional[Circle]:
    """First circle through p and q tangent to the x-axis, pushing the pencil past min_offset"""
    m, n, h2 = _pencil(p, q, orientation)
    # |c_y| = r with c = m + lam * n, r^2 = h2 + lam^2
    a = -(n.x * n.x)
    b = 2.0 * m.y * n.y
    c = m.y * m.y - h2
    if abs(a) < 1e-15:
        roots = [] if b == 0 else [-c / b]
    else:
        disc = b * b - 4 * a * c
        if disc < 0:
            return None
        root = math.sqrt(disc)
        roots = [(-b - root) / (2 * a), (-b + root) / (2 * a)]
    ahead = [lam for lam in roots if lam >= min_offset - 1e-12]
    if not ahead:
        return None
    return _pencil_circle(m, n, min(ahead), h2)


def _crosses(trace: RoutingTrace, sides: Sequence[int], path: Sequence[int], i: int, j: int) -> bool:
    """Does [p_i p_j] meet segment st?"""
    if path[i] in (trace.s, trace.t) or path[j] in (trace.s, trace.t):
        return True
    return sides[i] != sides[j]


def _sides(trace: RoutingTrace, points: Sequence[Point]) -> List[int]:
    path = trace.vertex_path
    tri = trace.triangulation
    out = []
    for v, p in zip(path, points):
        if v in (trace.s, trace.t):
            out.append(0)
        elif tri is not None:
            out.append(vertex_side(tri, trace.s, trace.t, v))
        else:
            out.append(1 if p.y >= 0 else -1)
    return out


def worst_case_circles(trace: RoutingTrace) -> List[WorstCaseStep]:
    """One worst-case step per routing step, in the unit frame"""
    scale = 1.0 / trace.st_distance
    path = trace.vertex_path
    points = [trace.steps[0].start.scale(scale)] + [step.end.scale(scale) for step in trace.steps]
    sides = _sides(trace, points)
    k = len(trace.steps)

    t_index = []
    for i in range(k + 1):
        j = next((j for j in range(i + 1, k + 1) if _crosses(trace, sides, path, i, j)), k)
        t_index.append(j)

    out: List[WorstCaseStep] = []
    for i, step in enumerate(trace.steps):
        p, q = points[i], points[i + 1]
        orientation = step.orientation or Orientation.CLOCKWISE
        routing_circle = None
        if step.circle is not None:
            routing_circle = Circle(step.circle.center.scale(scale), step.circle.radius * scale)
            offset = pencil_offset(routing_circle, p, q, orientation)
        else:
            offset = -math.inf

        chord_crosses = _crosses(trace, sides, path, i, i + 1)
        a2 = vertical_tangent_circle(p, q, orientation)
        circle, construction = None, ""
        if a2 is not None and (chord_crosses or len(circle_segment_intersections(a2, UNIT_SEGMENT)) == 2):
            circle, construction = a2, "A2"
        else:
            circle = axis_tangent_circle(p, q, orientation, offset)
            construction = "A1" if a2 is not None else "A1-vertical-chord"
        if circle is None:
            circle = a2 if a2 is not None else routing_circle
            construction = "A2-fallback" if a2 is not None else "circumcircle"
            logger.warning(f"step {i} of {trace.s}->{trace.t}: no tangent circle ahead, using {construction}")
        if circle is None:
            raise InvalidPairError(f"no worst-case circle for step {i} of {trace.s}->{trace.t}")

        at_west = distance(p, circle.west) <= circle.tolerance
        if i > 0 and _crosses(trace, sides, path, i - 1, i):
            ctype = CircleType.B
        elif at_west:
            ctype = CircleType.A2
        else:
            ctype = CircleType.A1

        alpha = 0.0 if at_west else sweep_between(circle, circle.west, p, orientation)
        theta = None
        routing_alpha = routing_theta = None
        if routing_circle is not None:
            routing_alpha = sweep_between(routing_circle, routing_circle.west, p, orientation)
        if out:
            prev = out[-1]
            theta = sweep_between(prev.circle, prev.west, p, prev.orientation)
            if prev.routing_circle is not None:
                routing_theta = sweep_between(prev.routing_circle, prev.routing_circle.west, p, prev.orientation)

        tj = t_index[i]
        out.append(
            WorstCaseStep(
                index=i,
                vertex=path[i],
                next_vertex=path[i + 1],
                p=p,
                next=q,
                orientation=orientation,
                circle=circle,
                type=ctype,
                construction=construction,
                t_vertex=path[tj],
                t_point=points[tj],
                alpha=alpha,
                theta=theta,
                routing_circle=routing_circle,
                routing_arc_length=step.arc_length * scale,
                routing_alpha=routing_alpha,
                routing_theta=routing_theta,
            )
        )
    return out
