# geometry/primitives.py
"""
Floating constructions: points, circles, oriented arcs and the helpers that
measure angles on them. Signs that decide combinatorics come from
geometry.predicates; everything here is a derived quantity.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, NamedTuple, Tuple

from geometry.predicates import orient
from infrastructure.errors import DegenerateTriangleError, GeometryError, OffCircleError

TWO_PI = 2.0 * math.pi


class Point(NamedTuple):
    x: float
    y: float

    def __sub__(self, other):  # type: ignore[override]
        return Point(self.x - other[0], self.y - other[1])

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def scale(self, k: float) -> "Point":
        return Point(self.x * k, self.y * k)

    def norm(self) -> float:
        return math.hypot(self.x, self.y)


def distance(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


class Orientation(str, Enum):
    CLOCKWISE = "cw"
    COUNTERCLOCKWISE = "ccw"

    def reverse(self) -> "Orientation":
        if self is Orientation.CLOCKWISE:
            return Orientation.COUNTERCLOCKWISE
        return Orientation.CLOCKWISE


def on_circle_tolerance(radius: float) -> float:
    return 1e-9 * max(1.0, radius)


@dataclass(frozen=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not (self.radius > 0) or not math.isfinite(self.radius):
            raise GeometryError(f"circle radius must be positive and finite, got {self.radius}")
        object.__setattr__(self, "center", Point(float(self.center[0]), float(self.center[1])))

    @property
    def west(self) -> Point:
        """Leftmost point"""
        return Point(self.center.x - self.radius, self.center.y)

    @property
    def tolerance(self) -> float:
        return on_circle_tolerance(self.radius)

    def offset(self, p) -> float:
        """Signed distance from the circle, positive outside"""
        return distance(self.center, p) - self.radius

    def contains_on(self, p, slack: float = 1.0) -> bool:
        return abs(self.offset(p)) <= slack * self.tolerance

    def point_at(self, angle: float) -> Point:
        return Point(
            self.center.x + self.radius * math.cos(angle),
            self.center.y + self.radius * math.sin(angle),
        )


def angle_of(circle: Circle, p) -> float:
    """Polar angle of p around the circle's center, in [0, 2pi)"""
    a = math.atan2(p[1] - circle.center.y, p[0] - circle.center.x)
    return a + TWO_PI if a < 0 else a


def _normalize_sweep(sweep: float, radius: float) -> float:
    sweep = sweep % TWO_PI
    # rounding can push an empty sweep to just under a full turn
    if TWO_PI - sweep <= on_circle_tolerance(radius) / radius:
        return 0.0
    return sweep


def sweep_between(circle: Circle, u, v, orientation: Orientation) -> float:
    """Angle swept going from u to v around the circle in the given direction"""
    if u[0] == v[0] and u[1] == v[1]:
        return 0.0
    au, av = angle_of(circle, u), angle_of(circle, v)
    if orientation is Orientation.COUNTERCLOCKWISE:
        return _normalize_sweep(av - au, circle.radius)
    return _normalize_sweep(au - av, circle.radius)


@dataclass(frozen=True)
class Arc:
    circle: Circle
    start: Point
    end: Point
    orientation: Orientation

    def __post_init__(self):
        for p in (self.start, self.end):
            if not self.circle.contains_on(p):
                raise OffCircleError(
                    f"point {tuple(p)} is {self.circle.offset(p):.3e} off circle "
                    f"center={tuple(self.circle.center)} r={self.circle.radius}"
                )

    @property
    def sweep(self) -> float:
        return sweep_between(self.circle, self.start, self.end, self.orientation)

    @property
    def length(self) -> float:
        return self.circle.radius * self.sweep

    def point_at(self, fraction: float) -> Point:
        a0 = angle_of(self.circle, self.start)
        step = self.sweep * fraction
        if self.orientation is Orientation.CLOCKWISE:
            step = -step
        return self.circle.point_at(a0 + step)

    def sample(self, n: int) -> List[Point]:
        return [self.point_at(i / n) for i in range(n + 1)]


def arc_between(circle: Circle, start, end, orientation: Orientation) -> Arc:
    return Arc(circle, Point(*start), Point(*end), orientation)


def circumcircle(a, b, c) -> Circle:
    if orient(a, b, c) == 0:
        raise DegenerateTriangleError(f"collinear triple {tuple(a)}, {tuple(b)}, {tuple(c)}")
    bx, by = b[0] - a[0], b[1] - a[1]
    cx, cy = c[0] - a[0], c[1] - a[1]
    d = 2.0 * (bx * cy - by * cx)
    b2 = bx * bx + by * by
    c2 = cx * cx + cy * cy
    ux = (cy * b2 - by * c2) / d
    uy = (bx * c2 - cx * b2) / d
    return Circle(Point(a[0] + ux, a[1] + uy), math.hypot(ux, uy))


def circle_segment_intersections(circle: Circle, seg: Tuple) -> List[Point]:
    """Points of the circle on the closed segment, ordered by x (then y)"""
    p0, p1 = seg
    dx, dy = p1[0] - p0[0], p1[1] - p0[1]
    length2 = dx * dx + dy * dy
    if length2 == 0:
        return [Point(*p0)] if circle.contains_on(p0) else []

    length = math.sqrt(length2)
    ux, uy = dx / length, dy / length
    # foot of the perpendicular from the center, as a distance along the segment
    fx, fy = circle.center.x - p0[0], circle.center.y - p0[1]
    along = fx * ux + fy * uy
    h = fx * uy - fy * ux
    disc = circle.radius * circle.radius - h * h
    tol = circle.tolerance

    if disc < -tol * tol:
        return []
    if abs(disc) <= tol * tol:
        candidates = [along]
    else:
        half = math.sqrt(disc)
        candidates = [along - half, along + half]

    slack = tol
    found = []
    for u in candidates:
        if -slack <= u <= length + slack:
            u = min(max(u, 0.0), length)
            found.append(Point(p0[0] + u * ux, p0[1] + u * uy))
    found.sort()
    return found


def circle_intersections(a: Circle, b: Circle) -> List[Point]:
    """Crossing points of two circles, ordered by y (lower first)"""
    dx, dy = b.center.x - a.center.x, b.center.y - a.center.y
    d = math.hypot(dx, dy)
    if d == 0 or d > a.radius + b.radius or d < abs(a.radius - b.radius):
        return []
    along = (a.radius * a.radius - b.radius * b.radius + d * d) / (2.0 * d)
    h = math.sqrt(max(a.radius * a.radius - along * along, 0.0))
    mx, my = a.center.x + along * dx / d, a.center.y + along * dy / d
    found = {Point(mx - h * dy / d, my + h * dx / d), Point(mx + h * dy / d, my - h * dx / d)}
    return sorted(found, key=lambda p: (p.y, p.x))
