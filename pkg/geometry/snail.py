# geometry/snail.py
"""
Snail curve between two points on a horizontal line: a vertical segment from
p up to p', followed by the clockwise three-quarter arc from p' to q on the
circle tangent to line pq at q and to the vertical line through p.
"""
import math
from dataclasses import dataclass
from typing import List

from geometry.primitives import Arc, Circle, Orientation, Point
from infrastructure.errors import InvalidPairError

SNAIL_FACTOR = 1.0 + 1.5 * math.pi


def snail_length(x_from: float, x_to: float) -> float:
    """Length of the snail curve spanning x_from..x_to"""
    return SNAIL_FACTOR * (x_to - x_from)


@dataclass(frozen=True)
class SnailCurve:
    start: Point
    end: Point
    circle: Circle

    @property
    def apex(self) -> Point:
        """Tangency point p' on the vertical line through start"""
        return self.circle.west

    @property
    def arc(self) -> Arc:
        return Arc(self.circle, self.apex, self.end, Orientation.CLOCKWISE)

    @property
    def length(self) -> float:
        return snail_length(self.start.x, self.end.x)

    def polyline(self, n: int = 64) -> List[Point]:
        return [self.start] + self.arc.sample(n)


def snail_curve(p, q) -> SnailCurve:
    if p[1] != q[1] or not p[0] < q[0]:
        raise InvalidPairError(f"snail curve needs y(p) = y(q) and x(p) < x(q), got {tuple(p)}, {tuple(q)}")
    r = q[0] - p[0]
    circle = Circle(Point(q[0], q[1] + r), r)
    return SnailCurve(Point(*p), Point(*q), circle)
