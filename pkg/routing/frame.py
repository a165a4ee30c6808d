# routing/frame.py
"""
Normalized frame of a route: s at the origin, t on the positive x-axis.

Only rotation and translation are applied, so lengths and angles carry over
unchanged. The bound checks additionally divide by |st|.
"""
import math
from dataclasses import dataclass
from typing import Iterable, List

import numpy as np

from geometry.primitives import Point
from infrastructure.errors import InvalidPairError


@dataclass(frozen=True)
class NormalizedFrame:
    origin: Point
    cos: float
    sin: float
    length: float

    @classmethod
    def from_points(cls, s, t) -> "NormalizedFrame":
        dx, dy = t[0] - s[0], t[1] - s[1]
        length = math.hypot(dx, dy)
        if length == 0:
            raise InvalidPairError(f"source and target coincide at {tuple(s)}")
        return cls(Point(float(s[0]), float(s[1])), dx / length, dy / length, length)

    @property
    def target(self) -> Point:
        return Point(self.length, 0.0)

    def to_local(self, p) -> Point:
        x, y = p[0] - self.origin.x, p[1] - self.origin.y
        return Point(self.cos * x + self.sin * y, -self.sin * x + self.cos * y)

    def to_world(self, p) -> Point:
        x, y = p[0], p[1]
        return Point(self.origin.x + self.cos * x - self.sin * y, self.origin.y + self.sin * x + self.cos * y)

    def many_to_local(self, points: Iterable) -> List[Point]:
        arr = np.asarray(list(points), dtype=float).reshape(-1, 2) - np.asarray(self.origin)
        rot = np.array([[self.cos, -self.sin], [self.sin, self.cos]])
        return [Point(float(x), float(y)) for x, y in arr @ rot]
