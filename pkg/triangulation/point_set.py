# triangulation/point_set.py
"""
PointSet: the routing universe. Validated at construction; duplicates and
non-finite coordinates are rejected, never repaired.
"""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from geometry.primitives import Point
from infrastructure.errors import DuplicatePointError, NonFinitePointError, PointSetError


@dataclass(frozen=True)
class PointSet:
    points: Tuple[Point, ...]
    labels: Tuple[str, ...] = ()
    roles: Dict[str, int] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        pts = tuple(Point(float(p[0]), float(p[1])) for p in self.points)
        object.__setattr__(self, "points", pts)

        for i, p in enumerate(pts):
            if not (math.isfinite(p.x) and math.isfinite(p.y)):
                raise NonFinitePointError(f"point {i} has non-finite coordinates {tuple(p)}")

        seen: Dict[Point, int] = {}
        for i, p in enumerate(pts):
            if p in seen:
                raise DuplicatePointError(f"points {seen[p]} and {i} coincide at {tuple(p)}")
            seen[p] = i

        labels = tuple(self.labels) if self.labels else tuple(str(i) for i in range(len(pts)))
        if len(labels) != len(pts):
            raise PointSetError(f"{len(labels)} labels for {len(pts)} points")
        if len(set(labels)) != len(labels):
            raise PointSetError("point labels must be unique")
        object.__setattr__(self, "labels", labels)

        for role, idx in self.roles.items():
            if not 0 <= idx < len(pts):
                raise PointSetError(f"role {role!r} points at missing vertex {idx}")

    @classmethod
    def from_coordinates(
        cls,
        coords: Iterable[Sequence[float]],
        labels: Optional[Sequence[str]] = None,
        roles: Optional[Dict[str, int]] = None,
        metadata: Optional[Dict[str, Any]] = None,
    ) -> "PointSet":
        return cls(
            tuple(Point(float(c[0]), float(c[1])) for c in coords),
            tuple(labels) if labels else (),
            dict(roles or {}),
            dict(metadata or {}),
        )

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise PointSetError(f"no point labelled {label!r}") from None

    def role(self, name: str) -> int:
        if name not in self.roles:
            raise PointSetError(f"point set has no {name!r} role")
        return self.roles[name]

    def roles_of(self, idx: int) -> List[str]:
        return sorted(r for r, i in self.roles.items() if i == idx)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=float).reshape(len(self.points), 2)

    def transformed(self, fn) -> "PointSet":
        """Same labels and roles, coordinates mapped through fn"""
        return PointSet(tuple(fn(p) for p in self.points), self.labels, dict(self.roles), dict(self.metadata))


def rotate_45(ps: PointSet) -> PointSet:
    """Rotation turning L1 diamonds into L-infinity squares (up to scale)"""
    c = math.sqrt(0.5)
    return ps.transformed(lambda p: Point(c * (p.x - p.y), c * (p.x + p.y)))
