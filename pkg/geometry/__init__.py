# geometry/__init__.py
"""Exact predicates and floating constructions on plane points, circles and arcs."""
from geometry.predicates import incircle, incircle_symbolic, orient
from geometry.primitives import (
    Arc,
    Circle,
    Orientation,
    Point,
    angle_of,
    arc_between,
    circle_intersections,
    circle_segment_intersections,
    circumcircle,
    sweep_between,
)
from geometry.snail import SnailCurve, snail_curve, snail_length

__all__ = [
    "Arc",
    "Circle",
    "Orientation",
    "Point",
    "SnailCurve",
    "angle_of",
    "arc_between",
    "circle_intersections",
    "circle_segment_intersections",
    "circumcircle",
    "incircle",
    "incircle_symbolic",
    "orient",
    "snail_curve",
    "snail_length",
    "sweep_between",
]
