# routing/step.py
"""
One forwarding decision of Chew's rule, evaluated in the normalized frame.

Given the current vertex p and the triangle chosen for it, the circumcircle
is split by its west point w and by r, the rightmost point where it meets
[st]. The upper arc runs clockwise from w to r, the lower arc clockwise from
r back to w. From the upper arc the message walks clockwise, from the lower
arc counterclockwise, and stops at the first triangle vertex it meets. p = w
counts as upper. The two other vertices usually sit one on each arc, but a
thin triangle can put both on the same one; the walk still stops at the
first. Vertices sitting exactly on w or r belong to both arcs.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import structlog

from geometry.primitives import (
    TWO_PI,
    Arc,
    Circle,
    Orientation,
    Point,
    angle_of,
    circle_segment_intersections,
    circumcircle,
    distance,
)
from infrastructure.errors import RoutingInvariantError

logger = structlog.get_logger(__name__)

Tri = Tuple[int, int, int]


class Side(str, Enum):
    UPPER = "upper"
    LOWER = "lower"


class StepRule(str, Enum):
    UPPER = "upper"
    LOWER = "lower"
    UPPER_TIE_WEST = "upper-tie-west"
    DIRECT_EDGE = "direct-edge"


# arc membership classes of a triangle vertex
STRICT_UPPER = "upper"
STRICT_LOWER = "lower"
ENDPOINT = "endpoint"


@dataclass(frozen=True)
class RoutingStep:
    index: int
    current: int
    next: int
    start: Point
    end: Point
    rule: StepRule
    triangle: Optional[Tri] = None
    circle: Optional[Circle] = None
    west: Optional[Point] = None
    right: Optional[Point] = None
    side: Optional[Side] = None
    arc: Optional[Arc] = None
    cw_current: float = 0.0
    cw_right: float = 0.0
    vertex_classes: Tuple[Tuple[int, str], ...] = ()
    corridor_position: Optional[int] = None

    @property
    def edge_length(self) -> float:
        return distance(self.start, self.end)

    @property
    def arc_length(self) -> float:
        if self.arc is None:
            return self.edge_length
        return self.arc.length

    @property
    def orientation(self) -> Optional[Orientation]:
        if self.side is None:
            return None
        return Orientation.CLOCKWISE if self.side is Side.UPPER else Orientation.COUNTERCLOCKWISE


def clockwise_from_west(circle: Circle, p) -> float:
    """Clockwise angle from the west point of the circle to p, in [0, 2pi)"""
    return (math.pi - angle_of(circle, p)) % TWO_PI


def direct_step(index: int, current: int, target: int, start: Point, end: Point) -> RoutingStep:
    return RoutingStep(index, current, target, start, end, StepRule.DIRECT_EDGE)


def chew_step(
    index: int,
    current: int,
    triangle: Tri,
    local: Callable[[int], Point],
    target: int,
    length: float,
    corridor_position: Optional[int] = None,
) -> RoutingStep:
    """
    Apply the upper/lower arc rule at `current` inside `triangle`.

    `local` maps a vertex to its normalized coordinates, in which the segment
    runs from (0, 0) to (length, 0).
    """
    if current not in triangle:
        raise RoutingInvariantError(f"vertex {current} is not a corner of triangle {triangle}")
    others = [v for v in triangle if v != current]
    p = local(current)
    circle = circumcircle(*(local(v) for v in triangle))
    angle_tol = circle.tolerance / circle.radius

    right_vertex = None
    if target in triangle:
        right_vertex = target
        right = local(target)
    else:
        hits = circle_segment_intersections(circle, (Point(0.0, 0.0), Point(length, 0.0)))
        if not hits:
            raise RoutingInvariantError(f"circumcircle of {triangle} misses the segment")
        right = hits[-1]
        for v in triangle:
            if distance(local(v), right) <= circle.tolerance:
                right_vertex = v
                right = local(v)
    if right_vertex == current:
        raise RoutingInvariantError(f"vertex {current} is the rightmost crossing of its own circle at step {index}")

    cw_right = clockwise_from_west(circle, right)
    cw_p = clockwise_from_west(circle, p)
    at_west = min(cw_p, TWO_PI - cw_p) <= angle_tol
    if at_west:
        side, rule = Side.UPPER, StepRule.UPPER_TIE_WEST
        cw_p = 0.0
    elif cw_p <= cw_right:
        side, rule = Side.UPPER, StepRule.UPPER
    else:
        side, rule = Side.LOWER, StepRule.LOWER

    classes: Dict[int, str] = {}
    for v in others:
        if v == right_vertex:
            classes[v] = ENDPOINT
            continue
        cw_v = clockwise_from_west(circle, local(v))
        if min(cw_v, TWO_PI - cw_v) <= angle_tol:
            classes[v] = ENDPOINT
        elif cw_v < cw_right:
            classes[v] = STRICT_UPPER
        else:
            classes[v] = STRICT_LOWER

    orientation = Orientation.CLOCKWISE if side is Side.UPPER else Orientation.COUNTERCLOCKWISE
    nxt = min(others, key=lambda v: _sweep(circle, p, local(v), orientation))

    end = local(nxt)
    arc = Arc(circle, p, end, orientation)
    logger.debug(f"step {index}: {current} -> {nxt} via {rule.value} on triangle {triangle}")
    return RoutingStep(
        index=index,
        current=current,
        next=nxt,
        start=p,
        end=end,
        rule=rule,
        triangle=tuple(triangle),
        circle=circle,
        west=circle.west,
        right=right,
        side=side,
        arc=arc,
        cw_current=cw_p,
        cw_right=cw_right,
        vertex_classes=tuple(sorted(classes.items())),
        corridor_position=corridor_position,
    )


def _sweep(circle: Circle, u, v, orientation: Orientation) -> float:
    a = (angle_of(circle, v) - angle_of(circle, u)) % TWO_PI
    return a if orientation is Orientation.COUNTERCLOCKWISE else (TWO_PI - a) % TWO_PI
