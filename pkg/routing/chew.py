# routing/chew.py
"""
Chew's routing algorithm on a Delaunay triangulation.

At every vertex p the router takes the rightmost corridor triangle having p
as a corner and applies the arc rule of routing.step. The next vertex lies on
the edge the segment leaves that triangle through, so the triangle order moves
forward at every step; only the last triangle, the one holding t, can be used
twice in a row. The header it needs is only (s, t); is_stateless_header
replays a trace through the 1-local router to confirm that.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import structlog

from geometry.primitives import Arc, Point
from infrastructure.errors import NonTerminationError, RoutingError, RoutingInvariantError
from routing.frame import NormalizedFrame
from routing.local import ChewLocalRouter, local_view
from routing.step import RoutingStep, Side, StepRule, chew_step, direct_step
from triangulation.corridor import SegmentCorridor, rightmost_position, segment_corridor
from triangulation.delaunay import Triangulation

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class RoutingTrace:
    s: int
    t: int
    steps: Tuple[RoutingStep, ...]
    frame: NormalizedFrame
    corridor: SegmentCorridor
    triangulation: Optional[Triangulation] = field(default=None, repr=False, compare=False)

    @property
    def vertex_path(self) -> Tuple[int, ...]:
        if not self.steps:
            return (self.s,)
        return (self.steps[0].current,) + tuple(step.next for step in self.steps)

    @property
    def k(self) -> int:
        return len(self.steps)

    @property
    def arcs(self) -> List[Arc]:
        return [step.arc for step in self.steps if step.arc is not None]

    @property
    def edge_length(self) -> float:
        return sum(step.edge_length for step in self.steps)

    @property
    def arc_length(self) -> float:
        return sum(step.arc_length for step in self.steps)

    @property
    def st_distance(self) -> float:
        return self.frame.length

    @property
    def direct(self) -> bool:
        return self.corridor.direct_edge

    def world_point(self, p: Point) -> Point:
        return self.frame.to_world(p)


@dataclass(frozen=True)
class DecisionRecord:
    """Why step i went where it went"""

    index: int
    current: int
    next: int
    rule: str
    side: Optional[str]
    triangle: Optional[Tuple[int, int, int]]
    west: Optional[Tuple[float, float]]
    right: Optional[Tuple[float, float]]
    cw_current: float
    cw_right: float
    vertex_classes: Dict[int, str] = field(default_factory=dict)

    @classmethod
    def from_step(cls, step: RoutingStep) -> "DecisionRecord":
        return cls(
            index=step.index,
            current=step.current,
            next=step.next,
            rule=step.rule.value,
            side=step.side.value if step.side else None,
            triangle=step.triangle,
            west=tuple(step.west) if step.west else None,
            right=tuple(step.right) if step.right else None,
            cw_current=step.cw_current,
            cw_right=step.cw_right,
            vertex_classes=dict(step.vertex_classes),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "index": self.index,
            "current": self.current,
            "next": self.next,
            "rule": self.rule,
            "side": self.side,
            "triangle": list(self.triangle) if self.triangle else None,
            "west": list(self.west) if self.west else None,
            "right": list(self.right) if self.right else None,
            "cw_current": self.cw_current,
            "cw_right": self.cw_right,
            "vertex_classes": {str(k): v for k, v in sorted(self.vertex_classes.items())},
        }


def chew_route(tri: Triangulation, s: int, t: int) -> RoutingTrace:
    """Route from s to t; raises VertexNotFoundError for unknown endpoints"""
    corridor = segment_corridor(tri, s, t)
    pts = tri.point_set.points
    frame = NormalizedFrame.from_points(pts[s], pts[t])
    cache: Dict[int, Point] = {}

    def local(v: int) -> Point:
        if v not in cache:
            cache[v] = frame.to_local(pts[v])
        return cache[v]

    if corridor.direct_edge:
        step = direct_step(0, s, t, local(s), frame.target)
        return RoutingTrace(s, t, (step,), frame, corridor, tri)

    steps: List[RoutingStep] = []
    seen = {s}
    p = s
    last_position = -1
    try:
        for i in range(len(corridor) + 2):
            position = rightmost_position(corridor, p)
            if position < last_position or (position == last_position and t not in corridor.triangles[position]):
                raise RoutingInvariantError(
                    f"triangle order did not advance from {last_position} to {position} at vertex {p}"
                )
            step = chew_step(i, p, corridor.triangles[position], local, t, frame.length, position)
            steps.append(step)
            last_position = position
            p = step.next
            if p == t:
                break
            if p in seen:
                raise RoutingInvariantError(f"vertex {p} visited twice on route {s}->{t}")
            seen.add(p)
        else:
            raise NonTerminationError(f"route {s}->{t} did not reach t within {len(corridor)} triangles")
    except RoutingError as e:
        logger.error(f"routing {s}->{t} failed: {e}")
        raise

    logger.debug(f"routed {s}->{t} in {len(steps)} steps")
    return RoutingTrace(s, t, tuple(steps), frame, corridor, tri)


def route_with_decision_log(tri: Triangulation, s: int, t: int) -> Tuple[RoutingTrace, List[DecisionRecord]]:
    trace = chew_route(tri, s, t)
    return trace, [DecisionRecord.from_step(step) for step in trace.steps]


def is_stateless_header(trace: RoutingTrace) -> bool:
    """
    Replay the trace with a router that sees only the current vertex, its
    1-hop neighbourhood and the coordinates of s and t.
    """
    if trace.triangulation is None:
        raise RoutingError("trace carries no triangulation to replay against")
    router = ChewLocalRouter()
    graph = trace.triangulation.graph()
    for step in trace.steps:
        view = local_view(graph, step.current, trace.s, trace.t, hops=1)
        try:
            decided = router.decide(view)
        except RoutingError as e:
            logger.warning(f"local replay failed at step {step.index}: {e}")
            return False
        if decided != step.next:
            logger.info(f"local replay diverged at step {step.index}: {decided} != {step.next}")
            return False
    return True
