# routing/local.py
"""
k-local routers: forwarding decisions from the current vertex's k-hop
neighbourhood (with coordinates) plus the coordinates of s and t.
"""
import math
from dataclasses import dataclass
from typing import List, Optional, Protocol, Tuple, runtime_checkable

import networkx as nx

from geometry.predicates import orient
from geometry.primitives import Point, distance
from infrastructure.errors import ConfigError, RoutingInvariantError, VertexNotFoundError
from routing.frame import NormalizedFrame
from routing.step import chew_step

Tri = Tuple[int, int, int]

_METRICS = {
    "l2": distance,
    "linf": lambda p, q: max(abs(p[0] - q[0]), abs(p[1] - q[1])),
}


@dataclass(frozen=True)
class LocalView:
    current: int
    graph: nx.Graph
    s: int
    t: int
    s_point: Point
    t_point: Point
    hops: int = 1

    def position(self, v: int) -> Point:
        if v in self.graph:
            x, y = self.graph.nodes[v]["pos"]
            return Point(x, y)
        if v == self.s:
            return self.s_point
        if v == self.t:
            return self.t_point
        raise VertexNotFoundError(f"vertex {v} is outside the {self.hops}-hop view of {self.current}")


@runtime_checkable
class LocalRouter(Protocol):
    name: str
    hops: int

    def decide(self, view: LocalView) -> int: ...


def local_view(graph: nx.Graph, current: int, s: int, t: int, hops: int = 1) -> LocalView:
    if current not in graph:
        raise VertexNotFoundError(f"vertex {current} is not in the graph")
    ego = nx.ego_graph(graph, current, radius=hops)
    return LocalView(
        current=current,
        graph=ego,
        s=s,
        t=t,
        s_point=Point(*graph.nodes[s]["pos"]),
        t_point=Point(*graph.nodes[t]["pos"]),
        hops=hops,
    )


def incident_faces(view: LocalView, v: int) -> List[Tri]:
    """Counterclockwise triangles around v rebuilt from the angular order of its neighbours"""
    p = view.position(v)
    nbrs = sorted(
        view.graph.neighbors(v),
        key=lambda u: math.atan2(view.position(u).y - p.y, view.position(u).x - p.x),
    )
    faces = []
    for a, b in zip(nbrs, nbrs[1:] + nbrs[:1]):
        if a != b and view.graph.has_edge(a, b) and orient(p, view.position(a), view.position(b)) > 0:
            faces.append((v, a, b))
    return faces


def _corridor_key(view: LocalView, tri: Tri, frame: NormalizedFrame) -> Optional[tuple]:
    """Sort key of a triangle in the corridor of [st], None if it is not in the corridor"""
    s, t = view.s, view.t
    S, T = view.s_point, view.t_point

    def side(v):
        o = orient(S, T, view.position(v))
        return o if o != 0 else 1

    if s in tri and t in tri:
        return None
    # s and t themselves count as met only through the edge opposite them
    crossing = any(
        u not in (s, t)
        and w not in (s, t)
        and side(u) != side(w)
        and orient(view.position(u), view.position(w), S) * orient(view.position(u), view.position(w), T) < 0
        for u, w in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))
    )
    if not crossing:
        return None

    xs = []
    for u, w in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
        for v in (u, w):
            if v == s:
                xs.append(0.0)
            elif v == t:
                xs.append(frame.length)
        if u in (s, t) or w in (s, t) or side(u) == side(w):
            continue
        a, b = frame.to_local(view.position(u)), frame.to_local(view.position(w))
        x = a.x if a.y == b.y else a.x + (b.x - a.x) * (0.0 - a.y) / (b.y - a.y)
        xs.append(min(max(x, 0.0), frame.length))
    right, left = max(xs), min(xs)
    c = frame.to_local(Point(*(sum(view.position(v)[k] for v in tri) / 3.0 for k in range(2))))
    turn = (math.atan2(c.y, c.x - right) - math.pi) % (2 * math.pi)
    return (right, left, turn)


class ChewLocalRouter:
    """Chew's rule evaluated from a 1-hop view"""

    name = "chew"
    hops = 1

    def decide(self, view: LocalView) -> int:
        p, t = view.current, view.t
        if p == t:
            raise RoutingInvariantError("already at the target")
        if p == view.s and view.graph.has_edge(p, t):
            return t

        frame = NormalizedFrame.from_points(view.s_point, view.t_point)
        keyed = [(key, tri) for tri in incident_faces(view, p) if (key := _corridor_key(view, tri, frame)) is not None]
        if not keyed:
            raise RoutingInvariantError(f"no corridor triangle around vertex {p}")
        _, tri = max(keyed)

        def local(v: int) -> Point:
            return frame.to_local(view.position(v))

        return chew_step(0, p, tri, local, t, frame.length).next


class GreedyRouter:
    """
    Forward to the neighbour closest to t. Ties go to the shorter hop, then the
    smaller x, then the smaller |y|, so the choice survives reflection over st.
    """

    hops = 1

    def __init__(self, metric: str = "l2"):
        if metric not in _METRICS:
            raise ConfigError(f"unknown greedy metric {metric!r}, expected one of {sorted(_METRICS)}")
        self.metric = metric
        self.name = "greedy" if metric == "l2" else f"greedy-{metric}"

    def decide(self, view: LocalView) -> int:
        nbrs = list(view.graph.neighbors(view.current))
        if not nbrs:
            raise RoutingInvariantError(f"vertex {view.current} has no neighbours")
        if view.t in nbrs:
            return view.t
        dist = _METRICS[self.metric]
        here = view.position(view.current)

        def key(v: int):
            p = view.position(v)
            return (dist(p, view.t_point), math.dist(p, here), p.x, abs(p.y - view.t_point.y), v)

        return min(nbrs, key=key)
