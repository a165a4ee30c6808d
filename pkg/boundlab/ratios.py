# boundlab/ratios.py
"""Routing, arc and competitive ratios of a trace against the graph metric."""
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import networkx as nx
import structlog

from infrastructure.errors import BoundViolationError, DisconnectedGraphError, VertexNotFoundError
from routing.chew import RoutingTrace
from triangulation.delaunay import Triangulation

logger = structlog.get_logger(__name__)

REL_TOL = 1e-12


def _distances(graph: nx.Graph, source: int) -> Dict[int, float]:
    return nx.single_source_dijkstra_path_length(graph, source, weight="weight")


def shortest_path(tri: Triangulation, s: int, t: int, graph: Optional[nx.Graph] = None) -> Tuple[Tuple[int, ...], float]:
    """
    Euclidean shortest path; among equally short paths the lexicographically
    smallest vertex sequence wins.
    """
    g = graph if graph is not None else tri.graph()
    for v in (s, t):
        if v not in g:
            raise VertexNotFoundError(f"vertex {v} is not in the graph")
    to_t = _distances(g, t)
    if s not in to_t:
        raise DisconnectedGraphError(f"no path from {s} to {t}")

    path = [s]
    u = s
    while u != t:
        tol = REL_TOL * max(1.0, to_t[u])
        tight = [
            v
            for v in g.neighbors(u)
            if v in to_t and to_t[v] < to_t[u] and abs(g[u][v]["weight"] + to_t[v] - to_t[u]) <= tol
        ]
        if not tight:
            raise DisconnectedGraphError(f"shortest path from {s} to {t} lost at vertex {u}")
        u = min(tight)
        path.append(u)
    return tuple(path), to_t[s]


@dataclass(frozen=True)
class RatioReport:
    s: int
    t: int
    st_distance: float
    edge_path_length: float
    arc_path_length: float
    shortest_path_length: float
    shortest_path: Tuple[int, ...] = ()

    @property
    def routing_ratio(self) -> float:
        return self.edge_path_length / self.st_distance

    @property
    def arc_routing_ratio(self) -> float:
        return self.arc_path_length / self.st_distance

    @property
    def competitive_ratio(self) -> float:
        return self.edge_path_length / self.shortest_path_length

    @property
    def normalized(self) -> Dict[str, float]:
        """Lengths in the |st| = 1 frame"""
        return {
            "edge_path_length": self.routing_ratio,
            "arc_path_length": self.arc_routing_ratio,
            "shortest_path_length": self.shortest_path_length / self.st_distance,
        }

    def check(self) -> None:
        tol = REL_TOL * max(1.0, self.arc_path_length) * 100
        if self.shortest_path_length < self.st_distance - tol:
            raise BoundViolationError(f"shortest path {self.shortest_path_length} is below |st| = {self.st_distance}")
        if self.edge_path_length > self.arc_path_length + tol:
            raise BoundViolationError(f"edge path {self.edge_path_length} is longer than arc path {self.arc_path_length}")
        if self.edge_path_length < self.shortest_path_length - tol:
            raise BoundViolationError(f"route {self.edge_path_length} beats the shortest path {self.shortest_path_length}")

    def to_dict(self) -> Dict[str, object]:
        return {
            "s": self.s,
            "t": self.t,
            "st_distance": self.st_distance,
            "edge_path_length": self.edge_path_length,
            "arc_path_length": self.arc_path_length,
            "shortest_path_length": self.shortest_path_length,
            "shortest_path": list(self.shortest_path),
            "routing_ratio": self.routing_ratio,
            "arc_routing_ratio": self.arc_routing_ratio,
            "competitive_ratio": self.competitive_ratio,
            "normalized": self.normalized,
        }


def ratios(trace: RoutingTrace, tri: Triangulation, graph: Optional[nx.Graph] = None) -> RatioReport:
    path, length = shortest_path(tri, trace.s, trace.t, graph)
    report = RatioReport(
        s=trace.s,
        t=trace.t,
        st_distance=trace.st_distance,
        edge_path_length=trace.edge_length,
        arc_path_length=trace.arc_length,
        shortest_path_length=length,
        shortest_path=path,
    )
    report.check()
    return report
