# triangulation/corridor.py
"""
Corridor of a segment [st]: the triangles met by the segment, ordered from s
to t.

Vertices other than s and t lying exactly on line st count as slightly above
it. The corridor is the chain of triangles crossing the open segment, found
by walking from s; the first holds s, the last holds t, and consecutive ones
share the edge the segment leaves through. Triangles touching the segment
only at s or t are not part of it. When [st] is an edge the
corridor is empty and the edge is the whole route.
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import structlog

from geometry.predicates import orient
from infrastructure.errors import RoutingInvariantError, VertexNotFoundError, VertexNotInCorridorError
from triangulation.delaunay import Tri, Triangulation

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class SegmentCorridor:
    s: int
    t: int
    triangle_ids: Tuple[int, ...]
    triangles: Tuple[Tri, ...]
    direct_edge: bool = False
    on_line_sign: int = 1
    _by_vertex: Dict[int, List[int]] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        table: Dict[int, List[int]] = {}
        for pos, tri in enumerate(self.triangles):
            for v in tri:
                table.setdefault(v, []).append(pos)
        object.__setattr__(self, "_by_vertex", table)

    def __len__(self) -> int:
        return len(self.triangles)

    @property
    def ordered_triangles(self) -> Tuple[Tri, ...]:
        return self.triangles

    def positions_of(self, v: int) -> List[int]:
        return self._by_vertex.get(v, [])

    def position(self, triangle_id: int) -> int:
        return self.triangle_ids.index(triangle_id)


def vertex_side(tri: Triangulation, s: int, t: int, v: int, on_line_sign: int = 1) -> int:
    """+1 above line st, -1 below; collinear vertices take on_line_sign"""
    pts = tri.point_set.points
    o = orient(pts[s], pts[t], pts[v])
    return o if o != 0 else on_line_sign


def _walk(tri: Triangulation, s: int, t: int, sign: int) -> Optional[List[int]]:
    def side(v):
        return vertex_side(tri, s, t, v, sign)

    start = None
    for ti in tri.vertex_triangles(s):
        verts = tri.triangles[ti]
        i = verts.index(s)
        a, b = verts[(i + 1) % 3], verts[(i + 2) % 3]
        if side(a) < 0 and side(b) > 0:
            start = ti, i
            break
    if start is None:
        return None

    ti, i = start
    below, above = tri.triangles[ti][(i + 1) % 3], tri.triangles[ti][(i + 2) % 3]
    path = [ti]
    nxt = tri.neighbors[ti][i]
    for _ in range(len(tri.triangles) + 1):
        if nxt < 0:
            return None
        path.append(nxt)
        verts = tri.triangles[nxt]
        c = next(v for v in verts if v not in (below, above))
        if c == t:
            return path
        if side(c) > 0:
            # exit through (below, c): leave opposite the old above vertex
            k = verts.index(above)
            above = c
        else:
            k = verts.index(below)
            below = c
        nxt = tri.neighbors[nxt][k]
    raise RoutingInvariantError(f"corridor walk from {s} to {t} did not reach t")


def segment_corridor(tri: Triangulation, s: int, t: int) -> SegmentCorridor:
    n = tri.n
    for v in (s, t):
        if not 0 <= v < n:
            raise VertexNotFoundError(f"vertex {v} is not in the triangulation (n={n})")
    if s == t:
        raise VertexNotFoundError("source and target coincide")

    if tri.has_edge(s, t):
        return SegmentCorridor(s, t, (), (), direct_edge=True)

    sign = 1
    path = _walk(tri, s, t, sign)
    if path is None:
        # collinear vertices on a hull edge push the perturbed segment outside; use the other side
        sign = -1
        path = _walk(tri, s, t, sign)
        if path is None:
            raise RoutingInvariantError(f"no corridor from {s} to {t}")
        logger.warning(f"corridor {s}->{t} uses the below-rule for collinear vertices")

    return SegmentCorridor(
        s,
        t,
        tuple(path),
        tuple(tri.triangles[ti] for ti in path),
        direct_edge=False,
        on_line_sign=sign,
    )


def rightmost_triangle_at(corridor: SegmentCorridor, p: int) -> Tri:
    """Latest corridor triangle having p as a vertex"""
    return corridor.triangles[rightmost_position(corridor, p)]


def rightmost_position(corridor: SegmentCorridor, p: int) -> int:
    positions = corridor.positions_of(p)
    if not positions:
        raise VertexNotInCorridorError(f"vertex {p} belongs to no corridor triangle of {corridor.s}->{corridor.t}")
    return max(positions)
