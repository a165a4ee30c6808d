# triangulation/linf.py
"""
Brute-force L-infinity Delaunay triangulation for desk-scale point sets.

A pair (u, v) is an edge iff some axis-aligned square with u and v on its
boundary has an empty interior. It suffices to test squares of side
m = max(|dx|, |dy|): along the long axis the square is pinned to u and v,
and along the short axis it slides over a closed range. Each point strictly
inside the pinned slab forbids an open sub-range, so the pair is an edge
iff the forbidden ranges do not cover the slide range.

Candidate edges are inserted shortest first (L-infinity, then Euclidean
length, then index) and kept when they cross no kept edge and run through no
other point. The triangles are the empty 3-cycles of the result; kept edges
that bound no such triangle stay in the graph as loose edges, and the build
fails unless the graph is connected.
"""
from itertools import combinations
from typing import List, Set, Tuple

import numpy as np
import structlog

from geometry.predicates import orient
from infrastructure.errors import CertificateError, CollinearPointsError, PointSetError
from triangulation.delaunay import Edge, Triangulation
from triangulation.point_set import PointSet

logger = structlog.get_logger(__name__)


def _slides_free(along_lo: float, along_hi: float, pos: np.ndarray, m: float) -> bool:
    """True if some start in [along_lo, along_hi] avoids every open range (p - m, p)"""
    if along_lo > along_hi:
        return False
    if pos.size == 0:
        return True
    left = pos - m
    order = np.argsort(left, kind="stable")
    left, right = left[order], pos[order]
    reach = np.maximum.accumulate(right)
    cursor = np.empty_like(left)
    cursor[0] = along_lo
    cursor[1:] = np.maximum(along_lo, reach[:-1])
    if np.any((left >= cursor) & (cursor <= along_hi)):
        return True
    return max(along_lo, reach[-1]) <= along_hi


class _SortedAxis:
    """Points sorted along one axis for slab queries"""

    def __init__(self, key: np.ndarray, other: np.ndarray):
        self.order = np.argsort(key, kind="stable")
        self.key = key[self.order]
        self.other = other[self.order]

    def open_slab(self, lo: float, hi: float) -> np.ndarray:
        i = np.searchsorted(self.key, lo, side="right")
        j = np.searchsorted(self.key, hi, side="left")
        return self.other[i:j]


def linf_delaunay_edges(ps: PointSet) -> Set[Edge]:
    """All pairs admitting an empty axis-aligned square"""
    xy = ps.as_array()
    xs, ys = xy[:, 0], xy[:, 1]
    by_x = _SortedAxis(xs, ys)
    by_y = _SortedAxis(ys, xs)

    edges: Set[Edge] = set()
    for u, v in combinations(range(len(ps)), 2):
        dx, dy = abs(xs[u] - xs[v]), abs(ys[u] - ys[v])
        if dx >= dy:
            m = dx
            lo, hi = min(xs[u], xs[v]), max(xs[u], xs[v])
            slide_lo, slide_hi = max(ys[u], ys[v]) - m, min(ys[u], ys[v])
            blockers = by_x.open_slab(lo, hi)
        else:
            m = dy
            lo, hi = min(ys[u], ys[v]), max(ys[u], ys[v])
            slide_lo, slide_hi = max(xs[u], xs[v]) - m, min(xs[u], xs[v])
            blockers = by_y.open_slab(lo, hi)
        if _slides_free(slide_lo, slide_hi, blockers, m):
            edges.add((u, v))
    return edges


def _properly_blocked(pts, xy: np.ndarray, kept: np.ndarray, u: int, v: int) -> bool:
    """True if segment uv crosses a kept edge or runs through another point"""
    a, b = xy[u], xy[v]
    # points inside the open segment
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    box = np.all((xy >= lo) & (xy <= hi), axis=1)
    box[[u, v]] = False
    for w in np.nonzero(box)[0]:
        if orient(pts[u], pts[v], pts[int(w)]) == 0:
            return True

    if kept.size == 0:
        return False
    p, q = xy[kept[:, 0]], xy[kept[:, 1]]
    shares = (kept[:, 0] == u) | (kept[:, 0] == v) | (kept[:, 1] == u) | (kept[:, 1] == v)
    overlap = (
        (np.minimum(p[:, 0], q[:, 0]) <= hi[0])
        & (np.maximum(p[:, 0], q[:, 0]) >= lo[0])
        & (np.minimum(p[:, 1], q[:, 1]) <= hi[1])
        & (np.maximum(p[:, 1], q[:, 1]) >= lo[1])
        & ~shares
    )
    for e in np.nonzero(overlap)[0]:
        c, d = int(kept[e, 0]), int(kept[e, 1])
        o1 = orient(pts[u], pts[v], pts[c])
        o2 = orient(pts[u], pts[v], pts[d])
        o3 = orient(pts[c], pts[d], pts[u])
        o4 = orient(pts[c], pts[d], pts[v])
        if o1 * o2 < 0 and o3 * o4 < 0:
            return True
        # a kept edge running through u or v
        if (o3 == 0 and _between(pts[c], pts[d], pts[u])) or (o4 == 0 and _between(pts[c], pts[d], pts[v])):
            return True
    return False


def _between(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def _length_key(xy: np.ndarray, e: Edge) -> Tuple[float, float, int, int]:
    d = np.abs(xy[e[0]] - xy[e[1]])
    return (float(d.max()), float(np.hypot(d[0], d[1])), e[0], e[1])


def planarize(ps: PointSet, candidates: Set[Edge]) -> List[Edge]:
    pts = ps.points
    xy = ps.as_array()
    kept: List[Edge] = []
    for u, v in sorted(candidates, key=lambda e: _length_key(xy, e)):
        arr = np.asarray(kept, dtype=int).reshape(-1, 2)
        if not _properly_blocked(pts, xy, arr, u, v):
            kept.append((u, v))
    return kept


def _empty_triangles(ps: PointSet, edges: List[Edge]) -> List[Tuple[int, int, int]]:
    pts = ps.points
    xy = ps.as_array()
    adj = {v: set() for v in range(len(ps))}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)

    tris = []
    for u, v in edges:
        for w in sorted(adj[u] & adj[v]):
            if w <= v:
                continue
            if orient(pts[u], pts[v], pts[w]) == 0:
                continue
            corners = xy[[u, v, w]]
            lo, hi = corners.min(axis=0), corners.max(axis=0)
            inside = np.nonzero(np.all((xy >= lo) & (xy <= hi), axis=1))[0]
            a, b, c = (u, v, w) if orient(pts[u], pts[v], pts[w]) > 0 else (u, w, v)
            empty = True
            for z in inside:
                z = int(z)
                if z in (a, b, c):
                    continue
                if (
                    orient(pts[a], pts[b], pts[z]) >= 0
                    and orient(pts[b], pts[c], pts[z]) >= 0
                    and orient(pts[c], pts[a], pts[z]) >= 0
                ):
                    empty = False
                    break
            if empty:
                tris.append((a, b, c))
    return tris


def build_linf_delaunay_bruteforce(ps: PointSet) -> Triangulation:
    n = len(ps)
    if n < 3:
        raise PointSetError(f"need at least 3 points to triangulate, got {n}")
    pts = ps.points
    if all(orient(pts[0], pts[1], pts[i]) == 0 for i in range(2, n)):
        raise CollinearPointsError(f"all {n} points are collinear")

    candidates = linf_delaunay_edges(ps)
    edges = planarize(ps, candidates)
    tris = _empty_triangles(ps, edges)
    logger.info(f"L-infinity brute force: {len(candidates)} square-empty pairs, {len(edges)} kept, {len(tris)} triangles")
    tri = Triangulation.from_triangles(
        ps, tris, metric="linf", edges=edges, candidates=len(candidates), rejected=len(candidates) - len(edges)
    )
    try:
        tri.check_connected()
    except CertificateError as e:
        logger.error(f"L-infinity planarisation lost connectivity: {e}")
        raise
    return tri
