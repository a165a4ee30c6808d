# triangulation/brute_force.py
"""
O(n^3) exact oracle for Delaunay edges.

The circles through u and v form a pencil whose centers run along the
bisector of uv. Every other point splits that line at the center of the
circle through u, v and itself (the witness circles), and is strictly
outside the circle on one side of the split. Intersecting those half-lines
gives the open range of empty circles; the diametral circle is the pencil's
origin. Everything is evaluated with rationals.
"""
from fractions import Fraction
from typing import FrozenSet, Set, Tuple

from triangulation.delaunay import Edge
from triangulation.point_set import PointSet


def _empty_circle_range(pts, u: int, v: int):
    """(low, high) bounds of the empty-circle parameter range, None meaning unbounded"""
    ux, uy = pts[u]
    vx, vy = pts[v]
    mx, my = (ux + vx) / 2, (uy + vy) / 2
    nx, ny = -(vy - uy), vx - ux
    r2 = (mx - ux) ** 2 + (my - uy) ** 2

    low, high = None, None
    for w, (wx, wy) in enumerate(pts):
        if w in (u, v):
            continue
        g = nx * (mx - wx) + ny * (my - wy)
        m2 = (mx - wx) ** 2 + (my - wy) ** 2
        if g == 0:
            if m2 <= r2:
                # w sits on segment uv: every circle of the pencil contains it
                return Fraction(1), Fraction(0)
            continue
        lam = (r2 - m2) / (2 * g)
        if g > 0:
            low = lam if low is None else max(low, lam)
        else:
            high = lam if high is None else min(high, lam)
    return low, high


def brute_force_delaunay_edges(ps: PointSet) -> Tuple[FrozenSet[Edge], FrozenSet[Edge]]:
    """
    Returns (edges, ambiguous). An edge has a strictly empty witness circle;
    an ambiguous pair only has circles with other points on the boundary
    (cocircular ties), so either triangulation of the tie is Delaunay.
    """
    pts = [(Fraction(p.x), Fraction(p.y)) for p in ps.points]
    edges: Set[Edge] = set()
    ambiguous: Set[Edge] = set()
    n = len(pts)
    for u in range(n):
        for v in range(u + 1, n):
            low, high = _empty_circle_range(pts, u, v)
            if low is None or high is None or low < high:
                edges.add((u, v))
            elif low == high:
                ambiguous.add((u, v))
    return frozenset(edges), frozenset(ambiguous)
