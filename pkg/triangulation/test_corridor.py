# triangulation/test_corridor.py
import numpy as np
import pytest

from infrastructure.errors import VertexNotFoundError, VertexNotInCorridorError
from triangulation.corridor import rightmost_triangle_at, segment_corridor, vertex_side
from triangulation.delaunay import build_delaunay
from triangulation.point_set import PointSet

KITE = [(0, 0), (1, 0), (0.5, 0.4), (0.5, -0.4)]  # s, t, a, b


def _sets(corridor):
    return [frozenset(t) for t in corridor.triangles]


def _segment_interval(pts, tri, s, t):
    """Parameter range of the segment s->t inside a triangle (Cyrus-Beck clipping)"""
    p0, p1 = np.asarray(pts[s]), np.asarray(pts[t])
    d = p1 - p0
    lo, hi = 0.0, 1.0
    for k in range(3):
        a, b = np.asarray(pts[tri[k]]), np.asarray(pts[tri[(k + 1) % 3]])
        normal = np.array([a[1] - b[1], b[0] - a[0]])  # inward for ccw triangles
        num = normal @ (p0 - a)
        den = normal @ d
        if den == 0:
            continue
        lam = -num / den
        if den > 0:
            lo = max(lo, lam)
        else:
            hi = min(hi, lam)
    return lo, hi


class TestSegmentCorridor:
    def test_kite(self):
        tri = build_delaunay(PointSet.from_coordinates(KITE))
        corridor = segment_corridor(tri, 0, 1)
        assert _sets(corridor) == [frozenset({0, 2, 3}), frozenset({1, 2, 3})]
        assert not corridor.direct_edge

    def test_edge_gives_empty_corridor(self):
        tri = build_delaunay(PointSet.from_coordinates(KITE))
        corridor = segment_corridor(tri, 0, 2)
        assert corridor.direct_edge
        assert len(corridor) == 0

    def test_vertex_on_segment_counts_as_above(self):
        coords = [(0, 0), (1, 0), (0.5, 0.0), (0.5, 0.6), (0.5, -0.6)]
        tri = build_delaunay(PointSet.from_coordinates(coords))
        assert vertex_side(tri, 0, 1, 2) == 1
        on_line = segment_corridor(tri, 0, 1)

        lifted = list(coords)
        lifted[2] = (0.5, 1e-9)
        shifted = segment_corridor(build_delaunay(PointSet.from_coordinates(lifted)), 0, 1)
        assert _sets(on_line) == _sets(shifted)
        assert _sets(on_line)[:2] == [frozenset({0, 4, 2}), frozenset({2, 4, 1})]

    def test_unknown_vertex(self):
        tri = build_delaunay(PointSet.from_coordinates(KITE))
        with pytest.raises(VertexNotFoundError):
            segment_corridor(tri, 0, 9)
        with pytest.raises(VertexNotFoundError):
            segment_corridor(tri, 1, 1)

    @pytest.mark.parametrize("seed", range(8))
    def test_order_follows_the_segment(self, seed):
        rng = np.random.default_rng(seed)
        ps = PointSet.from_coordinates(rng.random((40, 2)))
        tri = build_delaunay(ps)
        pts = ps.points
        for s, t in rng.choice(40, size=(6, 2), replace=True):
            s, t = int(s), int(t)
            if s == t or tri.has_edge(s, t):
                continue
            corridor = segment_corridor(tri, s, t)
            crossing = corridor.triangles
            intervals = [_segment_interval(pts, tr, s, t) for tr in crossing]
            starts = [lo for lo, _ in intervals]
            assert starts == sorted(starts)
            assert intervals[0][0] == pytest.approx(0.0)
            assert intervals[-1][1] == pytest.approx(1.0)
            for a, b in zip(crossing, crossing[1:]):
                assert len(set(a) & set(b)) == 2
            for tr in crossing:
                for v in tr:
                    if v not in (s, t):
                        assert len(corridor.positions_of(v)) >= 2
            # only triangles the open segment passes through; the fan around t stays out
            assert all(hi - lo > 1e-12 for lo, hi in intervals)
            assert s in crossing[0] and t in crossing[-1]
            assert sum(t in tr for tr in crossing) == 1


class TestRightmostTriangle:
    def test_kite(self):
        tri = build_delaunay(PointSet.from_coordinates(KITE))
        corridor = segment_corridor(tri, 0, 1)
        assert set(rightmost_triangle_at(corridor, 0)) == {0, 2, 3}
        assert set(rightmost_triangle_at(corridor, 2)) == {1, 2, 3}

    def test_vertex_outside_corridor(self):
        coords = KITE + [(-3, 3)]
        tri = build_delaunay(PointSet.from_coordinates(coords))
        corridor = segment_corridor(tri, 0, 1)
        with pytest.raises(VertexNotInCorridorError):
            rightmost_triangle_at(corridor, 4)
