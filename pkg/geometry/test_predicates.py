# geometry/test_predicates.py
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geometry.predicates import incircle, incircle_symbolic, orient
from infrastructure.errors import DegenerateTriangleError

coords = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)
points = st.tuples(coords, coords)


def _orient_oracle(a, b, c):
    ax, ay, bx, by, cx, cy = map(Fraction, (*a, *b, *c))
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (det > 0) - (det < 0)


def _incircle_oracle(a, b, c, d):
    dx, dy = Fraction(d[0]), Fraction(d[1])
    rows = [(Fraction(p[0]) - dx, Fraction(p[1]) - dy) for p in (a, b, c)]
    (ax, ay), (bx, by), (cx, cy) = rows
    det = (
        (ax * ax + ay * ay) * (bx * cy - cx * by)
        - (bx * bx + by * by) * (ax * cy - cx * ay)
        + (cx * cx + cy * cy) * (ax * by - bx * ay)
    )
    return (det > 0) - (det < 0)


def test_orient_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == 1
    assert orient((0, 0), (1, 0), (2, 0)) == 0
    assert orient((0, 0), (1, 0), (0, -1)) == -1


def test_incircle_examples():
    a, b, c = (0, 0), (1, 0), (0, 1)
    assert incircle(a, b, c, (0.9, 0.9)) == 1
    assert incircle(a, b, c, (1, 1)) == 0
    assert incircle(a, b, c, (2, 2)) == -1


def test_incircle_rejects_collinear():
    with pytest.raises(DegenerateTriangleError):
        incircle((0, 0), (1, 1), (2, 2), (5, 0))


def test_orient_near_degenerate_line():
    # points one ulp off the line y = x, where naive evaluation is unreliable
    base = 0.5
    for k in range(1, 50):
        x = base + k * 2.0 ** -40
        y = x + 2.0 ** -52
        assert orient((0.1, 0.1), (12.0, 12.0), (x, y)) == _orient_oracle((0.1, 0.1), (12.0, 12.0), (x, y))


@settings(max_examples=300, deadline=None)
@given(points, points, points)
def test_orient_matches_rational_oracle(a, b, c):
    assert orient(a, b, c) == _orient_oracle(a, b, c)


@settings(max_examples=300, deadline=None)
@given(points, points, points)
def test_orient_is_antisymmetric(a, b, c):
    assert orient(a, b, c) == -orient(b, a, c)
    assert orient(a, b, c) == orient(b, c, a)


@settings(max_examples=300, deadline=None)
@given(points, points, points, points)
def test_incircle_matches_rational_oracle(a, b, c, d):
    if _orient_oracle(a, b, c) == 0:
        return
    assert incircle(a, b, c, d) == _incircle_oracle(a, b, c, d)
    assert incircle(b, a, c, d) == -incircle(a, b, c, d)


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=-50, max_value=50), st.integers(min_value=-50, max_value=50))
def test_incircle_on_integer_cocircular_grid(u, v):
    # (u, v) reflected through both axes lie on one circle around the origin
    if u == 0 or v == 0 or abs(u) == abs(v):
        return
    a, b, c, d = (u, v), (-u, v), (-u, -v), (u, -v)
    if orient(a, b, c) == 0:
        return
    assert incircle(a, b, c, d) == 0


def test_symbolic_tie_break_fans_from_lowest_index():
    square = [(0, 0), (1, 0), (1, 1), (0, 1)]
    # 3 is outside triangle (0, 1, 2) and 1 is outside (0, 2, 3): diagonal (0, 2) is kept
    assert incircle_symbolic(square, 0, 1, 2, 3) == -1
    assert incircle_symbolic(square, 0, 2, 3, 1) == -1
    # the other diagonal is flipped away
    assert incircle_symbolic(square, 1, 2, 3, 0) == 1


def test_symbolic_tie_break_is_consistent_across_orderings():
    pts = [(0, 0), (1, 0), (1, 1), (0, 1)]
    s = incircle_symbolic(pts, 0, 1, 2, 3)
    assert incircle_symbolic(pts, 1, 2, 0, 3) == s
    assert incircle_symbolic(pts, 1, 0, 2, 3) == -s
