# geometry/predicates.py
"""
Adaptive orientation and in-circle predicates.

A floating-point evaluation is accepted when its magnitude clears a static
error bound; otherwise the determinant is re-evaluated with exact rational
arithmetic. The returned signs are therefore always exact for finite float
(or Fraction) inputs.
"""
from fractions import Fraction
from typing import Sequence, Tuple

from infrastructure.errors import DegenerateTriangleError

Coord = Tuple[float, float]

_EPS = 2.0 ** -53
_CCW_ERR_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_ERR_BOUND = (10.0 + 96.0 * _EPS) * _EPS


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _orient_exact(a: Coord, b: Coord, c: Coord) -> int:
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    return _sign((ax - cx) * (by - cy) - (ay - cy) * (bx - cx))


def orient(a: Coord, b: Coord, c: Coord) -> int:
    """+1 if c is left of the directed line a->b, -1 if right, 0 if collinear"""
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright

    if detleft > 0:
        if detright <= 0:
            return _sign(det)
        detsum = detleft + detright
    elif detleft < 0:
        if detright >= 0:
            return _sign(det)
        detsum = -detleft - detright
    else:
        return _orient_exact(a, b, c)

    if abs(det) >= _CCW_ERR_BOUND * detsum:
        return _sign(det)
    return _orient_exact(a, b, c)


def _incircle_exact(a: Coord, b: Coord, c: Coord, d: Coord) -> int:
    dx, dy = Fraction(d[0]), Fraction(d[1])
    adx, ady = Fraction(a[0]) - dx, Fraction(a[1]) - dy
    bdx, bdy = Fraction(b[0]) - dx, Fraction(b[1]) - dy
    cdx, cdy = Fraction(c[0]) - dx, Fraction(c[1]) - dy
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = (
        alift * (bdx * cdy - cdx * bdy)
        + blift * (cdx * ady - adx * cdy)
        + clift * (adx * bdy - bdx * ady)
    )
    return _sign(det)


def incircle_raw(a: Coord, b: Coord, c: Coord, d: Coord) -> int:
    """Sign of the in-circle determinant, positive when d is inside ccw (a, b, c)"""
    adx, ady = a[0] - d[0], a[1] - d[1]
    bdx, bdy = b[0] - d[0], b[1] - d[1]
    cdx, cdy = c[0] - d[0], c[1] - d[1]

    bdxcdy, cdxbdy = bdx * cdy, cdx * bdy
    cdxady, adxcdy = cdx * ady, adx * cdy
    adxbdy, bdxady = adx * bdy, bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy

    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    permanent = (
        (abs(bdxcdy) + abs(cdxbdy)) * alift
        + (abs(cdxady) + abs(adxcdy)) * blift
        + (abs(adxbdy) + abs(bdxady)) * clift
    )
    if abs(det) > _ICC_ERR_BOUND * permanent:
        return _sign(det)
    return _incircle_exact(a, b, c, d)


def incircle(a: Coord, b: Coord, c: Coord, p: Coord) -> int:
    """
    +1 if p is strictly inside the circumcircle of (a, b, c), -1 outside,
    0 cocircular. The sign is taken for (a, b, c) in the given order, so it
    flips for a clockwise triple.
    """
    if orient(a, b, c) == 0:
        raise DegenerateTriangleError(f"collinear triple {a}, {b}, {c}")
    return incircle_raw(a, b, c, p)


def incircle_symbolic(points: Sequence[Coord], ia: int, ib: int, ic: int, id_: int) -> int:
    """
    In-circle sign that never returns 0.

    Exact ties are broken by lowering each lifted point by a symbolic amount
    that dominates for smaller indices. Among cocircular points this makes the
    smallest index win every flip, so a cocircular group is fanned from its
    lowest-index vertex.
    """
    a, b, c, d = points[ia], points[ib], points[ic], points[id_]
    raw = incircle_raw(a, b, c, d)
    if raw != 0:
        return raw

    o = orient(a, b, c)
    if o == 0:
        raise DegenerateTriangleError(f"collinear triple {ia}, {ib}, {ic}")

    corners = {ia: 0, ib: 1, ic: 2}
    for idx in sorted((ia, ib, ic, id_)):
        if idx == id_:
            inside = True
            break
        tri = [a, b, c]
        tri[corners[idx]] = d
        weight = orient(tri[0], tri[1], tri[2]) * o
        if weight != 0:
            inside = weight < 0
            break
    else:  # pragma: no cover - the weights of a point sum to one
        inside = True
    return (1 if inside else -1) * o
