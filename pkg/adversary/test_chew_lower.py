# adversary/test_chew_lower.py
import math

import pytest

from adversary.chew_lower import ARC_PATH_LENGTH, ST_DISTANCE, gen_chew_lower
from infrastructure.errors import ParameterOutOfRangeError


@pytest.fixture(scope="module")
def small():
    return gen_chew_lower(j=40, k=40, epsilon=1e-6)


def test_endpoints(small):
    ps = small.point_set
    assert math.dist(ps[small.s], ps[small.t]) == pytest.approx(ST_DISTANCE, abs=1e-3)
    assert ps.labels[small.s] == "s" and ps.labels[small.t] == "t"
    assert len(ps) == 2 + 1 + small.j + small.k


def test_route_opens_with_p1_p2(small):
    ps = small.point_set
    path = small.route().vertex_path
    assert path[:3] == (small.s, ps.index_of("p1"), ps.index_of("p2"))
    assert path[-1] == small.t


def test_every_spiral_circle_passes_through_t(small):
    t = small.point_set[small.t]
    for circle in small.spiral:
        assert abs(math.dist(circle.center, t) - circle.radius) <= 1e-9 * max(1.0, circle.radius)


def test_closing_circle_sits_on_t(small):
    circle, t = small.closing_circle, small.point_set[small.t]
    assert circle.center.x == pytest.approx(t.x)
    assert circle.center.y - circle.radius == pytest.approx(t.y, abs=1e-12)


def test_ratio_already_large(small):
    m = small.measurements()
    assert m["routing_ratio"] > 5.70
    assert m["edge_path_length"] <= m["arc_path_length"] + 1e-9


@pytest.mark.parametrize(
    "kwargs",
    [{"j": 1}, {"k": 1}, {"epsilon": 0.0}, {"epsilon": 1e-3}, {"epsilon": -1e-7}],
)
def test_rejects_parameters(kwargs):
    with pytest.raises(ParameterOutOfRangeError):
        gen_chew_lower(**{"j": 10, "k": 10, **kwargs})


@pytest.mark.slow
def test_default_size_reaches_target_length():
    m = gen_chew_lower().measurements()
    assert m["arc_path_length"] == pytest.approx(ARC_PATH_LENGTH, rel=5e-3)
