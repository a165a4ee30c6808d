# boundlab/test_worst_case.py
import math

import numpy as np
import pytest

from boundlab.lemmas import check_si_order, run_lemma_suite
from boundlab.worst_case import (
    CircleType,
    axis_tangent_circle,
    vertical_tangent_circle,
    worst_case_circles,
)
from geometry.primitives import Orientation, Point, distance
from routing.chew import chew_route
from triangulation.delaunay import build_delaunay
from triangulation.point_set import PointSet

KITE = [(0, 0), (1, 0), (0.5, 0.4), (0.5, -0.4)]


@pytest.fixture(scope="module")
def random_tri():
    rng = np.random.default_rng(31)
    return build_delaunay(PointSet.from_coordinates(rng.random((60, 2))))


class TestPencilCircles:
    def test_vertical_tangent(self):
        p, q = Point(0.2, 0.3), Point(0.9, 0.5)
        c = vertical_tangent_circle(p, q, Orientation.CLOCKWISE)
        assert c.center.y == pytest.approx(p.y)
        assert c.contains_on(p) and c.contains_on(q)
        assert distance(c.west, p) == pytest.approx(0.0, abs=1e-12)

    def test_vertical_chord_has_no_vertical_tangent_circle(self):
        assert vertical_tangent_circle(Point(0.5, 0.2), Point(0.5, 0.6), Orientation.CLOCKWISE) is None

    def test_axis_tangent(self):
        p, q = Point(0.2, 0.3), Point(0.9, 0.5)
        c = axis_tangent_circle(p, q, Orientation.CLOCKWISE, -math.inf)
        assert c.radius == pytest.approx(abs(c.center.y))
        assert abs(c.offset(p)) < 1e-12 and abs(c.offset(q)) < 1e-12

    def test_no_tangent_circle_across_the_axis(self):
        assert axis_tangent_circle(Point(0.2, 0.3), Point(0.6, -0.2), Orientation.CLOCKWISE, -math.inf) is None


class TestWorstCaseCircles:
    def test_kite_types(self):
        trace = chew_route(build_delaunay(PointSet.from_coordinates(KITE)), 0, 1)
        steps = worst_case_circles(trace)
        assert [s.type for s in steps] == [CircleType.A2, CircleType.B]
        assert steps[0].construction == "A2"
        assert steps[0].alpha == pytest.approx(0.0)
        assert steps[0].s_point.x == pytest.approx(0.0, abs=1e-12)

    def test_direct_edge(self):
        trace = chew_route(build_delaunay(PointSet.from_coordinates([(0, 0), (2, 0), (1, 3)])), 0, 1)
        steps = worst_case_circles(trace)
        assert len(steps) == 1
        assert steps[0].circle.center == pytest.approx((0.5, 0.0))
        assert steps[0].arc_prime_length == pytest.approx(math.pi / 2)
        assert len(check_si_order(steps)) == 0

    def test_random_traces(self, random_tri):
        for s, t in [(0, 59), (3, 41), (10, 20), (55, 7), (33, 12), (18, 44)]:
            trace = chew_route(random_tri, s, t)
            steps = worst_case_circles(trace)
            assert len(steps) == trace.k
            for i, step in enumerate(steps):
                assert step.circle.contains_on(step.p, slack=1e3)
                assert step.circle.contains_on(step.next, slack=1e3)
                if step.type is CircleType.A2:
                    assert distance(step.p, step.west) <= step.circle.tolerance
                if i > 0 and step.type is CircleType.B:
                    assert step.alpha == pytest.approx(0.0, abs=1e-9)
            assert steps[-1].t_vertex == t
            _, report = run_lemma_suite(trace)
            assert report.violations() == []
