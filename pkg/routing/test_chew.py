# routing/test_chew.py
import dataclasses
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geometry.primitives import Orientation, Point
from infrastructure.errors import VertexNotFoundError
from routing.chew import chew_route, is_stateless_header, route_with_decision_log
from routing.frame import NormalizedFrame
from routing.step import Side, StepRule, chew_step
from triangulation.delaunay import build_delaunay
from triangulation.point_set import PointSet

KITE = [(0, 0), (1, 0), (0.5, 0.4), (0.5, -0.4)]  # s, t, a, b
UPPER_BOUND = 1.185043874 + 1.5 * math.pi


def _tri(coords, seed=0):
    return build_delaunay(PointSet.from_coordinates(coords), seed=seed)


@pytest.fixture(scope="module")
def random_tri():
    rng = np.random.default_rng(2024)
    return _tri(rng.random((50, 2)), seed=1)


def _assert_corridor_order(trace):
    """Triangle order only moves forward, except that the one holding t may serve twice at the end"""
    corridor = trace.corridor
    if trace.direct:
        return
    positions = [step.corridor_position for step in trace.steps]
    assert positions == sorted(positions)
    assert len(trace.steps) <= len(corridor) + 1
    for i, (a, b) in enumerate(zip(positions, positions[1:])):
        if a == b:
            assert b == len(corridor) - 1 and i + 2 == len(positions)
    for step in trace.steps:
        pos = step.corridor_position
        if pos < len(corridor) - 1:
            # the next vertex is on the edge the segment leaves through
            assert step.next in set(corridor.triangles[pos]) & set(corridor.triangles[pos + 1])


def _regular_step(trace, step, pts):
    """Every corner of the triangle lies on the arc matching its side of st"""
    if step.current == trace.s or step.next == trace.t or step.rule is StepRule.UPPER_TIE_WEST:
        return False
    if step.corridor_position == len(trace.corridor) - 1:
        return False
    above = {v: trace.frame.to_local(pts[v]).y > 0 for v in step.triangle}
    if any(trace.frame.to_local(pts[v]).y == 0 for v in step.triangle):
        return False
    classes = dict(step.vertex_classes)
    if (step.side is Side.UPPER) != above[step.current]:
        return False
    return all(classes[v] == ("upper" if above[v] else "lower") for v in classes)


class TestFrame:
    def test_round_trip(self):
        frame = NormalizedFrame.from_points((1, 2), (4, 6))
        assert frame.length == pytest.approx(5.0)
        assert frame.to_local((4, 6)) == pytest.approx((5.0, 0.0))
        assert frame.to_world(frame.to_local((-3, 0.5))) == pytest.approx((-3, 0.5))
        assert frame.many_to_local([(4, 6)])[0] == pytest.approx((5.0, 0.0))


class TestChewRoute:
    def test_kite(self):
        trace = chew_route(_tri(KITE), 0, 1)
        assert trace.vertex_path == (0, 2, 1)
        assert trace.k == 2
        assert trace.steps[0].rule is StepRule.UPPER_TIE_WEST
        assert trace.steps[0].arc.orientation is Orientation.CLOCKWISE
        assert trace.edge_length == pytest.approx(2 * math.sqrt(0.41))

    def test_mirrored_kite(self):
        mirrored = [(x, -y) for x, y in KITE]
        trace = chew_route(_tri(mirrored), 0, 1)
        assert trace.vertex_path == (0, 3, 1)

    def test_edge_is_taken_directly(self):
        trace = chew_route(_tri([(0, 0), (1, 0), (0.5, 1)]), 0, 1)
        assert trace.vertex_path == (0, 1)
        assert trace.steps[0].rule is StepRule.DIRECT_EDGE
        assert trace.arc_length == pytest.approx(1.0)
        assert trace.direct

    def test_unknown_vertex(self):
        with pytest.raises(VertexNotFoundError):
            chew_route(_tri(KITE), 0, 7)

    def test_vertex_on_segment_matches_lifted_copy(self):
        coords = [(0, 0), (1, 0), (0.5, 0.0), (0.3, 0.6), (0.6, -0.5), (0.8, 0.4)]
        lifted = list(coords)
        lifted[2] = (0.5, 1e-9)
        assert chew_route(_tri(coords), 0, 1).vertex_path == chew_route(_tri(lifted), 0, 1).vertex_path

    def test_random_pairs(self, random_tri):
        n = random_tri.n
        pts = random_tri.point_set.points
        for s in range(0, n, 3):
            for t in range(1, n, 4):
                if s == t:
                    continue
                trace = chew_route(random_tri, s, t)
                path = trace.vertex_path
                assert path[0] == s and path[-1] == t
                assert len(set(path)) == len(path)
                assert trace.edge_length <= trace.arc_length + 1e-12
                assert trace.arc_length <= UPPER_BOUND * trace.st_distance
                _assert_corridor_order(trace)
                for step in trace.steps:
                    if step.rule is StepRule.DIRECT_EDGE:
                        continue
                    assert step.next in step.triangle and step.next != step.current
                    expected = Orientation.CLOCKWISE if step.side is Side.UPPER else Orientation.COUNTERCLOCKWISE
                    assert step.arc.orientation is expected
                    assert step.west == pytest.approx((step.circle.center.x - step.circle.radius, step.circle.center.y))
                    if _regular_step(trace, step, pts):
                        # the triangle used is the leftmost one holding the next vertex
                        assert min(trace.corridor.positions_of(step.next)) == step.corridor_position

    def test_both_other_corners_on_the_lower_arc(self):
        # circle centred (1, 1) through s; x and y sit at 350 and 260 degrees clockwise from west
        r = math.sqrt(2.0)
        x = Point(1 + r * math.cos(math.radians(-170)), 1 + r * math.sin(math.radians(-170)))
        y = Point(1 + r * math.cos(math.radians(-80)), 1 + r * math.sin(math.radians(-80)))
        coords = {0: Point(0.0, 0.0), 2: x, 3: y}
        step = chew_step(0, 0, (0, 2, 3), coords.__getitem__, 9, 3.0)
        assert dict(step.vertex_classes) == {2: "lower", 3: "lower"}
        assert step.side is Side.LOWER
        assert step.right == pytest.approx((2.0, 0.0))
        # counterclockwise from s the walk meets y long before it could wrap round to x
        assert step.next == 3
        assert step.arc.orientation is Orientation.COUNTERCLOCKWISE

    def test_thin_first_triangle_still_routes(self):
        tri = _tri(np.random.default_rng(0).random((40, 2)))
        trace = chew_route(tri, 0, 1)
        assert trace.vertex_path[-1] == 1
        _assert_corridor_order(trace)

    def test_last_triangle_may_be_used_twice(self):
        tri = _tri(np.random.default_rng(0).random((40, 2)))
        repeated = 0
        for s in range(0, 40, 2):
            for t in range(1, 40, 3):
                if s == t:
                    continue
                trace = chew_route(tri, s, t)
                assert trace.vertex_path[-1] == t
                _assert_corridor_order(trace)
                positions = [step.corridor_position for step in trace.steps]
                repeated += len(positions) - len(set(positions))
        assert repeated > 0

    def test_decision_log_matches_recomputation(self, random_tri):
        trace, log = route_with_decision_log(random_tri, 0, 17)
        pts = random_tri.point_set.points
        for record, step in zip(log, trace.steps):
            if step.triangle is None:
                continue
            again = chew_step(
                step.index, step.current, step.triangle, lambda v: trace.frame.to_local(pts[v]), 17, trace.st_distance
            )
            assert record.side == again.side.value
            assert record.next == again.next
            assert record.to_dict()["rule"] == again.rule.value


class TestStatelessHeader:
    def test_kite(self):
        assert is_stateless_header(chew_route(_tri(KITE), 0, 1))

    def test_random_traces_replay(self, random_tri):
        for s, t in [(0, 17), (5, 33), (49, 2), (12, 40), (8, 9)]:
            assert is_stateless_header(chew_route(random_tri, s, t))

    def test_tampered_trace_is_rejected(self, random_tri):
        trace = next(tr for tr in (chew_route(random_tri, 0, t) for t in range(1, random_tri.n)) if tr.k >= 2)
        first = trace.steps[0]
        wrong = next(v for v in first.triangle if v not in (first.current, first.next))
        steps = (dataclasses.replace(first, next=wrong),) + trace.steps[1:]
        assert not is_stateless_header(dataclasses.replace(trace, steps=steps))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(4, 60), st.sampled_from([1.0, 0.05]), st.data())
def test_routes_always_reach_t(seed, n, squeeze, data):
    coords = np.random.default_rng(seed).random((n, 2))
    coords[:, 1] *= squeeze
    tri = _tri(coords)
    s = data.draw(st.integers(0, n - 1))
    t = data.draw(st.integers(0, n - 1).filter(lambda v: v != s))
    trace = chew_route(tri, s, t)
    assert trace.vertex_path[0] == s and trace.vertex_path[-1] == t
    assert len(set(trace.vertex_path)) == len(trace.vertex_path)
    _assert_corridor_order(trace)
