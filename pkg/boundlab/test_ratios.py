# boundlab/test_ratios.py
import math

import numpy as np
import pytest

from boundlab.audit import select_pairs, theorem1_audit
from boundlab.ratios import RatioReport, ratios, shortest_path
from boundlab.worst_case import UPPER_BOUND
from infrastructure.errors import BoundViolationError, ConfigError, RoutingInvariantError
from routing.chew import chew_route
from triangulation.delaunay import build_delaunay
from triangulation.point_set import PointSet

KITE = [(0, 0), (1, 0), (0.5, 0.4), (0.5, -0.4)]


class TestShortestPath:
    def test_edge(self):
        tri = build_delaunay(PointSet.from_coordinates([(0, 0), (1, 0), (0.5, 1)]))
        assert shortest_path(tri, 0, 1) == ((0, 1), pytest.approx(1.0))

    def test_symmetric_tie_takes_smaller_index(self):
        tri = build_delaunay(PointSet.from_coordinates(KITE))
        path, length = shortest_path(tri, 0, 1)
        assert path == (0, 2, 1)
        assert length == pytest.approx(2 * math.sqrt(0.41))


class TestRatios:
    def test_single_edge_route(self):
        tri = build_delaunay(PointSet.from_coordinates([(0, 0), (1, 0), (0.5, 1)]))
        report = ratios(chew_route(tri, 0, 1), tri)
        assert report.routing_ratio == pytest.approx(1.0)
        assert report.arc_routing_ratio == pytest.approx(1.0)
        assert report.competitive_ratio == pytest.approx(1.0)

    def test_ordering_on_random_routes(self):
        rng = np.random.default_rng(3)
        tri = build_delaunay(PointSet.from_coordinates(rng.random((50, 2))))
        graph = tri.graph()
        for s, t in [(0, 49), (7, 30), (22, 11)]:
            report = ratios(chew_route(tri, s, t), tri, graph)
            assert report.shortest_path_length >= report.st_distance
            assert report.competitive_ratio <= report.routing_ratio <= report.arc_routing_ratio + 1e-12
            assert report.arc_routing_ratio <= UPPER_BOUND
            assert report.normalized["edge_path_length"] == pytest.approx(report.routing_ratio)

    def test_inconsistent_report_is_rejected(self):
        report = RatioReport(0, 1, 1.0, edge_path_length=2.0, arc_path_length=1.5, shortest_path_length=1.2)
        with pytest.raises(BoundViolationError):
            report.check()


class TestAudit:
    def test_triangle(self):
        tri = build_delaunay(PointSet.from_coordinates([(0, 0), (1, 0), (0.3, 0.8)]))
        result = theorem1_audit(tri)
        assert result.pairs_checked == 6
        assert result.worst_arc.ratio == pytest.approx(1.0)
        assert result.clean

    def test_random_all_pairs(self):
        rng = np.random.default_rng(12)
        tri = build_delaunay(PointSet.from_coordinates(rng.random((25, 2))))
        result = theorem1_audit(tri, "all")
        assert result.pairs_checked == 25 * 24
        assert result.within_bound
        assert result.violations == []
        assert result.worst_competitive.ratio <= result.worst_routing.ratio <= result.worst_arc.ratio + 1e-12
        assert result.to_dict()["violation_count"] == 0

    def test_strict_mode_raises_with_bundle(self, monkeypatch):
        monkeypatch.setattr("boundlab.audit.UPPER_BOUND", 1.0)
        rng = np.random.default_rng(12)
        tri = build_delaunay(PointSet.from_coordinates(rng.random((25, 2))))
        pairs = [(s, t) for s in range(25) for t in range(25) if s != t and not tri.has_edge(s, t)][:5]
        with pytest.raises(BoundViolationError) as info:
            theorem1_audit(tri, pairs, strict=True, lemmas=False)
        assert info.value.exit_code == 2
        assert info.value.bundle["points"]
        assert info.value.bundle["s"] == pairs[0][0]

    def test_failed_route_is_recorded_per_pair(self, monkeypatch):
        rng = np.random.default_rng(12)
        tri = build_delaunay(PointSet.from_coordinates(rng.random((12, 2))))

        def flaky(tri, s, t):
            if (s, t) == (3, 7):
                raise RoutingInvariantError("triangle order did not advance from 4 to 2 at vertex 3")
            return chew_route(tri, s, t)

        monkeypatch.setattr("boundlab.audit.chew_route", flaky)
        result = theorem1_audit(tri, "all", lemmas=False)
        assert result.pairs_checked == 12 * 11 - 1
        assert result.routing_failures == 1
        assert not result.clean
        assert result.violations[0]["check"] == "routing"
        assert (result.violations[0]["s"], result.violations[0]["t"]) == (3, 7)
        assert "did not advance" in result.bundles[0]["reason"]
        assert result.to_dict()["routing_failures"] == 1

        with pytest.raises(BoundViolationError) as info:
            theorem1_audit(tri, [(0, 1), (3, 7)], lemmas=False, strict=True)
        assert info.value.bundle["s"] == 3

    def test_pair_selection(self):
        assert len(select_pairs(5, "all")) == 20
        sampled = select_pairs(10, 7, seed=4)
        assert len(sampled) == 7 and sampled == select_pairs(10, 7, seed=4)
        assert select_pairs(5, [(0, 3)]) == [(0, 3)]
        with pytest.raises(ConfigError):
            select_pairs(5, "some")
