# adversary/test_harness.py
import math
from types import SimpleNamespace

import networkx as nx
import numpy as np
import pytest

from adversary.harness import AdversaryVerdict, RouterRun, _congruences, adversary_run, route_local
from infrastructure.errors import LocalityViolationError
from routing.local import GreedyRouter, local_view
from triangulation.delaunay import build_delaunay
from triangulation.point_set import PointSet


@pytest.fixture(scope="module")
def tri():
    rng = np.random.default_rng(21)
    return build_delaunay(PointSet.from_coordinates(rng.random((30, 2))))


class Bouncer:
    """Steps back to the previous vertex forever"""

    name = "bouncer"
    hops = 1

    def __init__(self):
        self.last = None

    def decide(self, view):
        nxt = self.last if self.last is not None else min(view.graph.neighbors(view.current))
        self.last = view.current
        return nxt


class Jumper:
    name = "jumper"
    hops = 1

    def decide(self, view):
        return view.t


def test_greedy_reaches_target(tri):
    route = route_local(GreedyRouter(), tri, 0, 29, hops=1)
    path = route.path
    assert route.reached and route.stop_reason is None
    assert path[0] == 0 and path[-1] == 29
    assert len(route.views) == len(path) - 1
    assert all(tri.has_edge(u, v) for u, v in zip(path, path[1:]))


def test_revisit_is_reported_not_raised(tri):
    s = 0
    t = next(v for v in range(1, tri.n) if not tri.has_edge(s, v) and v != min(tri.neighbors_of(s)))
    route = route_local(Bouncer(), tri, s, t, hops=1)
    assert not route.reached
    assert "revisited" in route.stop_reason
    assert route.path[-1] == s
    assert all(tri.has_edge(u, v) for u, v in zip(route.path, route.path[1:]))


def test_jump_is_locality_violation(tri):
    t = next(v for v in range(1, tri.n) if not tri.has_edge(0, v))
    with pytest.raises(LocalityViolationError):
        route_local(Jumper(), tri, 0, t, hops=1)


def _star(sign: float) -> nx.Graph:
    g = nx.Graph()
    for v, (x, y) in enumerate([(0, 0), (1, 0.5), (1, -0.2), (-1, 0.3)]):
        g.add_node(v, pos=(x, sign * y))
    g.add_edges_from([(0, 1), (0, 2), (0, 3), (1, 2)])
    return g


def test_reflected_views_are_congruent():
    a = local_view(_star(1.0), 0, 3, 1)
    b = local_view(_star(-1.0), 0, 3, 1)
    assert _congruences(a, b) == [{0: 0, 1: 1, 2: 2, 3: 3}]
    moved = _star(1.0)
    moved.nodes[2]["pos"] = (1, -0.3)
    assert _congruences(a, local_view(moved, 0, 3, 1)) == []


def test_verdict_reports_the_worse_twin():
    verdict = AdversaryVerdict(
        "greedy",
        1,
        RouterRun((0, 1), 2.0, 1.0, 1.5),
        RouterRun((0, 2, 1), 3.0, 1.0, 1.5),
        divergence=0,
        divergence_step=0,
    )
    assert verdict.worse == "mirrored"
    assert verdict.routing_ratio == 3.0
    assert verdict.competitive_ratio == 2.0
    assert verdict.to_dict()["mirrored"]["path"] == [0, 2, 1]


def test_unreached_run_has_infinite_ratios():
    run = RouterRun((0, 2, 0), 2.0, 1.0, 1.5, reached=False, stop_reason="revisited vertex 0 on the way to 1")
    verdict = AdversaryVerdict("bouncer", 1, RouterRun((0, 1), 1.0, 1.0, 1.0), run, None, None)
    assert math.isinf(verdict.routing_ratio)
    assert math.isinf(verdict.competitive_ratio)
    assert verdict.worse == "mirrored"
    assert verdict.to_dict()["mirrored"]["reached"] is False


class Pendulum:
    """Swings between s and its first neighbour without keeping state"""

    name = "pendulum"
    hops = 1

    def decide(self, view):
        nbrs = set(view.graph.neighbors(view.current))
        if view.s in nbrs:
            return view.s
        return min(nbrs - {view.t})


def _twin(coords, mirrored: bool):
    ps = PointSet.from_coordinates([(x, -y) if mirrored else (x, y) for x, y in coords])
    return SimpleNamespace(triangulation=build_delaunay(ps), s=0, t=1, mirrored=mirrored)


def test_looping_router_is_measured_on_both_twins():
    coords = [(0, 0), (4, 0), (1, 0.7), (2, -0.4), (3, 0.9), (1.5, -1.2), (2.5, 0.2)]
    pair = (_twin(coords, False), _twin(coords, True))
    verdict = adversary_run(Pendulum(), pair)
    assert not verdict.original.reached
    assert not verdict.mirrored.reached
    assert math.isinf(verdict.routing_ratio)


def test_greedy_breaks_ties_by_geometry():
    g = nx.Graph()
    for v, (x, y) in enumerate([(0, 0), (2, -1.5), (2, 1), (4, 0)]):
        g.add_node(v, pos=(x, y))
    g.add_edges_from([(0, 1), (0, 2), (1, 3), (2, 3)])
    # both neighbours sit at L-infinity distance 2 from t; the shorter hop wins
    assert GreedyRouter("linf").decide(local_view(g, 0, 0, 3)) == 2
