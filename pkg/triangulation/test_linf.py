# triangulation/test_linf.py
import networkx as nx
import numpy as np
import pytest

from infrastructure.errors import CollinearPointsError
from triangulation.linf import build_linf_delaunay_bruteforce, linf_delaunay_edges
from triangulation.point_set import PointSet, rotate_45


def test_three_points_form_a_triangle():
    tri = build_linf_delaunay_bruteforce(PointSet.from_coordinates([(0, 0), (2, 1), (4, 0)]))
    assert tri.edges() == {(0, 1), (1, 2), (0, 2)}
    assert len(tri.triangles) == 1


def test_square_keeps_first_diagonal():
    tri = build_linf_delaunay_bruteforce(PointSet.from_coordinates([(0, 0), (1, 0), (1, 1), (0, 1)]))
    assert tri.edges() == {(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)}
    assert tri.metric == "linf"
    assert tri.build_info["rejected"] == 1


def test_blocked_pair_is_not_an_edge():
    # points just above and below the bottom side fill every unit square through both ends
    ps = PointSet.from_coordinates([(0, 0), (1, 0), (0.5, 0.1), (0.5, -0.1)])
    assert (0, 1) not in linf_delaunay_edges(ps)


def test_random_result_is_planar_triangulation():
    rng = np.random.default_rng(4)
    ps = PointSet.from_coordinates(rng.random((30, 2)))
    tri = build_linf_delaunay_bruteforce(ps)
    edge_use = {}
    for a, b, c in tri.triangles:
        for e in ((a, b), (b, c), (c, a)):
            key = tuple(sorted(e))
            edge_use[key] = edge_use.get(key, 0) + 1
    assert max(edge_use.values()) <= 2
    assert tri.graph().number_of_edges() == len(tri.edges())


def test_l1_by_rotation():
    ps = PointSet.from_coordinates([(0, 0), (1, 1), (2, 0), (1, -1), (1, 0.2)])
    tri = build_linf_delaunay_bruteforce(rotate_45(ps))
    assert tri.n == 5
    assert all(4 in t for t in tri.triangles)


def test_collinear_input():
    with pytest.raises(CollinearPointsError):
        build_linf_delaunay_bruteforce(PointSet.from_coordinates([(0, 0), (1, 0), (2, 0)]))


def test_collinear_chains_stay_connected():
    # two dense collinear chains meeting a sparse corner keep every link
    chain = [(1.0 + 0.001 * i / 20, 0.8 * i / 20) for i in range(21)]
    spur = [(0.002 + 0.5 * i / 10, -0.8 + 0.08 * i / 10) for i in range(11)]
    ps = PointSet.from_coordinates([(0, 0), (0.001, 0.8)] + chain + spur)
    tri = build_linf_delaunay_bruteforce(ps)
    assert nx.is_connected(tri.graph())
    for i in range(2, 22):
        assert tri.has_edge(i, i + 1)
    tri.check_certificate()


def test_loose_edges_are_kept_edges():
    # a grid makes every cell a tie between its two diagonals
    ps = PointSet.from_coordinates([(x / 4, y / 4) for x in range(5) for y in range(5) if (x, y) != (2, 2)])
    tri = build_linf_delaunay_bruteforce(ps)
    candidates = linf_delaunay_edges(ps)
    assert set(tri.loose_edges) <= candidates
    assert tri.edges() <= candidates
    assert nx.is_connected(tri.graph())
