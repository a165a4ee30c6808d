# triangulation/delaunay.py
"""
Triangulation container and the Delaunay builder.

The builder is a randomized incremental insertion with a walking point
location and Lawson flips. All combinatorial decisions go through the exact
predicates; cocircular ties use the symbolic in-circle rule, so the output is
a deterministic function of the point order and the shuffle seed.
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx
import numpy as np
import structlog

from geometry.predicates import incircle_raw, incircle_symbolic, orient
from geometry.primitives import distance
from infrastructure.errors import CertificateError, CollinearPointsError, PointSetError, TriangulationError
from triangulation.point_set import PointSet

logger = structlog.get_logger(__name__)

Tri = Tuple[int, int, int]
Edge = Tuple[int, int]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass
class Triangulation:
    point_set: PointSet
    triangles: Tuple[Tri, ...]
    neighbors: Tuple[Tri, ...]
    hull: Tuple[int, ...]
    metric: str = "l2"
    build_info: Dict[str, object] = field(default_factory=dict)
    # kept edges that bound no triangle (L-infinity planarisation)
    loose_edges: Tuple[Edge, ...] = ()

    @classmethod
    def from_triangles(
        cls, point_set: PointSet, triangles, metric: str = "l2", edges: Iterable[Edge] = (), **build_info
    ) -> "Triangulation":
        """Build adjacency and hull from a plain list of triangles, plus any edges outside them"""
        tris: List[Tri] = []
        for a, b, c in triangles:
            o = orient(point_set[a], point_set[b], point_set[c])
            if o == 0:
                raise TriangulationError(f"degenerate triangle {(a, b, c)}")
            tris.append((a, b, c) if o > 0 else (a, c, b))

        owner: Dict[Edge, int] = {}
        for ti, (a, b, c) in enumerate(tris):
            for u, v in ((a, b), (b, c), (c, a)):
                if (u, v) in owner:
                    raise TriangulationError(f"directed edge {(u, v)} used twice")
                owner[(u, v)] = ti

        nbrs = []
        for a, b, c in tris:
            # neighbor k sits across the edge opposite vertex k
            nbrs.append(tuple(owner.get((v, u), -1) for u, v in ((b, c), (c, a), (a, b))))
        hull = _hull_cycle(tris, nbrs, strict=(metric == "l2"))
        covered = {edge_key(u, v) for u, v in owner}
        loose = tuple(sorted({edge_key(u, v) for u, v in edges} - covered))
        return cls(point_set, tuple(tris), tuple(nbrs), hull, metric, dict(build_info), loose)

    @property
    def n(self) -> int:
        return len(self.point_set)

    @cached_property
    def _edges(self) -> FrozenSet[Edge]:
        out: Set[Edge] = set()
        for a, b, c in self.triangles:
            out.update((edge_key(a, b), edge_key(b, c), edge_key(c, a)))
        out.update(self.loose_edges)
        return frozenset(out)

    def edges(self) -> FrozenSet[Edge]:
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self._edges

    @cached_property
    def _vertex_triangles(self) -> Dict[int, List[int]]:
        table: Dict[int, List[int]] = {v: [] for v in range(self.n)}
        for ti, tri in enumerate(self.triangles):
            for v in tri:
                table[v].append(ti)
        return table

    def vertex_triangles(self, v: int) -> List[int]:
        return self._vertex_triangles.get(v, [])

    @cached_property
    def _adjacency(self) -> Dict[int, Set[int]]:
        adj: Dict[int, Set[int]] = {v: set() for v in range(self.n)}
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def neighbors_of(self, v: int) -> Set[int]:
        return self._adjacency[v]

    def graph(self) -> nx.Graph:
        """Triangulation graph with Euclidean edge weights"""
        g = nx.Graph()
        pts = self.point_set.points
        for v in range(self.n):
            g.add_node(v, pos=(pts[v].x, pts[v].y))
        for u, v in sorted(self._edges):
            g.add_edge(u, v, weight=distance(pts[u], pts[v]))
        return g

    def check_connected(self) -> None:
        g = self.graph()
        if not nx.is_connected(g):
            parts = nx.number_connected_components(g)
            raise CertificateError(f"graph is disconnected: {parts} components over {self.n} vertices")

    def check_certificate(self, exhaustive: bool = False) -> None:
        """
        Raise CertificateError unless the triangulation is Delaunay.

        Every metric must give a connected graph. For L2 the local test then
        checks every interior edge against the opposite vertex, which is
        equivalent for a valid triangulation; the exhaustive test runs every
        vertex against every triangle. Other metrics stop after connectivity.
        """
        self.check_connected()
        if self.metric != "l2":
            return
        pts = self.point_set.points
        h = len(self.hull)
        if len(self.triangles) != 2 * self.n - 2 - h:
            raise CertificateError(
                f"Euler relation broken: {len(self.triangles)} triangles, n={self.n}, hull={h}"
            )
        for ti, (a, b, c) in enumerate(self.triangles):
            if exhaustive:
                others = (v for v in range(self.n) if v not in (a, b, c))
            else:
                others = (
                    _third(self.triangles[nb], self.triangles[ti]) for nb in self.neighbors[ti] if nb >= 0
                )
            for v in others:
                if incircle_raw(pts[a], pts[b], pts[c], pts[v]) > 0:
                    raise CertificateError(f"vertex {v} lies inside the circumcircle of triangle {(a, b, c)}")


def _third(tri: Tri, other: Tri) -> int:
    for v in tri:
        if v not in other:
            return v
    raise TriangulationError(f"triangles {tri} and {other} are not adjacent")


def _hull_cycle(tris, nbrs, strict: bool = True) -> Tuple[int, ...]:
    nxt: Dict[int, int] = {}
    pinched = False
    for tri, nb in zip(tris, nbrs):
        for k in range(3):
            if nb[k] == -1:
                u = tri[(k + 1) % 3]
                pinched = pinched or u in nxt
                nxt[u] = tri[(k + 2) % 3]
    if not nxt:
        return ()
    if not pinched:
        start = min(nxt)
        cycle = [start]
        v = nxt[start]
        while v != start and len(cycle) <= len(nxt):
            cycle.append(v)
            v = nxt.get(v, start)
        if len(cycle) == len(nxt):
            return tuple(cycle)
    if strict:
        raise TriangulationError("boundary edges do not form a single cycle")
    # non-convex or pinched boundaries (L-infinity faces) keep the vertex set only
    return tuple(sorted(set(nxt) | set(nxt.values())))


class _Builder:
    """Mutable state of one incremental construction"""

    def __init__(self, ps: PointSet):
        self.pts = ps.points
        self.tris: List[List[int]] = []
        self.nbrs: List[List[int]] = []
        self.last = 0
        self.flips = 0

    def add(self, verts, nb) -> int:
        self.tris.append(list(verts))
        self.nbrs.append(list(nb))
        return len(self.tris) - 1

    def set(self, t: int, verts, nb) -> None:
        self.tris[t] = list(verts)
        self.nbrs[t] = list(nb)

    def relink(self, t: int, old: int, new: int) -> None:
        if t < 0:
            return
        nb = self.nbrs[t]
        nb[nb.index(old)] = new

    def rotated(self, t: int, k: int):
        """Vertices and neighbors of t rotated so position k comes first"""
        v, n = self.tris[t], self.nbrs[t]
        return [v[k], v[(k + 1) % 3], v[(k + 2) % 3]], [n[k], n[(k + 1) % 3], n[(k + 2) % 3]]

    def locate(self, p: int, rng: np.random.Generator):
        pt = self.pts[p]
        t = self.last
        for _ in range(4 * len(self.tris) + 16):
            verts = self.tris[t]
            start = int(rng.integers(3))
            moved = False
            zeros = []
            for j in range(3):
                k = (start + j) % 3
                u, w = verts[(k + 1) % 3], verts[(k + 2) % 3]
                o = orient(self.pts[u], self.pts[w], pt)
                if o < 0:
                    nb = self.nbrs[t][k]
                    if nb == -1:
                        return "outside", t, k
                    t = nb
                    moved = True
                    break
                if o == 0:
                    zeros.append(k)
            if not moved:
                if len(zeros) == 0:
                    return "inside", t, -1
                if len(zeros) == 1:
                    return "edge", t, zeros[0]
                raise PointSetError(f"point {p} coincides with a vertex of triangle {verts}")
        raise TriangulationError(f"point location for vertex {p} did not terminate")

    def split_inside(self, t: int, p: int) -> List[int]:
        (a, b, c), (na, nb, nc) = self.rotated(t, 0)
        t1 = self.add((b, c, p), (-1, -1, -1))
        t2 = self.add((c, a, p), (-1, -1, -1))
        self.set(t, (a, b, p), (t1, t2, nc))
        self.set(t1, (b, c, p), (t2, t, na))
        self.set(t2, (c, a, p), (t, t1, nb))
        self.relink(na, t, t1)
        self.relink(nb, t, t2)
        return [t, t1, t2]

    def split_edge(self, t: int, k: int, p: int) -> List[int]:
        (c, u, w), (n, nu, nw) = self.rotated(t, k)
        if n == -1:
            t1 = self.add((w, c, p), (-1, -1, -1))
            self.set(t, (c, u, p), (-1, t1, nw))
            self.set(t1, (w, c, p), (t, -1, nu))
            self.relink(nu, t, t1)
            return [t, t1]

        j = self.nbrs[n].index(t)
        (d, w2, u2), (_, nn_w, nn_u) = self.rotated(n, j)
        assert (w2, u2) == (w, u)
        t1 = self.add((w, c, p), (-1, -1, -1))
        t3 = self.add((u, d, p), (-1, -1, -1))
        self.set(t, (c, u, p), (t3, t1, nw))
        self.set(t1, (w, c, p), (t, n, nu))
        self.set(n, (d, w, p), (t1, t3, nn_u))
        self.set(t3, (u, d, p), (n, t, nn_w))
        self.relink(nu, t, t1)
        self.relink(nn_w, n, t3)
        return [t, t1, n, t3]

    def _next_hull_edge(self, t: int, b: int):
        cur = t
        while True:
            i = self.tris[cur].index(b)
            nxt = self.tris[cur][(i + 1) % 3]
            nb = self.nbrs[cur][(i + 2) % 3]
            if nb == -1:
                return cur, b, nxt
            cur = nb

    def _prev_hull_edge(self, t: int, a: int):
        cur = t
        while True:
            i = self.tris[cur].index(a)
            prv = self.tris[cur][(i + 2) % 3]
            nb = self.nbrs[cur][(i + 1) % 3]
            if nb == -1:
                return cur, prv, a
            cur = nb

    def insert_outside(self, t: int, k: int, p: int) -> List[int]:
        pt = self.pts[p]
        a, b = self.tris[t][(k + 1) % 3], self.tris[t][(k + 2) % 3]
        chain = [(t, a, b)]
        # extend the visible chain forwards and backwards along the hull
        ct, cb = t, b
        while True:
            nt, u, w = self._next_hull_edge(ct, cb)
            if (u, w) == (a, b) or orient(self.pts[u], self.pts[w], pt) >= 0:
                break
            chain.append((nt, u, w))
            ct, cb = nt, w
        ct, ca = t, a
        while True:
            pt_, u, w = self._prev_hull_edge(ct, ca)
            if (u, w) == chain[-1][1:] or orient(self.pts[u], self.pts[w], pt) >= 0:
                break
            chain.insert(0, (pt_, u, w))
            ct, ca = pt_, u

        created = []
        prev_new = -1
        for ht, u, w in chain:
            nt = self.add((w, u, p), (-1, -1, -1))
            # across edge (u, p) from the new triangle is the previous new triangle
            self.nbrs[nt] = [prev_new, -1, ht]
            if prev_new >= 0:
                self.nbrs[prev_new][1] = nt
            kk = [i for i in range(3) if self.tris[ht][i] not in (u, w)][0]
            self.nbrs[ht][kk] = nt
            created.append(nt)
            prev_new = nt
        return created

    def legalize(self, stack: List[int], p: int) -> None:
        while stack:
            t = stack.pop()
            verts = self.tris[t]
            if p not in verts:
                continue
            i = verts.index(p)
            (_, a, b), (n_opp, t_b, t_a) = self.rotated(t, i)
            n = n_opp
            if n == -1:
                continue
            j = [m for m in range(3) if self.tris[n][m] not in (a, b)][0]
            (d, b2, a2), (_, nad, ndb) = self.rotated(n, j)
            if incircle_symbolic(self.pts, p, a, b, d) <= 0:
                continue
            self.set(t, (p, a, d), (nad, n, t_a))
            self.set(n, (p, d, b), (ndb, t_b, t))
            self.relink(nad, n, t)
            self.relink(t_b, t, n)
            self.flips += 1
            stack.extend((t, n))


def build_delaunay(ps: PointSet, seed: int = 0) -> Triangulation:
    """Delaunay triangulation of a point set; raises on duplicates or all-collinear input"""
    n = len(ps)
    if n < 3:
        raise PointSetError(f"need at least 3 points to triangulate, got {n}")

    rng = np.random.default_rng(seed)
    order = [int(i) for i in rng.permutation(n)]
    pts = ps.points
    a, b = order[0], order[1]
    third = next((i for i in range(2, n) if orient(pts[a], pts[b], pts[order[i]]) != 0), None)
    if third is None:
        raise CollinearPointsError(f"all {n} points are collinear")
    order[2], order[third] = order[third], order[2]
    c = order[2]

    builder = _Builder(ps)
    builder.add((a, b, c) if orient(pts[a], pts[b], pts[c]) > 0 else (a, c, b), (-1, -1, -1))

    try:
        for p in order[3:]:
            where, t, k = builder.locate(p, rng)
            if where == "inside":
                created = builder.split_inside(t, p)
            elif where == "edge":
                created = builder.split_edge(t, k, p)
            else:
                created = builder.insert_outside(t, k, p)
            builder.legalize(list(created), p)
            builder.last = created[-1]
    except Exception as e:
        logger.error(f"Delaunay construction failed at n={n}: {e}")
        raise

    tris = [tuple(t) for t in builder.tris]
    nbrs = [tuple(nb) for nb in builder.nbrs]
    tri = Triangulation(ps, tuple(tris), tuple(nbrs), _hull_cycle(tris, nbrs), "l2", {"seed": seed, "flips": builder.flips})
    logger.debug(f"triangulated {n} points into {len(tris)} triangles with {builder.flips} flips")
    return tri
