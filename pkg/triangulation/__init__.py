# triangulation/__init__.py
"""Point sets, Delaunay builders (L2 incremental, exact oracle, L-infinity brute force) and segment corridors."""
from triangulation.brute_force import brute_force_delaunay_edges
from triangulation.corridor import SegmentCorridor, rightmost_triangle_at, segment_corridor, vertex_side
from triangulation.delaunay import Triangulation, build_delaunay, edge_key
from triangulation.linf import build_linf_delaunay_bruteforce
from triangulation.point_set import PointSet, rotate_45

__all__ = [
    "PointSet",
    "SegmentCorridor",
    "Triangulation",
    "brute_force_delaunay_edges",
    "build_delaunay",
    "build_linf_delaunay_bruteforce",
    "edge_key",
    "rightmost_triangle_at",
    "rotate_45",
    "segment_corridor",
    "vertex_side",
]
