# workbench/formats.py
"""
On-disk formats.

Point sets are line-oriented text:

    # chew-lab-points v1 {"generator": "random-uniform", "seed": 7}
    s 0.0 0.0 s
    p1 0.25 -0.125
    ...

one point per line as `id x y [role[,role]]`, in vertex-index order. Floats
are written with repr, which is the shortest string that parses back to the
same double. Everything else (traces, triangulations, reports) is JSON with
sorted keys.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import structlog

from geometry.primitives import Arc, Circle, Point
from infrastructure.errors import PointSetFormatError
from routing.chew import DecisionRecord, RoutingTrace
from triangulation.delaunay import Triangulation
from triangulation.point_set import PointSet

logger = structlog.get_logger(__name__)

MAGIC = "chew-lab-points"
VERSION = 1


def format_point_set(ps: PointSet) -> str:
    header = f"# {MAGIC} v{VERSION} {json.dumps(ps.metadata, sort_keys=True)}"
    lines = [header]
    for i, (p, label) in enumerate(zip(ps.points, ps.labels)):
        if not label or any(c.isspace() for c in label) or label.startswith("#"):
            raise PointSetFormatError(f"label {label!r} of point {i} cannot be written")
        roles = ",".join(sorted(ps.roles_of(i)))
        lines.append(" ".join(filter(None, (label, repr(p.x), repr(p.y), roles))))
    return "\n".join(lines) + "\n"


def _parse_header(line: str) -> Dict[str, Any]:
    parts = line[1:].strip().split(None, 2)
    if len(parts) < 2 or parts[0] != MAGIC:
        raise PointSetFormatError(f"missing '{MAGIC}' header, got {line!r}")
    if parts[1] != f"v{VERSION}":
        raise PointSetFormatError(f"unsupported point-set version {parts[1]!r}")
    if len(parts) == 2:
        return {}
    try:
        metadata = json.loads(parts[2])
    except json.JSONDecodeError as e:
        raise PointSetFormatError(f"header metadata is not JSON: {e}") from e
    if not isinstance(metadata, dict):
        raise PointSetFormatError("header metadata must be a JSON object")
    return metadata


def parse_point_set(text: str) -> PointSet:
    metadata: Optional[Dict[str, Any]] = None
    coords: List[Point] = []
    labels: List[str] = []
    roles: Dict[str, int] = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if metadata is None:
            if not line.startswith("#"):
                raise PointSetFormatError(f"line {number}: expected the '{MAGIC}' header first")
            metadata = _parse_header(line)
            continue
        if line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) not in (3, 4):
            raise PointSetFormatError(f"line {number}: expected 'id x y [roles]', got {raw!r}")
        try:
            p = Point(float(fields[1]), float(fields[2]))
        except ValueError as e:
            raise PointSetFormatError(f"line {number}: {e}") from e
        if len(fields) == 4:
            for role in fields[3].split(","):
                if role in roles:
                    raise PointSetFormatError(f"line {number}: role {role!r} assigned twice")
                roles[role] = len(coords)
        coords.append(p)
        labels.append(fields[0])

    if metadata is None:
        raise PointSetFormatError("empty point-set file")
    return PointSet.from_coordinates(coords, labels, roles=roles, metadata=metadata)


def write_point_set(ps: PointSet, path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(format_point_set(ps))
    except OSError as e:
        logger.error(f"cannot write point set to {path}: {e}")
        raise
    logger.info(f"wrote {len(ps)} points to {path}")
    return path


def read_point_set(path: Path) -> PointSet:
    try:
        text = Path(path).read_text()
    except OSError as e:
        logger.error(f"cannot read point set {path}: {e}")
        raise
    return parse_point_set(text)


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(obj: Any, path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps(obj))
    except (OSError, TypeError) as e:
        logger.error(f"cannot write JSON to {path}: {e}")
        raise
    return path


def _pair(p: Optional[Point]) -> Optional[List[float]]:
    return [p.x, p.y] if p is not None else None


def circle_to_dict(circle: Circle) -> Dict[str, Any]:
    return {"center": _pair(circle.center), "radius": circle.radius}


def arc_to_dict(arc: Arc, trace: RoutingTrace) -> Dict[str, Any]:
    """An arc of the normalized frame, written in input coordinates"""
    world = trace.world_point
    return {
        "center": _pair(world(arc.circle.center)),
        "radius": arc.circle.radius,
        "start": _pair(world(arc.start)),
        "end": _pair(world(arc.end)),
        "orientation": arc.orientation.value,
        "sweep": arc.sweep,
        "length": arc.length,
    }


def trace_to_dict(trace: RoutingTrace, decisions: Optional[Sequence[DecisionRecord]] = None) -> Dict[str, Any]:
    st = trace.st_distance
    steps = []
    for step in trace.steps:
        steps.append(
            {
                "index": step.index,
                "current": step.current,
                "next": step.next,
                "rule": step.rule.value,
                "triangle": list(step.triangle) if step.triangle else None,
                "edge_length": step.edge_length,
                "arc_length": step.arc_length,
                "arc": arc_to_dict(step.arc, trace) if step.arc is not None else None,
            }
        )
    out: Dict[str, Any] = {
        "s": trace.s,
        "t": trace.t,
        "vertex_path": list(trace.vertex_path),
        "direct": trace.direct,
        "st_distance": st,
        "edge_length": trace.edge_length,
        "arc_length": trace.arc_length,
        "normalized": {"edge_length": trace.edge_length / st, "arc_length": trace.arc_length / st},
        "steps": steps,
    }
    if decisions is not None:
        out["decisions"] = [d.to_dict() for d in decisions]
    return out


def triangulation_to_dict(tri: Triangulation) -> Dict[str, Any]:
    return {
        "n": tri.n,
        "metric": tri.metric,
        "triangles": [list(t) for t in tri.triangles],
        "edges": sorted([list(e) for e in tri.edges()]),
        "hull": list(tri.hull),
    }
