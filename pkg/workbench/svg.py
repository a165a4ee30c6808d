# workbench/svg.py
"""
SVG rendering of a triangulation with an optional Chew trace on top.

Layers, bottom to top: triangulation edges (thin, gray), worst-case circles
(dashed), the snail curve S(s, t), the route's edges and arcs (thick), and
the vertices. World y points up, so it is flipped on output.
"""
import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Sequence

import structlog

from boundlab.worst_case import WorstCaseStep
from geometry.primitives import Arc, Orientation, Point
from geometry.snail import snail_curve
from routing.chew import RoutingTrace
from triangulation.delaunay import Triangulation

logger = structlog.get_logger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class Viewport:
    """Maps world coordinates onto the SVG canvas, y pointing down"""

    min_x: float
    max_y: float
    scale: float
    width: float
    height: float
    margin: float

    @classmethod
    def fit(cls, points: Sequence[Sequence[float]], width: float = 800.0, margin: float = 20.0) -> "Viewport":
        """Points may be Point instances or plain (x, y) pairs"""
        xs, ys = [p[0] for p in points], [p[1] for p in points]
        span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
        scale = (width - 2 * margin) / span
        height = (max(ys) - min(ys)) * scale + 2 * margin
        return cls(min(xs), max(ys), scale, width, height, margin)

    def map(self, p) -> Point:
        return Point(self.margin + (p[0] - self.min_x) * self.scale, self.margin + (self.max_y - p[1]) * self.scale)

    def unmap(self, x: float, y: float) -> Point:
        return Point(self.min_x + (x - self.margin) / self.scale, self.max_y - (y - self.margin) / self.scale)


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def arc_path_data(arc: Arc, view: Viewport, world=lambda p: p) -> str:
    """SVG path data for an arc; the y flip turns counterclockwise into sweep-flag 0"""
    a, b = view.map(world(arc.start)), view.map(world(arc.end))
    r = arc.circle.radius * view.scale
    large = 1 if arc.sweep > math.pi else 0
    sweep = 1 if arc.orientation is Orientation.CLOCKWISE else 0
    return f"M {_fmt(a.x)} {_fmt(a.y)} A {_fmt(r)} {_fmt(r)} 0 {large} {sweep} {_fmt(b.x)} {_fmt(b.y)}"


def _line(parent: ET.Element, a: Point, b: Point, **attrs: str) -> ET.Element:
    return ET.SubElement(parent, "line", x1=_fmt(a.x), y1=_fmt(a.y), x2=_fmt(b.x), y2=_fmt(b.y), **attrs)


def render_svg(
    tri: Triangulation,
    trace: Optional[RoutingTrace] = None,
    worst_case: Optional[Sequence[WorstCaseStep]] = None,
    snail: bool = False,
    width: float = 800.0,
    labels: bool = False,
) -> str:
    pts = tri.point_set.points
    view = Viewport.fit(pts, width)
    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "width": _fmt(view.width),
            "height": _fmt(view.height),
            "viewBox": f"0 0 {_fmt(view.width)} {_fmt(view.height)}",
        },
    )

    edges = ET.SubElement(root, "g", id="triangulation", stroke="#999999", fill="none")
    edges.set("stroke-width", "0.5")
    for u, v in sorted(tri.edges()):
        _line(edges, view.map(pts[u]), view.map(pts[v]))

    if trace is not None:
        frame = trace.frame
        if worst_case:
            group = ET.SubElement(root, "g", id="worst-case", stroke="#3366cc", fill="none")
            group.set("stroke-dasharray", "4 3")
            for step in worst_case:
                # worst-case circles live in the unit frame
                c = view.map(frame.to_world(step.circle.center.scale(trace.st_distance)))
                r = step.circle.radius * trace.st_distance * view.scale
                ET.SubElement(group, "circle", cx=_fmt(c.x), cy=_fmt(c.y), r=_fmt(r))
        if snail:
            curve = snail_curve((0.0, 0.0), (trace.st_distance, 0.0))
            group = ET.SubElement(root, "g", id="snail", stroke="#33aa55", fill="none")
            _line(group, view.map(frame.to_world(curve.start)), view.map(frame.to_world(curve.apex)))
            ET.SubElement(group, "path", d=arc_path_data(curve.arc, view, frame.to_world))

        route = ET.SubElement(root, "g", id="route", stroke="#cc2222", fill="none")
        route.set("stroke-width", "2.5")
        path = trace.vertex_path
        for u, v in zip(path, path[1:]):
            _line(route, view.map(pts[u]), view.map(pts[v]), **{"class": "route-edge"})
        for step in trace.steps:
            if step.arc is not None:
                ET.SubElement(route, "path", d=arc_path_data(step.arc, view, frame.to_world), **{"class": "route-arc"})

    nodes = ET.SubElement(root, "g", id="vertices", fill="#000000")
    roles = {i: ",".join(tri.point_set.roles_of(i)) for i in range(tri.n)}
    for i, p in enumerate(pts):
        c = view.map(p)
        dot = ET.SubElement(nodes, "circle", cx=_fmt(c.x), cy=_fmt(c.y), r="2")
        if roles[i]:
            dot.set("fill", "#cc2222")
            dot.set("r", "4")
        if labels or roles[i]:
            text = ET.SubElement(nodes, "text", x=_fmt(c.x + 4), y=_fmt(c.y - 4))
            text.set("font-size", "10")
            text.text = roles[i] or tri.point_set.labels[i]

    return ET.tostring(root, encoding="unicode")


def write_svg(svg: str, path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(svg)
    except OSError as e:
        logger.error(f"cannot write SVG to {path}: {e}")
        raise
    logger.info(f"wrote SVG to {path}")
    return path


def arc_endpoints(svg: str) -> List[tuple]:
    """(start, end) pairs of every route arc, in SVG units"""
    root = ET.fromstring(svg)
    out = []
    for el in root.iter(f"{{{SVG_NS}}}path"):
        if el.get("class") != "route-arc":
            continue
        f = el.get("d", "").split()
        out.append(((float(f[1]), float(f[2])), (float(f[-2]), float(f[-1]))))
    return out
