"""SVG drawings of instances and solutions."""
from __future__ import annotations

import colorsys
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Sequence

from .corridor import Instance
from .geometry import Point, Segment

VIEW = 1000
MARGIN = 40


@dataclass(frozen=True)
class Viewport:
    """Maps polygon coordinates into the square view box, y pointing up."""
    min_x: float
    min_y: float
    scale: float
    offset_x: float
    offset_y: float

    @classmethod
    def fit(cls, points: Sequence[Point]) -> "Viewport":
        xs = [float(p.x) for p in points]
        ys = [float(p.y) for p in points]
        w, h = max(xs) - min(xs), max(ys) - min(ys)
        scale = (VIEW - 2 * MARGIN) / max(w, h, 1e-12)
        return cls(min(xs), min(ys), scale,
                   MARGIN + (VIEW - 2 * MARGIN - w * scale) / 2,
                   MARGIN + (VIEW - 2 * MARGIN - h * scale) / 2)

    def map(self, p: Point) -> tuple[float, float]:
        x = self.offset_x + (float(p.x) - self.min_x) * self.scale
        y = VIEW - (self.offset_y + (float(p.y) - self.min_y) * self.scale)
        return x, y

    def coords(self, p: Point) -> str:
        x, y = self.map(p)
        return f"{x:.3f},{y:.3f}"


def robot_color(i: int, n: int) -> str:
    r, g, b = colorsys.hsv_to_rgb((i / max(n, 1)) % 1.0, 0.75, 0.85)
    return "#{:02x}{:02x}{:02x}".format(round(r * 255), round(g * 255), round(b * 255))


def _line(parent, view: Viewport, seg: Segment, **attrs):
    (x1, y1), (x2, y2) = view.map(seg.a), view.map(seg.b)
    return ET.SubElement(parent, "line", x1=f"{x1:.3f}", y1=f"{y1:.3f}",
                         x2=f"{x2:.3f}", y2=f"{y2:.3f}", **attrs)


def _marker(parent, view: Viewport, p: Point, cls: str, color: str):
    x, y = view.map(p)
    return ET.SubElement(parent, "circle", {"class": cls, "cx": f"{x:.3f}", "cy": f"{y:.3f}",
                                            "r": "6", "fill": color, "stroke": "black"})


def render_svg(inst: Instance, sweeps: Sequence[Segment] = (),
               trajectories: Sequence[Sequence[Point]] = ()) -> str:
    view = Viewport.fit(inst.polygon.vertices)
    svg = ET.Element("svg", xmlns="http://www.w3.org/2000/svg", version="1.1",
                     width=str(VIEW), height=str(VIEW), viewBox=f"0 0 {VIEW} {VIEW}")
    ET.SubElement(svg, "polygon", {"class": "boundary", "fill": "#f4f4f4", "stroke": "black",
                                   "stroke-width": "2",
                                   "points": " ".join(view.coords(v) for v in inst.polygon.vertices)})
    for seg in sweeps:
        _line(svg, view, seg, **{"class": "sweep", "stroke": "#888888", "stroke-width": "1",
                                  "stroke-dasharray": "6,4"})
    _line(svg, view, inst.S, **{"class": "start-segment", "stroke": "#1f77b4", "stroke-width": "4"})
    _line(svg, view, inst.T, **{"class": "target-segment", "stroke": "#d62728", "stroke-width": "4"})
    n = inst.n
    for i, line in enumerate(trajectories):
        ET.SubElement(svg, "polyline", {"class": "trajectory", "fill": "none",
                                        "stroke": robot_color(i, n), "stroke-width": "3",
                                        "points": " ".join(view.coords(p) for p in line)})
    for i, (s, t) in enumerate(inst.robots):
        _marker(svg, view, s, "start", robot_color(i, n))
        _marker(svg, view, t, "target", "white")
    ET.indent(svg)
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + ET.tostring(svg, encoding="unicode") + "\n"
