"""Static SVG drawings of plane curves, their dual subdivisions and metric graphs."""

from __future__ import annotations

import math
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .hypersurface import TropicalComplex
from .skeleton import MetricGraph

PANEL = 400.0
MARGIN = 30.0


@dataclass
class RenderSpec:
    viewport: tuple[Fraction, Fraction, Fraction, Fraction] | None = None  # xmin, ymin, xmax, ymax
    ray_overhang: Fraction = Fraction(2)
    stroke_per_weight: float = 1.5
    show_weights: bool = True
    show_lengths: bool = True
    show_dual: bool = True
    colors: tuple[str, ...] = field(default=("#1f4e79", "#b03a2e"))


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


class _Frame:
    """Maps a rational box onto a square panel with y pointing up."""

    def __init__(self, box, x0: float):
        xmin, ymin, xmax, ymax = (float(v) for v in box)
        span = max(xmax - xmin, ymax - ymin, 1e-9)
        self.scale = (PANEL - 2 * MARGIN) / span
        self.xmin, self.ymin = xmin, ymin
        self.x0 = x0

    def __call__(self, p) -> tuple[str, str]:
        x = self.x0 + MARGIN + (float(p[0]) - self.xmin) * self.scale
        y = PANEL - MARGIN - (float(p[1]) - self.ymin) * self.scale
        return _num(x), _num(y)


def curve_viewport(curves: Sequence[TropicalComplex], overhang) -> tuple:
    pts = [v for C in curves for v in C.vertices] or [(Fraction(0), Fraction(0))]
    xs = [Fraction(p[0]) for p in pts]
    ys = [Fraction(p[1]) for p in pts]
    pad = Fraction(overhang)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)


def _svg(width: float) -> ET.Element:
    return ET.Element(
        "svg",
        {"xmlns": "http://www.w3.org/2000/svg", "width": _num(width), "height": _num(PANEL), "viewBox": f"0 0 {_num(width)} {_num(PANEL)}"},
    )


def _ray_end(base, direction, box):
    """Point where the ray leaves the viewport box."""
    xmin, ymin, xmax, ymax = box
    ts = []
    for k, (lo, hi) in enumerate(((xmin, xmax), (ymin, ymax))):
        d = direction[k]
        if d > 0:
            ts.append((hi - Fraction(base[k])) / d)
        elif d < 0:
            ts.append((lo - Fraction(base[k])) / d)
    t = max(min(ts), Fraction(0))
    return (Fraction(base[0]) + t * direction[0], Fraction(base[1]) + t * direction[1])


def _draw_curve(g: ET.Element, C: TropicalComplex, frame: _Frame, box, spec: RenderSpec, color: str) -> None:
    for e in C.edges:
        (x1, y1), (x2, y2) = frame(C.vertices[e.u]), frame(C.vertices[e.v])
        w = e.weight or 1
        ET.SubElement(g, "line", {"x1": x1, "y1": y1, "x2": x2, "y2": y2, "stroke": color, "stroke-width": _num(spec.stroke_per_weight * w)})
        if spec.show_weights and w > 1:
            mx = (float(x1) + float(x2)) / 2
            my = (float(y1) + float(y2)) / 2
            ET.SubElement(g, "text", {"x": _num(mx + 4), "y": _num(my - 4), "font-size": "11"}).text = str(w)
    for r in C.rays:
        end = _ray_end(C.vertices[r.base], r.direction, box)
        (x1, y1), (x2, y2) = frame(C.vertices[r.base]), frame(end)
        w = r.weight or 1
        ET.SubElement(g, "line", {"x1": x1, "y1": y1, "x2": x2, "y2": y2, "stroke": color, "stroke-width": _num(spec.stroke_per_weight * w)})
        if spec.show_weights and w > 1:
            ET.SubElement(g, "text", {"x": x2, "y": y2, "font-size": "11"}).text = str(w)
    for v in C.vertices:
        x, y = frame(v)
        ET.SubElement(g, "circle", {"cx": x, "cy": y, "r": "2.5", "fill": color})


def _draw_subdivision(g: ET.Element, C: TropicalComplex, x0: float) -> None:
    sub = C.subdivision
    pts = sub.points
    used = sorted(sub.used_points())
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    frame = _Frame((min(xs), min(ys), max(xs), max(ys)), x0)
    drawn = set()
    for cell_faces in sub.cell_facets:
        for f in cell_faces:
            key = tuple(sorted(f))
            if key in drawn:
                continue
            drawn.add(key)
            ends = sorted(pts[i] for i in f)
            (x1, y1), (x2, y2) = frame(ends[0]), frame(ends[-1])
            ET.SubElement(g, "line", {"x1": x1, "y1": y1, "x2": x2, "y2": y2, "stroke": "#333", "stroke-width": "1"})
    for i, p in enumerate(pts):
        x, y = frame(p)
        ET.SubElement(g, "circle", {"cx": x, "cy": y, "r": "3", "fill": "#333" if i in used else "#fff", "stroke": "#333"})


def render_curve(C: TropicalComplex, spec: RenderSpec | None = None) -> str:
    """Curve on the left and, when available, its dual subdivision on the right."""
    spec = spec or RenderSpec()
    box = spec.viewport or curve_viewport([C], spec.ray_overhang)
    dual = spec.show_dual and C.subdivision is not None
    root = _svg(2 * PANEL if dual else PANEL)
    g = ET.SubElement(root, "g", {"id": "curve"})
    _draw_curve(g, C, _Frame(box, 0.0), box, spec, spec.colors[0])
    if dual:
        _draw_subdivision(ET.SubElement(root, "g", {"id": "subdivision"}), C, PANEL)
    return _to_text(root)


def render_intersection(C: TropicalComplex, D: TropicalComplex, points, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec(show_dual=False)
    box = spec.viewport or curve_viewport([C, D], spec.ray_overhang)
    frame = _Frame(box, 0.0)
    root = _svg(PANEL)
    _draw_curve(ET.SubElement(root, "g", {"id": "first"}), C, frame, box, spec, spec.colors[0])
    _draw_curve(ET.SubElement(root, "g", {"id": "second"}), D, frame, box, spec, spec.colors[1])
    g = ET.SubElement(root, "g", {"id": "points"})
    for p in points:
        x, y = frame(p.location)
        ET.SubElement(g, "circle", {"cx": x, "cy": y, "r": "5", "fill": "none", "stroke": "#000", "stroke-width": "1.5"})
        ET.SubElement(g, "text", {"x": _num(float(x) + 6), "y": _num(float(y) + 12), "font-size": "11"}).text = str(p.multiplicity)
    return _to_text(root)


def render_graph(G: MetricGraph, spec: RenderSpec | None = None) -> str:
    """Vertices on a circle; parallel edges bend apart, loops are drawn as petals."""
    spec = spec or RenderSpec()
    root = _svg(PANEL)
    g = ET.SubElement(root, "g", {"id": "graph"})
    c = PANEL / 2
    rad = PANEL / 2 - 3 * MARGIN
    pos = [
        (c + rad * math.cos(2 * math.pi * k / max(G.n, 1)), c - rad * math.sin(2 * math.pi * k / max(G.n, 1)))
        for k in range(G.n)
    ]
    if G.n == 1:
        pos = [(c, c)]
    seen: dict[tuple[int, int], int] = {}
    for u, v, length in G.edges:
        k = seen.get((u, v), 0)
        seen[(u, v)] = k + 1
        (x1, y1), (x2, y2) = pos[u], pos[v]
        if u == v:
            ang = math.atan2(y1 - c, x1 - c) if G.n > 1 else 0.0
            ang += 0.6 * k
            r0 = 25 + 10 * k
            cx, cy = x1 + r0 * math.cos(ang), y1 + r0 * math.sin(ang)
            ET.SubElement(g, "circle", {"cx": _num(cx), "cy": _num(cy), "r": _num(r0), "fill": "none", "stroke": spec.colors[0], "stroke-width": "1.5"})
            lx, ly = cx + r0 * math.cos(ang), cy + r0 * math.sin(ang)
        else:
            off = (k - (sum(1 for e in G.edges if (e[0], e[1]) == (u, v)) - 1) / 2) * 40
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            dx, dy = x2 - x1, y2 - y1
            norm = math.hypot(dx, dy) or 1.0
            qx, qy = mx - dy / norm * off, my + dx / norm * off
            d = f"M {_num(x1)} {_num(y1)} Q {_num(qx)} {_num(qy)} {_num(x2)} {_num(y2)}"
            ET.SubElement(g, "path", {"d": d, "fill": "none", "stroke": spec.colors[0], "stroke-width": "1.5"})
            lx, ly = (mx + qx) / 2, (my + qy) / 2
        if spec.show_lengths:
            ET.SubElement(g, "text", {"x": _num(lx + 3), "y": _num(ly - 3), "font-size": "12"}).text = str(length)
    for x, y in pos:
        ET.SubElement(g, "circle", {"cx": _num(x), "cy": _num(y), "r": "4", "fill": "#000"})
    return _to_text(root)


def _to_text(root: ET.Element) -> str:
    ET.indent(root)
    return ET.tostring(root, encoding="unicode") + "\n"
