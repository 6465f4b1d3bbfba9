"""
Deterministic SVG output for octant scenes and population time series.

All coordinates are written with fixed three-decimal precision and elements
are emitted in a fixed order, so identical inputs give identical bytes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, pi, sin, sqrt
from xml.sax.saxutils import escape, quoteattr

import numpy as np

_COS30 = sqrt(3.0) / 2.0

DEFAULT_PALETTE = {
    "background": "#ffffff",
    "axis": "#555555",
    "text": "#222222",
    "vector": "#2a9d3a",
    "path": "#ff8c00",
    "reference": "#000000",
    "pair01": "#d62728",
    "pair02": "#1f5fbf",
    "pair12": "#c9a227",
    "overlay": "#e377c2",
    "overlay-vector": "#000000",
    "pop0": "#1f5fbf",
    "pop1": "#d62728",
    "pop2": "#c9a227",
    "marker": "#000000",
}


@dataclass(frozen=True)
class RenderStyle:
    """Canvas geometry, strokes and palette (colours keyed by scene role)."""

    width: int = 420
    height: int = 420
    origin: tuple = (210.0, 235.0)
    scale: float = 150.0
    hand_scale: float = 40.0
    axis_width: float = 1.2
    arc_width: float = 0.8
    guide_width: float = 1.0
    path_width: float = 1.5
    vector_width: float = 2.0
    hand_width: float = 2.2
    reference_width: float = 1.2
    guide_dash: str = "4,3"
    path_dash: str = "5,3"
    sweep_dash: str = "2,2"
    marker_radius: float = 4.0
    font_size: int = 12
    font_family: str = "sans-serif"
    arc_segments: int = 48
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    # time-series layout
    chart_width: int = 640
    chart_height: int = 320
    chart_margin: tuple = (56.0, 20.0, 24.0, 44.0)  # left, right, top, bottom


def _num(x):
    s = f"{x:.3f}"
    return "0.000" if s == "-0.000" else s


def project(point, style: RenderStyle = None):
    """Fixed isometric view: x toward lower-left, y toward lower-right, z up (px)."""
    style = style or RenderStyle()
    x, y, z = (float(c) for c in point)
    ox, oy = style.origin
    px = ox + style.scale * _COS30 * (y - x)
    py = oy + style.scale * (0.5 * (x + y) - z)
    return px, py


def hand_endpoint(anchor, angle, length, style: RenderStyle = None):
    """Screen endpoint of a billboarded clock hand; angle 0 is screen-up, CCW positive."""
    style = style or RenderStyle()
    r = length * style.hand_scale
    return anchor[0] - r * sin(angle), anchor[1] - r * cos(angle)


class _Doc:
    def __init__(self, width, height, style):
        self.style = style
        self.parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}" '
            f'font-family={quoteattr(style.font_family)} font-size="{style.font_size}">',
            f'<rect x="0" y="0" width="{width}" height="{height}" '
            f'fill="{style.palette["background"]}"/>',
        ]

    def add(self, text):
        self.parts.append(text)

    def open(self, gid):
        self.parts.append(f'<g id="{gid}">')

    def close(self):
        self.parts.append("</g>")

    def line(self, a, b, color, width, cls=None, dash=None):
        extra = f' class="{cls}"' if cls else ""
        if dash:
            extra += f' stroke-dasharray="{dash}"'
        self.add(f'<line{extra} x1="{_num(a[0])}" y1="{_num(a[1])}" x2="{_num(b[0])}" '
                 f'y2="{_num(b[1])}" stroke="{color}" stroke-width="{_num(width)}"/>')

    def polyline(self, pts, color, width, cls=None, dash=None):
        extra = f' class="{cls}"' if cls else ""
        if dash:
            extra += f' stroke-dasharray="{dash}"'
        coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
        self.add(f'<polyline{extra} points="{coords}" fill="none" stroke="{color}" '
                 f'stroke-width="{_num(width)}"/>')

    def text(self, pos, content, anchor="middle", color=None, cls=None):
        color = color or self.style.palette["text"]
        extra = f' class="{cls}"' if cls else ""
        self.add(f'<text{extra} x="{_num(pos[0])}" y="{_num(pos[1])}" text-anchor="{anchor}" '
                 f'fill="{color}">{escape(content)}</text>')

    def bytes(self):
        return ("\n".join(self.parts + ["</svg>"]) + "\n").encode("utf-8")


def _draw_wireframe(doc, scene, style):
    pal = style.palette
    doc.open("wireframe")
    origin = project((0, 0, 0), style)
    for axis in np.eye(3):
        doc.line(origin, project(axis, style), pal["axis"], style.axis_width, cls="axis")
    n = style.arc_segments
    ts = np.linspace(0.0, pi / 2, n + 1)
    for i, j in ((0, 1), (1, 2), (0, 2)):
        pts = []
        for t in ts:
            p = np.zeros(3)
            p[i], p[j] = cos(t), sin(t)
            pts.append(project(p, style))
        doc.polyline(pts, pal["axis"], style.arc_width, cls="arc")
    offsets = ((-6.0, 14.0, "end"), (6.0, 14.0, "start"), (0.0, -8.0, "middle"))
    for axis, label, (dx, dy, anchor) in zip(np.eye(3), scene.labels, offsets):
        px, py = project(axis, style)
        doc.text((px + dx, py + dy), label, anchor=anchor, cls="axis-label")
    doc.close()


def _draw_hand(doc, anchor, hand, color, style, cls):
    end = hand_endpoint(anchor, hand.angle, hand.length, style)
    r = 0.6 * hand.length * style.hand_scale
    angle = hand.angle % (2 * pi)
    if r > 0.5 and angle > 1e-9:
        start = (anchor[0], anchor[1] - r)
        stop = hand_endpoint(anchor, angle, 0.6 * hand.length, style)
        large = 1 if angle > pi else 0
        doc.add(f'<path class="{cls}-sweep" d="M {_num(start[0])} {_num(start[1])} '
                f'A {_num(r)} {_num(r)} 0 {large} 0 {_num(stop[0])} {_num(stop[1])}" '
                f'fill="none" stroke="{color}" stroke-width="{_num(style.arc_width)}" '
                f'stroke-dasharray="{style.sweep_dash}"/>')
    doc.line(anchor, end, color, style.hand_width, cls=cls)


def render_scene(scene, style: RenderStyle = None) -> bytes:
    """SVG document for one octant scene."""
    style = style or RenderStyle()
    pal = style.palette
    doc = _Doc(style.width, style.height, style)
    _draw_wireframe(doc, scene, style)
    origin = project((0, 0, 0), style)

    doc.open("guides")
    for a, b in scene.guides:
        doc.line(project(a, style), project(b, style), pal["vector"], style.guide_width,
                 cls="guide", dash=style.guide_dash)
    doc.close()

    doc.open("path")
    if len(scene.path) >= 2:
        doc.polyline([project(p, style) for p in scene.path], pal["path"], style.path_width,
                     cls="path", dash=style.path_dash)
    doc.close()

    doc.open("vector")
    if scene.tip is not None:
        tip = project(scene.tip, style)
        doc.line(origin, tip, pal["vector"], style.vector_width, cls="state-vector")
        doc.add(f'<circle class="state-marker" cx="{_num(tip[0])}" cy="{_num(tip[1])}" '
                f'r="{_num(style.marker_radius)}" fill="{pal["vector"]}"/>')
    doc.close()

    doc.open("overlays")
    for ov in scene.overlays:
        tip = project(ov.tip, style)
        doc.line(origin, tip, pal["overlay-vector"], style.vector_width, cls="overlay-vector")
        m = style.marker_radius * 1.4
        pts = [(tip[0], tip[1] - m), (tip[0] + m, tip[1]), (tip[0], tip[1] + m), (tip[0] - m, tip[1])]
        coords = " ".join(f"{_num(x)},{_num(y)}" for x, y in pts)
        doc.add(f'<polygon class="overlay-marker" points="{coords}" '
                f'fill="{pal["overlay-vector"]}"/>')
        for h in ov.hands:
            _draw_hand(doc, tip, h, pal.get(h.role, pal["overlay"]), style, "overlay-hand")
    doc.close()

    doc.open("hands")
    if scene.tip is not None and scene.hands:
        tip = project(scene.tip, style)
        ref_end = hand_endpoint(tip, 0.0, 1.0, style)
        doc.line(tip, ref_end, pal["reference"], style.reference_width, cls="reference")
        for h in scene.hands:
            _draw_hand(doc, tip, h, pal.get(h.role, pal["text"]), style, "hand")
    doc.close()

    if scene.time is not None:
        doc.text((style.width - 10.0, 20.0), f"t = {scene.time:.4g}", anchor="end",
                 cls="time-label")
    return doc.bytes()


def _nice_ticks(lo, hi, count=5):
    return np.linspace(lo, hi, count)


def render_timeseries(trajectory, style: RenderStyle = None, markers=()) -> bytes:
    """Population-versus-time chart with optional lettered dashed frame markers."""
    style = style or RenderStyle()
    pal = style.palette
    if len(trajectory) == 0:
        raise ValueError("trajectory is empty")
    w, h = style.chart_width, style.chart_height
    ml, mr, mt, mb = style.chart_margin
    t0, t1 = float(trajectory.times[0]), float(trajectory.times[-1])
    span = t1 - t0 if t1 > t0 else 1.0

    def xy(t, v):
        return (ml + (w - ml - mr) * (t - t0) / span, mt + (h - mt - mb) * (1.0 - v))

    doc = _Doc(w, h, style)
    doc.open("axes")
    doc.line(xy(t0, 0.0), xy(t0 + span, 0.0), pal["axis"], style.axis_width, cls="axis")
    doc.line(xy(t0, 0.0), xy(t0, 1.0), pal["axis"], style.axis_width, cls="axis")
    for v in (0.0, 0.5, 1.0):
        p = xy(t0, v)
        doc.line((p[0] - 4.0, p[1]), p, pal["axis"], style.axis_width)
        doc.text((p[0] - 7.0, p[1] + 4.0), f"{v:.1f}", anchor="end", cls="tick-label")
    for t in _nice_ticks(t0, t0 + span):
        p = xy(t, 0.0)
        doc.line(p, (p[0], p[1] + 4.0), pal["axis"], style.axis_width)
        doc.text((p[0], p[1] + 17.0), f"{t:.4g}", cls="tick-label")
    doc.text((ml + 0.5 * (w - ml - mr), h - 8.0), "t", cls="axis-label")
    doc.text((14.0, mt + 0.5 * (h - mt - mb)), "P", cls="axis-label")
    doc.close()

    doc.open("markers")
    for k, t in enumerate(markers):
        top, bottom = xy(t, 1.0), xy(t, 0.0)
        doc.line(top, bottom, pal["marker"], style.reference_width, cls="frame-marker",
                 dash=style.guide_dash)
        doc.text((top[0], top[1] - 6.0), _letter(k), cls="marker-label")
    doc.close()

    doc.open("populations")
    pops = trajectory.populations
    for level in range(3):
        pts = [xy(t, v) for t, v in zip(trajectory.times, pops[:, level])]
        doc.polyline(pts, pal[f"pop{level}"], style.path_width, cls=f"population pop{level}")
    doc.close()

    doc.open("legend")
    x0 = w - mr - 70.0
    for level in range(3):
        y = mt + 14.0 + 16.0 * level
        doc.line((x0, y - 4.0), (x0 + 18.0, y - 4.0), pal[f"pop{level}"], style.path_width)
        doc.text((x0 + 24.0, y), f"rho{level}{level}", anchor="start", cls="legend-label")
    doc.close()
    return doc.bytes()


def _letter(k):
    letters = ""
    k += 1
    while k:
        k, r = divmod(k - 1, 26)
        letters = chr(65 + r) + letters
    return letters
