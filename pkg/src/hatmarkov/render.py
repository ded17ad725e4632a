"""SVG output for configurations, the partition and fractal curves."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from . import fractal
from .hatgeom import TilePlacement, kite_vertices, outline, tile_kites

# Parallelogram k of the partition holds labels +-(1+2k) and +-(4+2k), drawn in
# complementary hues: red/green, yellow/purple, blue/orange.  Positive labels
# use the saturated shade, negative ones the pale shade.
DEFAULT_PALETTE = {
    0: "#ffffff",
    1: "#d62728", -1: "#f4a6a6",
    4: "#2ca02c", -4: "#a9dfa9",
    3: "#e6c619", -3: "#f7e9a0",
    6: "#8e44ad", -6: "#d7b8e6",
    5: "#1f5fbf", -5: "#a9c4ef",
    2: "#ff7f0e", -2: "#ffc997",
}


@dataclass
class RenderSpec:
    scale: float = 40.0                    # pixels per grid unit
    palette: dict = field(default_factory=lambda: dict(DEFAULT_PALETTE))
    stroke: float = 1.0
    grid: bool = True
    kites: bool = False
    anchors: bool = True
    labels: bool = False
    fractal_overlay: bool = False

    def __post_init__(self):
        keys = set(self.palette)
        if keys != set(range(-6, 7)):
            raise ValueError("palette needs exactly the labels -6..6")
        if len(set(self.palette.values())) != 13:
            raise ValueError("palette colours must be distinct")


class _Canvas:
    def __init__(self, spec: RenderSpec):
        self.spec = spec
        self.items: list[str] = []
        self.pts: list[complex] = []

    def xy(self, z) -> tuple[float, float]:
        z = complex(z)
        self.pts.append(z)
        return z.real * self.spec.scale, -z.imag * self.spec.scale

    def polygon(self, pts, fill="none", stroke="#000", width=None, extra=""):
        w = self.spec.stroke if width is None else width
        coords = " ".join("%.3f,%.3f" % self.xy(p) for p in pts)
        self.items.append(f'<polygon points="{coords}" fill="{fill}" stroke="{stroke}" '
                          f'stroke-width="{w:g}"{extra}/>')

    def polyline(self, pts, stroke="#000", width=None):
        w = self.spec.stroke if width is None else width
        coords = " ".join("%.3f,%.3f" % self.xy(p) for p in pts)
        self.items.append(f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="{w:g}"/>')

    def circle(self, z, r, fill="#000"):
        x, y = self.xy(z)
        self.items.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{r:g}" fill="{fill}"/>')

    def text(self, z, s, size):
        x, y = self.xy(z)
        self.items.append(f'<text x="{x:.3f}" y="{y:.3f}" font-size="{size:g}" '
                          f'text-anchor="middle" dominant-baseline="central">{s}</text>')

    def svg(self) -> str:
        if self.pts:
            xs = [p.real * self.spec.scale for p in self.pts]
            ys = [-p.imag * self.spec.scale for p in self.pts]
            pad = self.spec.scale * 0.5
            x0, y0 = min(xs) - pad, min(ys) - pad
            w, h = max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad
        else:
            x0 = y0 = 0.0
            w = h = self.spec.scale
        head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
                f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'viewBox="{x0:.3f} {y0:.3f} {w:.3f} {h:.3f}" width="{w:.0f}" height="{h:.0f}">')
        return "\n".join([head, *self.items, "</svg>"]) + "\n"


def _grid_point(p) -> complex:
    a, b = p
    return a + b * complex(0.5, 3 ** 0.5 / 2)


def render_configuration(labels: dict, spec: RenderSpec | None = None, window_points: Iterable | None = None) -> str:
    spec = spec or RenderSpec()
    cv = _Canvas(spec)
    pts = list(window_points) if window_points is not None else list(labels)
    if spec.grid:
        for p in sorted(pts, key=lambda p: (p[1], p[0])):
            cv.circle(_grid_point(p), spec.scale * 0.03, "#999")
    for p, lab in sorted(labels.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if lab == 0:
            continue
        t = TilePlacement(p, lab)
        if spec.kites:
            for q in sorted(tile_kites(t)):
                cv.polygon(kite_vertices(q), stroke="#bbb", width=spec.stroke * 0.5)
        cv.polygon(outline(t), fill=spec.palette[lab], extra=' fill-opacity="0.85"')
    for p, lab in sorted(labels.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        if spec.anchors and lab != 0:
            cv.circle(_grid_point(p), spec.scale * 0.06)
        if spec.labels:
            cv.text(_grid_point(p) + complex(0, 0.25), f"{lab:+d}" if lab else "0", spec.scale * 0.25)
    return cv.svg()


def render_partition(regions: list[tuple[int, list]], depth: int, spec: RenderSpec | None = None) -> str:
    """Regions as read back from a partition export, fractal edges expanded depth times."""
    from .partition import Segment

    spec = spec or RenderSpec(grid=False, anchors=False)
    cv = _Canvas(spec)
    for lab, loop in regions:
        verts = []
        for p in loop:
            if isinstance(p, Segment):
                verts.append(p.start)
            else:
                verts.extend(fractal.approximate(p, depth)[:-1])
        cv.polygon(verts, fill=spec.palette[lab], width=spec.stroke * 0.3)
        if spec.labels:
            c = sum(complex(v) for v in verts) / len(verts)
            cv.text(c, f"{lab:+d}" if lab else "0", spec.scale * 0.2)
    return cv.svg()


def render_fractal(kind: fractal.EdgeKind, depth: int, spec: RenderSpec | None = None) -> str:
    spec = spec or RenderSpec(scale=200.0, grid=False, anchors=False)
    cv = _Canvas(spec)
    e = fractal.canonical(kind)
    if spec.fractal_overlay:
        cv.polygon(fractal.tight_enclosure(e).vertices, stroke="#c00", width=spec.stroke * 0.5)
    colour = "#1f5fbf" if kind is fractal.BLUE else "#d62728"
    cv.polyline(fractal.approximate(e, depth), stroke=colour)
    return cv.svg()
