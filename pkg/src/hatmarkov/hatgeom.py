"""Kites, hats and geometric validation on the triangular grid Z[xi].

A grid point is a pair (a, b) meaning a + b*xi.  Kite (v, d) is the third
of the triangle (v, v + xi^d, v + xi^(d+1)) at v: it has vertices v, the
two edge midpoints and the triangle's centre, and a 60 degree angle at v.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from . import _kernels
from .exactmath import RealQuartic, QuarticNumber, QPhi, cross, root_of_unity

GridPoint = tuple[int, int]
Kite = tuple[int, int, int]          # (a, b, d)

# unit steps xi^d in grid coordinates
STEPS: tuple[GridPoint, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

# the +1 and -1 hats anchored at 0; other labels are rotations of these
_BASE = {
    1: ((0, 0, 0), (0, 0, 1), (0, 0, 4), (0, 0, 5), (0, 1, 3), (0, 1, 4), (1, 0, 1), (1, 0, 2)),
    -1: ((0, 0, 0), (0, 0, 1), (0, 0, 4), (0, 0, 5), (1, -1, 1), (1, -1, 2), (1, 0, 3), (1, 0, 4)),
}

TILE_DIAMETER = 3


def rotate_point(p: GridPoint, k: int = 1) -> GridPoint:
    """Multiply a + b*xi by xi^k."""
    a, b = p
    for _ in range(k % 6):
        a, b = -b, a + b
    return a, b


def conj_point(p: GridPoint) -> GridPoint:
    """Complex conjugate: conj(xi) = 1 - xi."""
    a, b = p
    return a + b, -b


def rotate_kite(q: Kite, k: int = 1) -> Kite:
    a, b = rotate_point(q[:2], k)
    return a, b, (q[2] + k) % 6


def conj_kite(q: Kite) -> Kite:
    a, b = conj_point(q[:2])
    return a, b, (5 - q[2]) % 6


def grid_norm(p: GridPoint) -> int:
    """Number of unit steps from 0 to a + b*xi."""
    a, b = p
    return max(abs(a), abs(b), abs(a + b))


@dataclass(frozen=True)
class TilePlacement:
    anchor: GridPoint
    label: int

    def __post_init__(self):
        if self.label == 0 or abs(self.label) > 6:
            raise ValueError(f"tile label must be in +-1..+-6, got {self.label}")


def _canonical_kites(label: int) -> tuple[Kite, ...]:
    base = _BASE[1 if label > 0 else -1]
    return tuple(rotate_kite(q, abs(label) - 1) for q in base)


_KITES = {lab: _canonical_kites(lab) for lab in (*range(-6, 0), *range(1, 7))}


def tile_kites(t: TilePlacement) -> frozenset[Kite]:
    a0, b0 = t.anchor
    return frozenset((a + a0, b + b0, d) for a, b, d in _KITES[t.label])


def kite_table() -> np.ndarray:
    """(13, 8, 3) array of kite offsets indexed by label + 6 (row 6 unused)."""
    tab = np.zeros((13, 8, 3), np.int64)
    for lab, ks in _KITES.items():
        tab[lab + 6] = np.array(ks)
    return tab


def kite_vertices(q: Kite) -> tuple[QuarticNumber, ...]:
    """Exact corners of a kite, counterclockwise from v."""
    a, b, d = q
    v = QuarticNumber.grid(a, b)
    e0, e1 = root_of_unity(d), root_of_unity(d + 1)
    half, third = QuarticNumber(Fraction(1, 2)), QuarticNumber(Fraction(1, 3))
    return v, v + e0 * half, v + (e0 + e1) * third, v + e1 * half


def kite_area() -> RealQuartic:
    return _polygon_area(kite_vertices((0, 0, 0)))


def _polygon_area(pts) -> RealQuartic:
    tot = QPhi()
    for i in range(len(pts)):
        tot = tot + cross(pts[i], pts[(i + 1) % len(pts)])
    # cross() is the true cross product divided by sqrt(3)
    return RealQuartic.from_parts(QPhi(), tot * QPhi(Fraction(1, 2)))


def outline(t: TilePlacement) -> tuple[QuarticNumber, ...]:
    """Boundary of the union of the tile's kites, counterclockwise, collinear runs merged."""
    edges = Counter()
    for q in tile_kites(t):
        vs = kite_vertices(q)
        for i in range(4):
            edges[(vs[i], vs[(i + 1) % 4])] += 1
    # interior edges show up once in each direction
    boundary = {p: q for (p, q) in edges if (q, p) not in edges}
    if not boundary:
        raise ValueError("empty outline")
    start = min(boundary, key=lambda z: (complex(z).real, complex(z).imag))
    loop = [start]
    z = boundary[start]
    while z != start:
        loop.append(z)
        z = boundary[z]
        if len(loop) > len(boundary):
            raise RuntimeError("outline does not close")
    if len(loop) != len(boundary):
        raise RuntimeError("outline has several components")
    out = []
    n = len(loop)
    for i in range(n):
        prev, cur, nxt = loop[i - 1], loop[i], loop[(i + 1) % n]
        if cross(cur - prev, nxt - cur).sign() != 0:
            out.append(cur)
    return tuple(out)


def outline_area(t: TilePlacement) -> RealQuartic:
    return _polygon_area(outline(t))


def overlap_oracle(i: int, j: int, offset) -> bool:
    """Do the tiles (0, i) and (offset, j) share a kite?"""
    off = _as_grid(offset)
    if grid_norm(off) > 2:
        # kites of a tile sit within one step of its anchor
        return False
    return bool(tile_kites(TilePlacement((0, 0), i)) & tile_kites(TilePlacement(off, j)))


def overlap_pairs(offset) -> set[tuple[int, int]]:
    labs = [l for l in range(-6, 7) if l]
    return {(i, j) for i in labs for j in labs if overlap_oracle(i, j, offset)}


def _as_grid(p) -> GridPoint:
    if isinstance(p, QuarticNumber):
        a, b, c, d = p.coeffs
        if b or d or a.denominator != 1 or c.denominator != 1:
            raise ValueError("not a grid point")
        return int(a), int(c)
    a, b = p
    return int(a), int(b)


# ------------------------------------------------------------ windows

@dataclass(frozen=True)
class HexWindow:
    """Grid points within `radius` unit steps of `center`."""

    radius: int
    center: GridPoint = (0, 0)

    def contains(self, p: GridPoint) -> bool:
        return grid_norm((p[0] - self.center[0], p[1] - self.center[1])) <= self.radius

    def points(self) -> list[GridPoint]:
        ca, cb = self.center
        r = self.radius
        return [(ca + a, cb + b) for b in range(-r, r + 1) for a in range(-r, r + 1)
                if grid_norm((a, b)) <= r]

    def shrunk(self, margin: int) -> HexWindow:
        return HexWindow(self.radius - margin, self.center)


@dataclass
class ValidationReport:
    overlaps: list = field(default_factory=list)       # (kite, multiplicity)
    gaps: list = field(default_factory=list)           # uncovered interior kites
    histogram: dict = field(default_factory=dict)      # multiplicity -> #interior kites
    interior_kites: int = 0
    tiles: int = 0

    @property
    def ok(self) -> bool:
        return not self.overlaps and not self.gaps


def coverage(labels: Mapping[GridPoint, int], window: HexWindow, numba: bool | None = None) -> tuple:
    """Kite cover counts over the box around the window: (hist, lo_a, lo_b)."""
    pts = [(p, l) for p, l in labels.items() if l]
    r = window.radius + TILE_DIAMETER
    lo_a, lo_b = window.center[0] - r, window.center[1] - r
    n = 2 * r + 1
    aa = np.array([p[0] for p, _ in pts], np.int64)
    bb = np.array([p[1] for p, _ in pts], np.int64)
    ll = np.array([l for _, l in pts], np.int64)
    use = _kernels.NUMBA if numba is None else numba
    f = _kernels.kite_histogram if use else _kernels.kite_histogram_numpy
    return f(aa, bb, ll, kite_table(), lo_a, lo_b, n, n), lo_a, lo_b


def validate(labels: Mapping[GridPoint, int] | Iterable[TilePlacement], window: HexWindow,
             margin: int = TILE_DIAMETER) -> ValidationReport:
    """Overlaps anywhere, and gaps among kites at grid points at least `margin` inside the window.

    Only tiles anchored inside the window count; labels may be a map grid
    point -> label or an iterable of TilePlacements (repeats allowed).
    """
    if margin < TILE_DIAMETER:
        raise ValueError(f"margin must be at least the tile diameter {TILE_DIAMETER}")
    if isinstance(labels, Mapping):
        tiles = [TilePlacement(p, l) for p, l in labels.items() if l and window.contains(p)]
    else:
        tiles = [t for t in labels if window.contains(t.anchor)]
    counts: Counter = Counter()
    for t in tiles:
        counts.update(tile_kites(t))
    rep = ValidationReport(tiles=len(tiles))
    rep.overlaps = sorted((q, m) for q, m in counts.items() if m > 1)
    inner = window.shrunk(margin)
    hist: Counter = Counter()
    for p in inner.points():
        for d in range(6):
            q = (p[0], p[1], d)
            m = counts.get(q, 0)
            hist[m] += 1
            if m == 0:
                rep.gaps.append(q)
    rep.histogram = dict(sorted(hist.items()))
    rep.interior_kites = sum(hist.values())
    return rep


def anchored_fraction(labels: Mapping[GridPoint, int], window: HexWindow) -> float:
    pts = window.points()
    return sum(1 for p in pts if labels.get(p, 0) != 0) / len(pts)
