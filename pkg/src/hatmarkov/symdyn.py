"""Symbolic dynamics of the grid action on the torus.

The step k = (k1, k2) acts by x -> x + k1 + k2*xi.  A pattern assigns labels
to a finite support S of grid points; it is allowed when the translated
regions p_{w_k} - k (k in S) have a common point.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping

from . import _certify, _overlay
from .exactmath import PHI, QuarticNumber
from .hatgeom import GridPoint, HexWindow
from .partition import LABELS, default_partition, mirror_label_geometric, mirror_partition
from .tiler import Configuration, generate

MAX_SUPPORT = 4
DEFAULT_DEPTH = 24

POSITIVE_MARKERS = ((4, -5), (5, -2), (5, -3))
EXCLUDED = ((3, 6), (5, 2), (3, -1), (4, -2), (4, -6), (5, -1))
# mirror images of the markers (conjugation fixes the step 1); plain sign
# flips would not do, (-5, +2) already occurs in the positive component
NEGATIVE_MARKERS = tuple((mirror_label_geometric(a), mirror_label_geometric(b)) for a, b in POSITIVE_MARKERS)


@dataclass(frozen=True)
class ActionStep:
    k: GridPoint

    def __call__(self, x: QuarticNumber) -> QuarticNumber:
        return x + QuarticNumber.grid(*self.k)

    def __matmul__(self, other: ActionStep) -> ActionStep:
        return ActionStep((self.k[0] + other.k[0], self.k[1] + other.k[1]))


@dataclass(frozen=True)
class Pattern:
    support: tuple[GridPoint, ...]
    labels: tuple[int, ...]

    def __post_init__(self):
        if not self.support:
            raise ValueError("pattern support must be nonempty")
        if len(self.support) != len(self.labels):
            raise ValueError("one label per support point")

    @classmethod
    def from_mapping(cls, m: Mapping[GridPoint, int]) -> Pattern:
        pts = tuple(sorted(m, key=lambda p: (p[1], p[0])))
        return cls(pts, tuple(m[p] for p in pts))

    def as_dict(self) -> dict[GridPoint, int]:
        return dict(zip(self.support, self.labels))

    def translated(self, t: GridPoint) -> Pattern:
        return Pattern(tuple((a + t[0], b + t[1]) for a, b in self.support), self.labels)


@dataclass
class PatternReport:
    support: tuple[GridPoint, ...]
    allowed: set                  # label tuples, in support order
    unknown: set
    depth: int

    def patterns(self) -> list[Pattern]:
        return [Pattern(self.support, w) for w in sorted(self.allowed)]


def _support(support: Iterable[GridPoint]) -> tuple[GridPoint, ...]:
    pts = tuple(dict.fromkeys((int(a), int(b)) for a, b in support))
    if not pts:
        raise ValueError("support must be nonempty")
    if len(pts) > MAX_SUPPORT:
        raise ValueError(f"support of size {len(pts)} exceeds the budget of {MAX_SUPPORT}")
    return pts


def allowed_patterns(support: Iterable[GridPoint], depth: int = DEFAULT_DEPTH,
                     retry: bool = True) -> PatternReport:
    """Certified allowed label tuples on the support (P+).

    Unknown outcomes trigger one rerun at twice the depth; any that remain
    are reported in `unknown` and kept out of `allowed`.
    """
    pts = _support(support)
    offsets = [QuarticNumber.grid(a, b) for a, b in pts]
    res = _certify.pattern_table(offsets, depth=depth)
    if res.unknown() and retry:
        depth *= 2
        res = _certify.pattern_table(offsets, depth=depth)
    return PatternReport(pts, res.allowed(), res.unknown(), depth)


# ------------------------------------------------------------ statistics

@dataclass
class Frequencies:
    counts: dict[int, int]
    total: int

    @property
    def white(self) -> float:
        return self.counts.get(0, 0) / self.total

    @property
    def positive(self) -> float:
        return sum(c for l, c in self.counts.items() if l > 0) / self.total

    @property
    def negative(self) -> float:
        return sum(c for l, c in self.counts.items() if l < 0) / self.total

    @property
    def ratio(self) -> float:
        neg = self.negative
        return self.positive / neg if neg else float("inf")

    def frequency(self, label: int) -> float:
        return self.counts.get(label, 0) / self.total


def frequencies(cfg: Configuration) -> Frequencies:
    c = Counter(cfg.labels.values())
    return Frequencies({l: c.get(l, 0) for l in LABELS}, len(cfg.labels))


def empirical_frequencies(x: QuarticNumber, radius: int, mirrored: bool = False,
                          relabel: str = "negate") -> Frequencies:
    P = mirror_partition(default_partition(), relabel) if mirrored else default_partition()
    return frequencies(generate(x, HexWindow(radius), P=P))


PHI4 = complex(PHI ** 4).real


def component_test(cfg: Configuration) -> str:
    """'positive', 'negative' or 'inconclusive' from the offset-1 marker pairs."""
    pairs = cfg.pairs((1, 0))
    pos = any(m in pairs for m in POSITIVE_MARKERS)
    neg = any(m in pairs for m in NEGATIVE_MARKERS)
    if pos and not neg:
        return "positive"
    if neg and not pos:
        return "negative"
    return "inconclusive"


def excluded_found(cfg: Configuration) -> set:
    """Excluded offset-1 pairs present in the window (mirrored ones for mirrored windows)."""
    bad = set(EXCLUDED)
    if cfg.mirrored:
        bad = {(mirror_label_geometric(a), mirror_label_geometric(b)) for a, b in bad}
    return cfg.pairs((1, 0)) & bad


# ------------------------------------------------------------ cells

@dataclass
class CellApproximation:
    pattern: Pattern
    depth: int
    inner: list                   # quadtree cells inside the set
    outer: list                   # quadtree cells that may meet it (inner included)

    def area_bounds(self) -> tuple[float, float]:
        a = abs(_overlay._DET)
        return (sum(float(c.h) ** 2 for c in self.inner) * a,
                sum(float(c.h) ** 2 for c in self.outer) * a)

    def diameter(self) -> float:
        """Diameter of the outer cells, each moved to the lattice copy nearest the first one."""
        if not self.outer:
            return 0.0
        ref = complex(self.outer[0].center)
        pts = []
        for c in self.outer:
            z = complex(c.center)
            s, t = _overlay.to_st(z - ref)
            shift = round(s) * _overlay._UC + round(t) * _overlay._VC
            pts.extend(p - shift for p in c.fpoly)
        return max(abs(p - q) for p in pts for q in pts) if len(pts) < 4000 else _hull_diameter(pts)


def _hull_diameter(pts) -> float:
    import numpy as np

    z = np.array(pts)
    best = 0.0
    for k in range(0, 180, 2):
        d = np.exp(1j * np.pi * k / 180)
        proj = (z * d.conjugate()).real
        best = max(best, float(proj.max() - proj.min()))
    return best


def refine_cell(pattern: Pattern | Mapping[GridPoint, int], depth: int) -> CellApproximation:
    """Quadtree approximations of {x : label(x + k) = w_k for k in the support}."""
    pat = pattern if isinstance(pattern, Pattern) else Pattern.from_mapping(pattern)
    offsets = [QuarticNumber.grid(a, b) for a, b in pat.support]
    want = {pat.labels}
    # precondition: the pattern must be allowed
    res = _certify.pattern_table(offsets, depth=max(depth, DEFAULT_DEPTH), want=want)
    if not isinstance(res.outcomes[pat.labels], _certify.Nonempty):
        raise ValueError("pattern is not (certifiably) allowed")
    layers = [_overlay.make_layer(-o) for o in offsets]
    k = len(offsets)
    inner, outer = [], []
    stack = [(_overlay.root_cell(), [lay.curves for lay in layers])]
    while stack:
        cell, parent = stack.pop()
        pieces = [_overlay.cell_pieces(cell, parent[b]) for b in range(k)]
        boxes = _overlay.cell_boxes(cell, layers, pieces, pat.labels)
        if not boxes:
            continue
        if not any(pieces):
            # no boundary meets the cell: one label tuple on all of it
            inner.append(cell)
            outer.append(cell)
            continue
        if cell.level >= depth:
            outer.append(cell)
            continue
        stack.extend((c, pieces) for c in cell.split())
    return CellApproximation(pat, depth, inner, outer)


def square_support(m: int) -> list[GridPoint]:
    return [(a, b) for b in range(-m, m + 1) for a in range(-m, m + 1)]
