"""Certified pattern tables for translated copies of the partition.

A pattern (l_0, ..., l_{k-1}) on offsets (o_0, ..., o_{k-1}) is allowed if
some x has label(x + o_m) = l_m for every m.  Allowed patterns get an exact
witness x, found on dyadic grids and re-checked with exact arithmetic.  All
other patterns are ruled out by a quadtree over the torus: every cell gets a
list of label boxes from the face argument in _overlay, and cells that keep
showing an unwitnessed pattern are split, or discharged near a certified
self-similar point.  A pattern still possible in a cell at the depth limit
is Unknown.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels, _overlay, _selfsim
from .exactmath import QuarticNumber

SAMPLE_GRID = 64        # global dyadic grid is SAMPLE_GRID x SAMPLE_GRID
CELL_GRID = 4           # grid tried inside an undecided cell before it is split


@dataclass(frozen=True)
class Nonempty:
    witness: QuarticNumber        # label(witness + o_m) = l_m for every m


@dataclass(frozen=True)
class Empty:
    cells: int                    # quadtree cells examined
    fixed_points: tuple           # centres of the self-similar points used


@dataclass(frozen=True)
class Unknown:
    cells: tuple                  # approximate centres of the unresolved cells


@dataclass
class TableResult:
    offsets: tuple
    outcomes: dict                # pattern -> Nonempty | Empty | Unknown
    cells: int
    max_level: int
    fixed_points: tuple

    def allowed(self) -> set:
        return {p for p, r in self.outcomes.items() if isinstance(r, Nonempty)}

    def unknown(self) -> set:
        return {p for p, r in self.outcomes.items() if isinstance(r, Unknown)}


class _Witnesses:
    def __init__(self, offsets, P):
        from .partition import default_partition

        self.offsets = offsets
        self.foff = [complex(o) for o in offsets]
        self.P = P if P is not None else default_partition()
        self.found: dict = {}

    def sample(self, s0: Fraction, t0: Fraction, h: Fraction, n: int, want=None) -> None:
        """Try the centres of an n x n dyadic grid on the cell [s0, s0+h] x [t0, t0+h]."""
        from .partition import classify, classify_float

        k = np.arange(n)
        ss = float(s0) + (k + 0.5) * float(h) / n
        S, T = np.meshgrid(ss, float(t0) + (k + 0.5) * float(h) / n, indexing="ij")
        z = (S * _overlay._UC + T * _overlay._VC).ravel()
        labs = np.stack([classify_float(z + o, self.P) for o in self.foff], axis=1)
        sure = np.all(labs != _kernels.UNSURE, axis=1)
        for idx in np.nonzero(sure)[0]:
            pat = tuple(int(x) for x in labs[idx])
            if pat in self.found or (want is not None and pat not in want):
                continue
            i, j = divmod(int(idx), n)
            x = _overlay.from_st(s0 + (2 * i + 1) * h / (2 * n), t0 + (2 * j + 1) * h / (2 * n))
            # exact confirmation; the float kernel already cleared its margin
            if all(classify(x + o, self.P) == l for o, l in zip(self.offsets, pat)):
                self.found[pat] = x


def pattern_table(offsets, depth: int = 24, want=None, P=None, fixed_points: bool = True) -> TableResult:
    """Certify which label patterns occur on the given offsets.

    want restricts the work to a set of patterns; otherwise every pattern
    in LABELS^k gets an outcome.  depth is the deepest quadtree level.
    """
    from .partition import LABELS

    offsets = tuple(offsets)
    k = len(offsets)
    if k == 0:
        raise ValueError("need at least one offset")
    if want is not None:
        want = {tuple(w) for w in want}
    wit = _Witnesses(offsets, P)
    wit.sample(Fraction(0), Fraction(0), Fraction(1), SAMPLE_GRID, want)
    layers = [_overlay.make_layer(-o) for o in offsets]
    cache = _selfsim.PointCache(layers) if fixed_points and k > 1 else None

    def done() -> bool:
        return want is not None and want <= wit.found.keys()

    unresolved: dict = {}
    ncells = 0
    maxl = 0
    stack = [(_overlay.root_cell(), [lay.curves for lay in layers])]
    while stack and not done():
        cell, parent = stack.pop()
        if cache is not None and cell.level >= _selfsim.MIN_LEVEL and cache.covers(cell):
            continue
        pieces = [_overlay.cell_pieces(cell, parent[b]) for b in range(k)]
        pieces = _overlay.equalize_pieces(cell, pieces)
        ncells += 1
        maxl = max(maxl, cell.level)
        cand = _cell_patterns(cell, layers, pieces, want)
        bad = cand - wit.found.keys()
        if not bad:
            continue
        wit.sample(cell.s0, cell.t0, cell.h, CELL_GRID, bad)
        bad -= wit.found.keys()
        if not bad:
            continue
        if cell.level >= depth:
            for p in bad:
                unresolved.setdefault(p, []).append(complex(cell.center))
            continue
        if cache is not None and cell.level > _selfsim.MIN_LEVEL and cache.attempt(cell) and cache.covers(cell):
            continue
        stack.extend((c, pieces) for c in cell.split())

    fps = tuple(p.center for p in cache.points) if cache is not None else ()
    universe = want if want is not None else set(_product(LABELS, k))
    out = {}
    for p in sorted(universe):
        if p in wit.found:
            out[p] = Nonempty(wit.found[p])
        elif p in unresolved:
            out[p] = Unknown(tuple(unresolved[p]))
        else:
            out[p] = Empty(ncells, fps)
    return TableResult(offsets, out, ncells, maxl, fps)


def _cell_patterns(cell, layers, pieces, want) -> set:
    """Patterns (restricted to want) that the cell's boxes allow."""
    if want is None:
        cand = set()
        for box in _overlay.cell_boxes(cell, layers, pieces):
            cand.update(_overlay.box_patterns(box))
        return cand
    # with many layers the boxes are too big to enumerate
    single = next(iter(want)) if len(want) == 1 else None
    boxes = _overlay.cell_boxes(cell, layers, pieces, single)
    return {w for w in want if any(all(w[b] in box[b] for b in range(len(w))) for box in boxes)}


def _product(labels, k):
    out = [()]
    for _ in range(k):
        out = [t + (x,) for t in out for x in labels]
    return out
