"""Certified overlay of shifted copies of the partition.

A *layer* is the partition translated by an offset o: its region with label
l is p_l + o.  For a cell C of the torus we compute a list of *boxes*, each a
tuple of label sets (one per layer), such that for every point y of C lying
in open regions of all layers, the tuple of its labels lies in some box.

The argument is face based.  Cut the open cell by the boundary curves of all
layers.  A face either is the whole open cell (then the labels of the cell
centre describe it) or it is adjacent, along an arc, to some curve g of some
layer a.  On that arc the layer-a label is the label on the face's side of
g.  In another layer b the label is either the matching side of g (if b has
the same curve) or the label of a b-region meeting int E(g) n int C, where
E(g) is the convex enclosure of g.  A region meeting a connected open set U
either contains U or has a boundary piece meeting U, which gives a finite,
sound candidate list.

Convex tests use filtered predicates: a float evaluation is accepted when it
clears the error bound by a wide margin, otherwise the test is redone with
exact arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import _kernels, fractal
from .exactmath import LAMBDA, QuarticNumber, cross, dot
from .fractal import DirectedEdge

U = LAMBDA.u
V = LAMBDA.v
_UC = complex(U)
_VC = complex(V)
_DET = _UC.real * _VC.imag - _UC.imag * _VC.real
FMARGIN = 1e-9
# a fractal piece is refined while its chord is longer than REFINE * cell diameter
REFINE2 = 1.0
# touching pieces of equal size are split down to this (squared) fraction of the cell
EQUAL_FLOOR2 = 0.02
GERM_FLOOR2 = 1e-4


def to_st(z: complex) -> tuple[float, float]:
    return ((z.real * _VC.imag - z.imag * _VC.real) / _DET,
            (_UC.real * z.imag - _UC.imag * z.real) / _DET)


def from_st(s, t) -> QuarticNumber:
    return U * s + V * t


class Curve:
    """A boundary piece with the labels on its left and right (w.r.t. a -> b)."""

    __slots__ = ("edge", "a", "b", "left", "right", "poly", "fpoly", "key", "chord2")

    def __init__(self, a, b, left, right, edge=None):
        self.edge = edge
        self.a, self.b = a, b
        self.left, self.right = left, right
        if edge is None:
            self.poly = (a, b)
            self.key = None
        else:
            self.poly = fractal.tight_enclosure(edge).vertices
            ia, ib = edge.intrinsic
            self.key = (edge.kind, ia, ib)
        self.fpoly = tuple(complex(p) for p in self.poly)
        d = self.fpoly[-1] - self.fpoly[0] if edge is None else complex(b) - complex(a)
        self.chord2 = abs(d) ** 2

    @property
    def straight(self) -> bool:
        return self.edge is None

    def sides_intrinsic(self):
        """(left, right) relative to the intrinsic orientation of a fractal piece."""
        if self.edge.reversed:
            return self.right, self.left
        return self.left, self.right

    def translated(self, t: QuarticNumber) -> Curve:
        if self.edge is None:
            return Curve(self.a + t, self.b + t, self.left, self.right)
        return Curve(self.a + t, self.b + t, self.left, self.right, self.edge.translated(t))

    def children(self) -> list[Curve]:
        return [Curve(e.start, e.end, self.left, self.right, e) for e in fractal.substitute(self.edge)]


# ------------------------------------------------------------ predicates

def _faxes(P, Q):
    for poly in (P, Q):
        n = len(poly)
        for i in range(n if n > 2 else 1):
            yield poly[i], poly[(i + 1) % n]


def _fsep(P, Q) -> int:
    """Float filter for weak separation: 1 surely separated, -1 surely not, 0 unsure."""
    scale = 1.0 + max(abs(z) for z in P + Q)
    tol = FMARGIN * scale * scale
    unsure = False
    for p0, p1 in _faxes(P, Q):
        d = p1 - p0
        fp = [d.real * (z - p0).imag - d.imag * (z - p0).real for z in P]
        fq = [d.real * (z - p0).imag - d.imag * (z - p0).real for z in Q]
        g1 = min(fq) - max(fp)
        g2 = min(fp) - max(fq)
        g = max(g1, g2)
        if g > tol:
            return 1
        if g > -tol:
            unsure = True
    return 0 if unsure else -1


def _exact_sep(P, Q) -> bool:
    for poly in (P, Q):
        n = len(poly)
        for i in range(n if n > 2 else 1):
            p0, d = poly[i], poly[(i + 1) % n] - poly[i]
            fp = [cross(d, z - p0) for z in P]
            fq = [cross(d, z - p0) for z in Q]
            if (min(fq) - max(fp)).sign() >= 0 or (min(fp) - max(fq)).sign() >= 0:
                return True
    return False


def weakly_separated(P, Q, fP=None, fQ=None) -> bool:
    """Is there a line with P on one closed side and Q on the other?

    For convex P, Q this says: the interiors are disjoint (or, if one of them
    is a segment, it misses the interior of the other).
    """
    f = _fsep(fP or tuple(complex(z) for z in P), fQ or tuple(complex(z) for z in Q))
    if f:
        return f > 0
    return _exact_sep(P, Q)


def _strictly_inside(poly, z: QuarticNumber) -> bool:
    n = len(poly)
    return all(cross(poly[(i + 1) % n] - poly[i], z - poly[i]).sign() > 0 for i in range(n))


def _fclip(P, Q):
    """Float Sutherland-Hodgman: convex P clipped by ccw convex Q."""
    out = list(P)
    n = len(Q)
    for i in range(n):
        a, b = Q[i], Q[(i + 1) % n]
        d = b - a
        inp = out
        out = []
        if not inp:
            break
        for j in range(len(inp)):
            p, q = inp[j], inp[(j + 1) % len(inp)]
            sp = d.real * (p - a).imag - d.imag * (p - a).real
            sq = d.real * (q - a).imag - d.imag * (q - a).real
            if sp >= 0:
                out.append(p)
            if (sp >= 0) != (sq >= 0) and sp != sq:
                out.append(p + (q - p) * (sp / (sp - sq)))
    return out


def _interior_point(g: Curve, cell: Cell):
    """An exact point of int E(g) n int C (or of the open segment g inside int C)."""
    if g.straight:
        a, b = g.fpoly
        pts = _fclip([a, b], cell.fpoly) if abs(b - a) > 0 else []
        if len(pts) < 2:
            return None
        # parameter along the segment, rounded to a rational
        d = b - a
        taus = [((p - a) * d.conjugate()).real / abs(d) ** 2 for p in pts]
        tau = Fraction((min(taus) + max(taus)) / 2).limit_denominator(1 << 40)
        if not (0 < tau < 1):
            return None
        z = g.a + (g.b - g.a) * tau
        return z if _strictly_inside(cell.poly, z) else None
    pts = _fclip(list(g.fpoly), cell.fpoly)
    if len(pts) < 3:
        return None
    c = sum(pts) / len(pts)
    s, t = to_st(c)
    z = from_st(Fraction(s).limit_denominator(1 << 50), Fraction(t).limit_denominator(1 << 50))
    if _strictly_inside(g.poly, z) and _strictly_inside(cell.poly, z):
        return z
    return None


def _collinear_same_in_cell(g: Curve, h: Curve, cell: Cell) -> bool:
    """Do two straight pieces (both meeting the open cell) cover the same part of it?"""
    d = g.b - g.a
    if cross(d, h.a - g.a).sign() or cross(d, h.b - g.a).sign():
        return False
    L = d.abs2()
    ends = sorted([(dot(h.a - g.a, d), h.a), (dot(h.b - g.a, d), h.b)], key=lambda e: float(e[0]))
    (lo, plo), (hi, phi_) = ends
    # the two intervals agree inside the cell iff at each end either the
    # endpoints coincide or the inner one of the two is not inside the cell
    if lo != 0:
        inner = plo if lo.sign() > 0 else g.a
        if _strictly_inside(cell.poly, inner):
            return False
    if hi != L:
        inner = phi_ if (hi - L).sign() < 0 else g.b
        if _strictly_inside(cell.poly, inner):
            return False
    return True


# ------------------------------------------------------------ layers

@dataclass
class Cell:
    s0: Fraction
    t0: Fraction
    h: Fraction
    level: int
    poly: tuple = field(init=False)
    fpoly: tuple = field(init=False)
    center: QuarticNumber = field(init=False)

    def __post_init__(self):
        s0, t0, h = self.s0, self.t0, self.h
        self.poly = (from_st(s0, t0), from_st(s0 + h, t0), from_st(s0 + h, t0 + h), from_st(s0, t0 + h))
        self.fpoly = tuple(complex(p) for p in self.poly)
        self.center = from_st(s0 + h / 2, t0 + h / 2)

    @property
    def diam2(self) -> float:
        h = float(self.h)
        return h * h * max(abs(_UC + _VC) ** 2, abs(_UC - _VC) ** 2)

    def split(self) -> list[Cell]:
        h = self.h / 2
        return [Cell(self.s0 + i * h, self.t0 + j * h, h, self.level + 1) for i in (0, 1) for j in (0, 1)]


def root_cell() -> Cell:
    return Cell(Fraction(0), Fraction(0), Fraction(1), 0)


@lru_cache(maxsize=None)
def base_curves() -> tuple[Curve, ...]:
    """Every boundary curve of P+ once modulo Lambda, with both side labels."""
    from .partition import Segment, default_partition

    P = default_partition("recycling")
    fr: dict = {}
    segs = []
    for lab, loop, _, _, _ in P._loops:
        for p in loop:
            if isinstance(p, Segment):
                segs.append((p.start, p.end, lab))
            else:
                ia, ib = p.intrinsic
                ent = fr.setdefault((p.kind, ia, ib), [None, None])
                # region lies on the left of the listing
                ent[1 if p.reversed else 0] = lab
    out = []
    for (kind, ia, ib), (left, right) in fr.items():
        if left is None or right is None:
            raise RuntimeError("fractal curve with a single adjacent region")
        out.append(Curve(ia, ib, left, right, DirectedEdge(kind, ia, ib, False)))
    out.extend(_split_segments(segs))
    return tuple(out)


def _split_segments(segs):
    """Cut straight boundary segments into pieces with constant labels on both sides."""
    shifts = [LAMBDA.point(m, n) for m in range(-2, 3) for n in range(-2, 3)]
    pieces = []
    seen = set()
    for a, b, lab in segs:
        d = b - a
        L2 = d.abs2()
        cuts = []
        for a2, b2, lab2 in segs:
            for t in shifts:
                p, q = a2 + t, b2 + t
                if cross(d, p - a).sign() or cross(d, q - a).sign():
                    continue
                tp, tq = dot(p - a, d), dot(q - a, d)
                if (tq - tp).sign() >= 0:
                    continue  # same direction: not the other side
                lo, hi = max(tq, type(tq)()), min(tp, L2)
                if (hi - lo).sign() > 0:
                    cuts.append((lo, hi, lab2))
        cuts.sort(key=lambda c: float(c[0]))
        pos = type(L2)()
        for lo, hi, lab2 in cuts:
            if lo != pos:
                raise RuntimeError("straight boundary has an unmatched stretch")
            pos = hi
        if pos != L2:
            raise RuntimeError("straight boundary has an unmatched stretch")
        for lo, hi, lab2 in cuts:
            pa_ = a + d * QuarticNumber.from_parts(lo / L2, type(lo)())
            pb_ = a + d * QuarticNumber.from_parts(hi / L2, type(hi)())
            key = _mod_key(pa_, pb_)
            if key in seen:
                continue
            seen.add(key)
            pieces.append(Curve(pa_, pb_, lab, lab2))
    return pieces


def _mod_key(p: QuarticNumber, q: QuarticNumber):
    from .exactmath import reduce_mod
    # unordered pair of endpoints, reduced so that the first lies in the cell
    a, b = sorted([(p, q), (q, p)], key=lambda e: (float(complex(e[0]).real), float(complex(e[0]).imag)))[0]
    r, (m, n) = reduce_mod(a)
    return (r, b - LAMBDA.point(m, n))


@dataclass
class Layer:
    """The partition translated by offset (labels of y are those of y - offset)."""

    offset: QuarticNumber
    curves: list = field(default_factory=list)
    _labels: dict = field(default_factory=dict, repr=False)

    def label(self, y: QuarticNumber):
        """Label of the layer at y, or None on a boundary."""
        if y in self._labels:
            return self._labels[y]
        from .partition import UNDECIDED, _classify_raw, classify_float, default_partition

        P = default_partition("recycling")
        z = y - self.offset
        lab = int(classify_float(np.array([complex(z)]), P)[0])
        if lab == _kernels.UNSURE:
            r = _classify_raw(z, P, 64)
            lab = None if r is UNDECIDED else r
        self._labels[y] = lab
        return lab


def make_layer(offset: QuarticNumber) -> Layer:
    lay = Layer(offset)
    for c in base_curves():
        st = [to_st(z + complex(offset)) for z in c.fpoly]
        smin, smax = min(s for s, _ in st), max(s for s, _ in st)
        tmin, tmax = min(t for _, t in st), max(t for _, t in st)
        for m in range(int(np.floor(smin)) - 1, int(np.ceil(smax)) + 1):
            for n in range(int(np.floor(tmin)) - 1, int(np.ceil(tmax)) + 1):
                if smin - m <= 1 + 1e-6 and smax - m >= -1e-6 and tmin - n <= 1 + 1e-6 and tmax - n >= -1e-6:
                    lay.curves.append(c.translated(offset - LAMBDA.point(m, n)))
    return lay


def cell_pieces(cell: Cell, parent_pieces: list[Curve]) -> list[Curve]:
    """Pieces meeting the open cell, fractal ones refined to the cell's scale."""
    out = []
    stack = list(parent_pieces)
    lim = REFINE2 * cell.diam2
    while stack:
        g = stack.pop()
        if weakly_separated(g.poly, cell.poly, g.fpoly, cell.fpoly):
            continue
        if g.edge is not None and g.chord2 > lim:
            stack.extend(g.children())
        else:
            out.append(g)
    return out


def _germ(e: fractal.DirectedEdge, p: QuarticNumber):
    """Chord direction of the Blue end germ of e at its endpoint p.

    Near either endpoint every curve coincides with a Blue curve near its
    intrinsic end, and that germ only depends on the chord direction.
    """
    for _ in range(3):
        a, b = e.intrinsic
        if e.kind is fractal.BLUE and b == p:
            return b - a
        kids = fractal.substitute(e)
        e = kids[0] if kids[0].start == p else kids[-1]
    raise ArithmeticError("no Blue end germ found")


# the germ is invariant under scaling by phi about the end point, and only by that
_PHI_POWERS = frozenset(fractal.PHI ** k for k in range(-12, 13))


def _same_germ(g: Curve, h: Curve) -> bool:
    for p in (g.a, g.b):
        if p == h.a or p == h.b:
            r = _germ(g.edge, p) / _germ(h.edge, p)
            if r in _PHI_POWERS:
                return True
    return False


def equalize_pieces(cell: Cell, pieces: list[list[Curve]]) -> list[list[Curve]]:
    """Split fractal pieces until nearby pieces of different layers have equal size.

    The same stretch of curve can show up in two layers at different depths
    of the substitution tree (a curve end is self-similar under scaling by
    1/phi, but children come in two sizes).  Matching by key only works when
    both layers cut it the same way.  A piece touching a piece of another
    layer that is no larger is split while it is not tiny compared to the
    cell, and below that only when the two share an end with the same germ
    (then the split chain ends in equal keys).
    """
    pieces = [list(p) for p in pieces]
    floor = EQUAL_FLOOR2 * cell.diam2
    gfloor = GERM_FLOOR2 * cell.diam2
    changed = True
    while changed:
        changed = False
        for a in range(len(pieces)):
            keep = []
            for h in pieces[a]:
                split = False
                if h.edge is not None:
                    for b in range(len(pieces)):
                        if b == a:
                            continue
                        for g in pieces[b]:
                            if g.edge is None or g.key == h.key or g.chord2 > h.chord2 * (1 + 1e-9):
                                continue
                            if h.chord2 <= floor and (h.chord2 <= gfloor or not _same_germ(g, h)):
                                continue
                            if not weakly_separated(g.poly, h.poly, g.fpoly, h.fpoly):
                                split = True
                                break
                        if split:
                            break
                if split:
                    changed = True
                    keep.extend(c for c in h.children()
                                if not weakly_separated(c.poly, cell.poly, c.fpoly, cell.fpoly))
                else:
                    keep.append(h)
            pieces[a] = keep
    return pieces


# ------------------------------------------------------------ boxes

def cell_boxes(cell: Cell, layers: list[Layer], pieces: list[list[Curve]], want=None):
    """Boxes covering the label tuples of the cell (see module docstring).

    If want (a label tuple) is given, only boxes that can contain it are
    built, and the search stops at the first such box.
    """
    m = len(layers)
    boxes = []
    cl = [layers[b].label(cell.center) for b in range(m)]
    if all(x is not None for x in cl):
        box = tuple(frozenset([x]) for x in cl)
        if want is None or all(want[b] in box[b] for b in range(m)):
            boxes.append(box)
            if want is not None:
                return boxes
    keyed = [dict() for _ in range(m)]
    for b in range(m):
        for g in pieces[b]:
            if g.key is not None:
                keyed[b][g.key] = g
    for a in range(m):
        for g in pieces[a]:
            for side_left in (True, False):
                lab = g.left if side_left else g.right
                if want is not None and want[a] != lab:
                    continue
                box = [None] * m
                box[a] = frozenset([lab])
                ok = True
                for b in range(m):
                    if b == a:
                        continue
                    opt = _other_layer_options(g, side_left, cell, layers[b], pieces[b], keyed[b], cl[b])
                    if want is not None and want[b] not in opt:
                        ok = False
                        break
                    box[b] = opt
                if ok:
                    boxes.append(tuple(box))
                    if want is not None:
                        return boxes
    return boxes


def _other_layer_options(g: Curve, side_left: bool, cell: Cell, layer: Layer, bp: list[Curve],
                         keyed: dict, center_label):
    if not bp:
        # no boundary of this layer meets the cell: one label on all of it
        return frozenset([center_label]) if center_label is not None else frozenset([layer.label(cell.center)])
    if g.key is not None and g.key in keyed:
        h = keyed[g.key]
        gl, gr = g.sides_intrinsic()
        hl, hr = h.sides_intrinsic()
        # which side of the intrinsic curve is our face on?
        face_left_intr = side_left != bool(g.edge.reversed)
        return frozenset([hl if face_left_intr else hr])
    if g.straight:
        for h in bp:
            if h.straight and _collinear_same_in_cell(g, h, cell):
                same_dir = dot(g.b - g.a, h.b - h.a).sign() > 0
                return frozenset([(h.left if side_left else h.right) if same_dir
                                  else (h.right if side_left else h.left)])
    opts = set()
    for h in bp:
        if not weakly_separated(h.poly, g.poly, h.fpoly, g.fpoly):
            opts.add(h.left)
            opts.add(h.right)
    p = _interior_point(g, cell)
    if p is None:
        # fall back to everything the layer shows in this cell
        for h in bp:
            opts.add(h.left)
            opts.add(h.right)
        if center_label is not None:
            opts.add(center_label)
    else:
        x = layer.label(p)
        if x is not None:
            opts.add(x)
    return frozenset(opts)


def box_patterns(box):
    """All label tuples in a box."""
    out = [()]
    for s in box:
        out = [t + (x,) for t in out for x in sorted(s)]
    return out
