"""The 13-region partition of the torus C/Lambda.

Layout (in the gauge where the anchor of the reference tile sits at 0):
two white equilateral triangles of side phi and three 60-degree
parallelograms of sides phi^2 and 1.  The parallelograms are images of one
canonical parallelogram (0, phi^2, phi^2 + xi, xi) which is cut into four
regions by three fractal curves

    C1  Blue, intrinsic xi -> 0            (-4 | +1)
    C2  Red,  intrinsic xi -> phi^2        (+1 | +4)
    C3  Blue, intrinsic phi^2 -> phi^2+xi  (+4 | -1)

The second and third parallelogram are the first one turned by 120 and 240
degrees about the centre of the upper white triangle; labels move by +2 per
turn.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

import numpy as np

from . import _kernels, fractal
from .exactmath import (LAMBDA, ONE, PHI, PHI2, XI, ZERO, Lattice, QPhi, QuarticNumber,
                        RealQuartic, cross, format_quartic, reduce_mod, root_of_unity)
from .fractal import BLUE, RED, DirectedEdge

LABELS = tuple(range(-6, 7))
PRESENTATIONS = ("recycling", "radial", "parallelogram")


class BoundaryUndecided:
    """Returned by classify for points on (or too close to resolve from) a boundary."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "BoundaryUndecided"

    def __bool__(self):
        return False


UNDECIDED = BoundaryUndecided()


@dataclass(frozen=True)
class Segment:
    start: QuarticNumber
    end: QuarticNumber

    def translated(self, t: QuarticNumber) -> Segment:
        return Segment(self.start + t, self.end + t)

    def transformed(self, scale: QuarticNumber, shift: QuarticNumber) -> Segment:
        return Segment(scale * self.start + shift, scale * self.end + shift)


Piece = Union[Segment, DirectedEdge]


@dataclass(frozen=True)
class Region:
    """A labelled region; white has two loops, every other label one."""

    label: int
    loops: tuple[tuple[Piece, ...], ...]
    # convex hull of each loop (the triangle or parallelogram it lives in)
    hulls: tuple[tuple[QuarticNumber, ...], ...]


# ---------------------------------------------------------------- geometry

V = LAMBDA.v
U = LAMBDA.u
XIBAR = ONE - XI
THIRD = QuarticNumber(Fraction(1, 3))

# centre of the upper white triangle, fixed by the 120-degree turn R
C_UP = XI + PHI * (ONE + XI) * THIRD
R_SHIFT = ONE + XI + PHI          # R(z) = xi^2 z + R_SHIFT

WHITE_UP = (XI, XI + PHI, XI + PHI * XI)
WHITE_DOWN = (V + ONE, V + ONE + PHI - PHI * XI, V + ONE + PHI)

CANON_PARA = (ZERO, PHI2, PHI2 + XI, XI)
C1 = DirectedEdge(BLUE, XI, ZERO)
C2 = DirectedEdge(RED, XI, PHI2)
C3 = DirectedEdge(BLUE, PHI2, PHI2 + XI)

# counterclockwise loops in the canonical frame
CANON_LOOPS = {
    -4: (C1.flipped(), Segment(XI, ZERO)),
    1: (Segment(ZERO, PHI2), C2.flipped(), C1),
    4: (C2, C3, Segment(PHI2 + XI, XI)),
    -1: (Segment(PHI2, PHI2 + XI), C3.flipped()),
}


def shift_label(label: int, k: int) -> int:
    """Label of the canonical region `label` inside parallelogram k."""
    if label == 0:
        return 0
    m = (abs(label) - 1 + 2 * k) % 6 + 1
    return m if label > 0 else -m


def parallelogram_frame(k: int) -> tuple[QuarticNumber, QuarticNumber]:
    """(scale, shift) of the map canonical frame -> parallelogram k."""
    scale = root_of_unity(2 * k - 1)
    # f0(w) = v + conj(xi) w, then k turns of R about C_UP
    shift = root_of_unity(2 * k) * (V - C_UP) + C_UP
    return scale, shift


def _transform_piece(p: Piece, scale: QuarticNumber, shift: QuarticNumber) -> Piece:
    return p.transformed(scale, shift)


def _base_pieces():
    """The five pieces of the recycling layout: (kind, hull, loops by label)."""
    pieces = [("white", WHITE_UP, {0: (Segment(WHITE_UP[0], WHITE_UP[1]),
                                       Segment(WHITE_UP[1], WHITE_UP[2]),
                                       Segment(WHITE_UP[2], WHITE_UP[0]))}),
              ("white", WHITE_DOWN, {0: (Segment(WHITE_DOWN[0], WHITE_DOWN[1]),
                                         Segment(WHITE_DOWN[1], WHITE_DOWN[2]),
                                         Segment(WHITE_DOWN[2], WHITE_DOWN[0]))})]
    for k in range(3):
        scale, shift = parallelogram_frame(k)
        hull = tuple(scale * p + shift for p in CANON_PARA)
        loops = {shift_label(lab, k): tuple(_transform_piece(p, scale, shift) for p in loop)
                 for lab, loop in CANON_LOOPS.items()}
        pieces.append((k, hull, loops))
    return pieces


def _centroid(pts) -> complex:
    return sum(complex(p) for p in pts) / len(pts)


def _nearest_translate(c: complex, target: complex, L: Lattice) -> QuarticNumber:
    best = None
    for m in range(-4, 5):
        for n in range(-4, 5):
            t = complex(L.u) * m + complex(L.v) * n
            d = abs(c + t - target)
            if best is None or d < best[0] - 1e-12:
                best = (d, m, n)
    return L.point(best[1], best[2])


def _presentation_translates(presentation: str, pieces) -> list[QuarticNumber]:
    if presentation == "recycling":
        return [ZERO] * len(pieces)
    if presentation == "radial":
        # every piece as close as possible to the origin
        return [_nearest_translate(_centroid(h), 0j, LAMBDA) for _, h, _ in pieces]
    if presentation == "parallelogram":
        # pieces are re-cut along the cell (0, u, u+v, v); we keep the piece
        # whose centroid falls in the cell and let the cell clip the rest
        out = []
        for _, h, _ in pieces:
            c = _centroid(h)
            t = _nearest_translate(c, (complex(U) + complex(V)) / 2, LAMBDA)
            out.append(t)
        return out
    raise ValueError(f"unknown presentation {presentation!r}")


def _cell_candidates(hull, L: Lattice, margin: float = 1e-6) -> tuple[QuarticNumber, ...]:
    """Lattice vectors t such that hull - t can meet the closed cell {s u + t v : 0<=s,t<=1}."""
    u, v = complex(L.u), complex(L.v)
    det = u.real * v.imag - u.imag * v.real
    pts = [complex(p) for p in hull]
    st = [((p.real * v.imag - p.imag * v.real) / det, (u.real * p.imag - u.imag * p.real) / det)
          for p in pts]
    smin, smax = min(s for s, _ in st), max(s for s, _ in st)
    tmin, tmax = min(t for _, t in st), max(t for _, t in st)
    out = []
    # hull - (m u + n v) meets the unit cell iff the coordinate ranges overlap
    for m in range(int(smin) - 2, int(smax) + 3):
        for n in range(int(tmin) - 2, int(tmax) + 3):
            if smin - m <= 1 + margin and smax - m >= -margin and \
                    tmin - n <= 1 + margin and tmax - n >= -margin:
                out.append(L.point(m, n))
    return tuple(out)


@dataclass
class Partition:
    lattice: Lattice
    regions: dict
    presentation: str
    mirrored: bool = False
    relabel: str = "negate"
    # (label, loop, hull, candidate translates, piece index) per loop
    _loops: list = field(default_factory=list, repr=False)
    pieces: list = field(default_factory=list, repr=False)

    def label_map(self, label: int) -> int:
        """Label in this partition of a label of the underlying P+ geometry."""
        if not self.mirrored or label == 0:
            return label
        if self.relabel == "negate":
            return -label
        return mirror_label_geometric(label)

    def region(self, label: int) -> Region:
        return self.regions[label]


def mirror_label_geometric(label: int) -> int:
    """Label of the mirror image (complex conjugate) of a tile: +k -> -s(k), -k -> +s(k), s(k) = 2 - k mod 6."""
    if label == 0:
        return 0
    k = abs(label)
    s = (2 - k) % 6 or 6
    return -s if label > 0 else s


def build_partition(presentation: str = "recycling") -> Partition:
    """P+ with exact vertices, in one of the three presentations."""
    if presentation not in PRESENTATIONS:
        raise ValueError(f"unknown presentation {presentation!r}")
    base = _base_pieces()
    trans = _presentation_translates(presentation, base)
    loops_by_label: dict[int, list] = {lab: [] for lab in LABELS}
    hulls_by_label: dict[int, list] = {lab: [] for lab in LABELS}
    part = Partition(LAMBDA, {}, presentation)
    for idx, ((kind, hull, loops), t) in enumerate(zip(base, trans)):
        hull_t = tuple(p + t for p in hull)
        part.pieces.append((kind, hull_t, t))
        cands = _cell_candidates(hull_t, LAMBDA)
        for lab, loop in loops.items():
            loop_t = tuple(p.translated(t) for p in loop)
            loops_by_label[lab].append(loop_t)
            hulls_by_label[lab].append(hull_t)
            part._loops.append((lab, loop_t, hull_t, cands, idx))
    for lab in LABELS:
        part.regions[lab] = Region(lab, tuple(loops_by_label[lab]), tuple(hulls_by_label[lab]))
    _check_partition(part)
    return part


def mirror_partition(P: Partition, relabel: str = "negate") -> Partition:
    """Mirror image of P: conjugate coordinates and relabel.

    relabel="negate" swaps the signs of the labels.  relabel="geometric"
    uses the label of the conjugated tile shape instead.
    """
    if relabel not in ("negate", "geometric"):
        raise ValueError("relabel must be 'negate' or 'geometric'")
    if P.mirrored:
        # double mirror: back to the unmirrored geometry
        return build_partition(P.presentation)
    return Partition(P.lattice.conj(), P.regions, P.presentation, True, relabel,
                     P._loops, P.pieces)


def _check_partition(P: Partition) -> None:
    for lab, loop, _, _, _ in P._loops:
        for a, b in zip(loop, loop[1:] + loop[:1]):
            if a.end != b.start:
                raise ValueError(f"boundary of region {lab} does not close")
    total = sum((piece_area(h) for _, h, _ in P.pieces), RealQuartic())
    if total != P.lattice.covolume():
        raise ValueError("pieces do not fill the fundamental domain")
    white = piece_area(P.pieces[0][1]) + piece_area(P.pieces[1][1])
    if white * 4 != total:
        raise ValueError("white triangles are not a quarter of the area")


def polygon_area(pts) -> RealQuartic:
    tot = QPhi()
    for i in range(len(pts)):
        tot = tot + cross(pts[i], pts[(i + 1) % len(pts)])
    return RealQuartic.from_parts(QPhi(), tot * QPhi(1, 0, 2))


piece_area = polygon_area


def white_area(P: Partition) -> RealQuartic:
    return piece_area(P.pieces[0][1]) + piece_area(P.pieces[1][1])


# ---------------------------------------------------------- classification

class _Undecided(Exception):
    pass


def _above(a: QuarticNumber, z: QuarticNumber) -> int:
    """Sign of Im(a) - Im(z)."""
    return (a.imag_over_sqrt3() - z.imag_over_sqrt3()).sign()


def _crossing(a: QuarticNumber, b: QuarticNumber, z: QuarticNumber) -> int:
    """Signed crossing of edge a->b with the ray from z towards +x.

    Ties are broken as if z were moved by an infinitesimal amount to the
    right and a second-order amount up, so every answer is exact and the
    contributions of an edge listed both ways cancel.
    """
    ya, yb = _above(a, z), _above(b, z)
    if ya <= 0:
        if yb > 0 and cross(b - a, z - a).sign() > 0:
            return 1
    else:
        if yb <= 0 and cross(b - a, z - a).sign() < 0:
            return -1
    return 0


def _on_segment(a: QuarticNumber, b: QuarticNumber, z: QuarticNumber) -> bool:
    if cross(b - a, z - a).sign() != 0:
        return False
    # collinear: inside iff (z - a).(z - b) <= 0
    from .exactmath import dot
    return dot(z - a, z - b).sign() <= 0


def _correction(e: DirectedEdge, z: QuarticNumber, depth: int) -> int:
    """Winding number about z of (curve of e listed start->end) + (chord end->start)."""
    if not fractal.enclosure(e).contains(z):
        return 0
    if depth <= 0:
        raise _Undecided
    kids = fractal.substitute(e)
    w = _crossing(e.end, e.start, z)
    for c in kids:
        w += _crossing(c.start, c.end, z) + _correction(c, z, depth - 1)
    return w


def loop_winding(loop: Iterable[Piece], z: QuarticNumber, max_depth: int) -> int:
    w = 0
    for p in loop:
        if isinstance(p, Segment):
            if _on_segment(p.start, p.end, z):
                raise _Undecided
            w += _crossing(p.start, p.end, z)
        else:
            w += _crossing(p.start, p.end, z) + _correction(p, z, max_depth)
    return w


def _float_hull_test(hull_c, z: complex, margin: float = 1e-9) -> bool:
    """Cheap rejection: False only if z is clearly outside the convex hull."""
    n = len(hull_c)
    for i in range(n):
        a, b = hull_c[i], hull_c[(i + 1) % n]
        e = b - a
        if (e.real * (z - a).imag - e.imag * (z - a).real) < -margin * abs(e):
            return False
    return True


def classify(x: QuarticNumber, P: Partition, max_depth: int = 64, order=None):
    """Label of the region of P containing x mod its lattice, or UNDECIDED.

    order optionally permutes the loop list (used to test that the answer
    does not depend on the order in which regions are tried).
    """
    if max_depth < 1:
        raise ValueError("max_depth must be at least 1")
    r = _classify_raw(x.conj() if P.mirrored else x, P, max_depth, order)
    return r if r is UNDECIDED else P.label_map(r)


def _classify_raw(x: QuarticNumber, P: Partition, max_depth: int, order=None):
    """Label in the unmirrored geometry of a point given in that geometry."""
    z0, _ = reduce_mod(x, LAMBDA)
    zc = complex(z0)
    loops = P._loops if order is None else [P._loops[i] for i in order]
    found = set()
    try:
        for lab, loop, hull, cands, _ in loops:
            hc = [complex(h) for h in hull]
            for t in cands:
                zt = zc + complex(t)
                if not _float_hull_test(hc, zt):
                    continue
                w = loop_winding(loop, z0 + t, max_depth)
                if w:
                    if w != 1:
                        raise RuntimeError(f"winding {w} for region {lab}")
                    found.add(lab)
    except _Undecided:
        return UNDECIDED
    if len(found) != 1:
        if not found:
            return UNDECIDED
        raise RuntimeError(f"point {x!r} lies in several regions: {sorted(found)}")
    return found.pop()


# ---------------------------------------------------------------- areas

def _expanded_loop(loop, depth):
    """Vertices of the loop with every curve expanded depth times, and the leaf edges."""
    verts, leaves = [], []
    for p in loop:
        if isinstance(p, Segment):
            verts.append(p.start)
        else:
            edges = fractal.expand(p, depth)
            verts.extend(e.start for e in edges)
            leaves.extend(edges)
    return verts, leaves


def region_area(label: int, depth: int, P: Partition | None = None) -> tuple[RealQuartic, RealQuartic]:
    """Certified (inner, outer) bounds on the area of region `label`."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    P = P or default_partition()
    lab = label
    if P.mirrored:
        lab = next(l for l in LABELS if P.label_map(l) == label)
    inner = outer = RealQuartic()
    for loop in P.regions[lab].loops:
        verts, leaves = _expanded_loop(loop, depth)
        a = polygon_area(verts)
        slack = sum((fractal.enclosure(e).area() for e in leaves), RealQuartic())
        inner = inner + a - slack
        outer = outer + a + slack
    return inner, outer


# ------------------------------------------------------------------ export

SCHEMA_VERSION = 1


def export_partition(P: Partition) -> str:
    """Structured text listing every region with exact coordinates."""
    lines = [f"hatmarkov-partition {SCHEMA_VERSION}",
             f"presentation {P.presentation}",
             f"mirrored {int(P.mirrored)}",
             f"lattice {format_quartic(P.lattice.u)} ; {format_quartic(P.lattice.v)}"]
    conj = (lambda z: z.conj()) if P.mirrored else (lambda z: z)
    for lab in LABELS:
        reg = P.regions[lab]
        out_lab = P.label_map(lab)
        for loop in reg.loops:
            lines.append(f"region {out_lab}")
            for p in loop:
                if isinstance(p, Segment):
                    lines.append(f"  segment {format_quartic(conj(p.start))} ; {format_quartic(conj(p.end))}")
                else:
                    lines.append(f"  fractal {p.kind.value} {int(p.reversed)} "
                                 f"{format_quartic(conj(p.start))} ; {format_quartic(conj(p.end))}")
            lines.append("end")
    return "\n".join(lines) + "\n"


_DEFAULT: dict = {}


def default_partition(presentation: str = "recycling") -> Partition:
    if presentation not in _DEFAULT:
        _DEFAULT[presentation] = build_partition(presentation)
    return _DEFAULT[presentation]


def random_point(rng: random.Random, den: int = 10 ** 6) -> QuarticNumber:
    """A random point with rational coordinates in the cell of Lambda."""
    s = Fraction(rng.randrange(den), den)
    t = Fraction(rng.randrange(den), den)
    return U * s + V * t


# ------------------------------------------------------ batch classification

def _float_tables(P: Partition) -> dict:
    cache = P.__dict__.setdefault("_tables", {})
    if cache:
        return cache
    kinds = (BLUE, RED)
    npath = np.zeros(2, np.int64)
    path_re = np.zeros((2, 6))
    path_im = np.zeros((2, 6))
    kid_kind = np.zeros((2, 5), np.int64)
    kid_rev = np.zeros((2, 5), np.int64)
    nenc = np.zeros(2, np.int64)
    enc_re = np.zeros((2, 4))
    enc_im = np.zeros((2, 4))
    for ki, kind in enumerate(kinds):
        rule, enc = fractal._relative(kind)
        npath[ki] = len(rule)
        pts = [complex(p) for _, p, _, _ in rule] + [1.0]
        for i, c in enumerate(pts):
            path_re[ki, i], path_im[ki, i] = c.real, c.imag
        for i, (k, _, _, rev) in enumerate(rule):
            kid_kind[ki, i] = kinds.index(k)
            kid_rev[ki, i] = int(rev)
        nenc[ki] = len(enc)
        for i, c in enumerate(enc):
            enc_re[ki, i], enc_im[ki, i] = complex(c).real, complex(c).imag
    cpts = np.array([[complex(p).real, complex(p).imag] for p in CANON_PARA])

    inst_v, inst_n, inst_kind, inst_tr = [], [], [], []
    for idx, (kind, hull, tau) in enumerate(P.pieces):
        cands = P._loops[[l[4] for l in P._loops].index(idx)][3]
        for t in cands:
            hv = [complex(h - t) for h in hull]
            inst_v.append(hv + [0j] * (4 - len(hv)))
            inst_n.append(len(hv))
            if kind == "white":
                inst_kind.append(-1)
                inst_tr.append((0.0, 0.0, 0.0, 0.0))
            else:
                scale, shift = parallelogram_frame(kind)
                s = complex(scale.conj())
                c = complex(shift + tau - t)
                inst_kind.append(kind)
                inst_tr.append((s.real, s.imag, c.real, c.imag))
    iv = np.array(inst_v)
    cache.update(
        inst_vx=np.ascontiguousarray(iv.real), inst_vy=np.ascontiguousarray(iv.imag),
        inst_n=np.array(inst_n, np.int64), inst_kind=np.array(inst_kind, np.int64),
        inst_tr=np.array(inst_tr), cpts=cpts, npath=npath, path_re=path_re, path_im=path_im,
        kid_kind=kid_kind, kid_rev=kid_rev, nenc=nenc, enc_re=enc_re, enc_im=enc_im)
    return cache


def _reduce_float(z: np.ndarray) -> np.ndarray:
    u, v = complex(U), complex(V)
    det = u.real * v.imag - u.imag * v.real
    s = (z.real * v.imag - z.imag * v.real) / det
    t = (u.real * z.imag - u.imag * z.real) / det
    return z - np.floor(s) * u - np.floor(t) * v


def classify_float(z: np.ndarray, P: Partition, order=None) -> np.ndarray:
    """Float labels for complex points (P+ geometry), UNSURE where not certain."""
    tb = _float_tables(P)
    z0 = _reduce_float(np.asarray(z, complex))
    sel = np.arange(len(tb["inst_n"])) if order is None else np.asarray(order)
    return _kernels.classify_points(
        np.ascontiguousarray(z0.real), np.ascontiguousarray(z0.imag),
        tb["inst_vx"][sel], tb["inst_vy"][sel], tb["inst_n"][sel], tb["inst_kind"][sel],
        tb["inst_tr"][sel], tb["cpts"], tb["npath"], tb["path_re"], tb["path_im"],
        tb["kid_kind"], tb["kid_rev"], tb["nenc"], tb["enc_re"], tb["enc_im"],
        _kernels.MAX_FLOAT_DEPTH)


def classify_grid(x: QuarticNumber, a, b, P: Partition, max_depth: int = 64):
    """Labels of x + a + b*xi for integer arrays a, b.

    Returns (labels, undecided_mask).  Points the float kernel cannot settle
    are redone exactly; undecided ones get label 0 and are flagged.
    """
    a = np.asarray(a, np.int64)
    b = np.asarray(b, np.int64)
    xs = x.conj() if P.mirrored else x
    xc = complex(xs)
    xi_c = complex(XI.conj() if P.mirrored else XI)
    z = xc + a + b * xi_c
    labs = classify_float(z, P)
    bad = np.nonzero(labs == _kernels.UNSURE)[0]
    undecided = np.zeros(len(a), bool)
    for i in bad:
        g = QuarticNumber.grid(int(a[i]), int(b[i]))
        r = _classify_raw(xs + (g.conj() if P.mirrored else g), P, max_depth)
        if r is UNDECIDED:
            undecided[i] = True
            labs[i] = 0
        else:
            labs[i] = r
    if P.mirrored:
        labs = np.array([P.label_map(int(l)) for l in labs], np.int64)
    return labs, undecided


# ---------------------------------------------------------------- shifted intersections

def _check_grid_offset(offset: QuarticNumber) -> None:
    a, b, c, d = offset.coeffs
    if b or d or a.denominator != 1 or c.denominator != 1:
        raise ValueError(f"offset {format_quartic(offset)} is not a grid point of Z[xi]")


def intersect_shifted(i: int, j: int, offset: QuarticNumber, depth: int = 48):
    """Is there x with label(x) = i and label(x + offset) = j?

    In region terms this asks whether (p_i + offset) meets p_j.  Returns
    Nonempty(witness x), Empty(certificate summary) or Unknown (only when the
    quadtree reaches depth with the pattern still possible somewhere).
    """
    from . import _certify

    _check_grid_offset(offset)
    if i not in LABELS or j not in LABELS:
        raise ValueError("labels must lie in -6..6")
    res = _certify.pattern_table([ZERO, offset], depth=depth, want={(i, j)})
    return res.outcomes[(i, j)]


def pair_table(offset: QuarticNumber, depth: int = 48, want=None):
    """Outcome of intersect_shifted for every ordered pair (or the pairs in want) at once."""
    from . import _certify

    _check_grid_offset(offset)
    return _certify.pattern_table([ZERO, offset], depth=depth, want=want)


def parse_export(text: str) -> list[tuple[int, list]]:
    """Regions (label, pieces) of an export_partition document."""
    from .exactmath import parse_quartic

    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not rows or rows[0].split() != ["hatmarkov-partition", str(SCHEMA_VERSION)]:
        raise ValueError("not a partition export of a supported version")
    out: list = []
    cur = None
    kinds = {k.value: k for k in fractal.EdgeKind}
    for ln in rows[1:]:
        key, _, rest = ln.partition(" ")
        if key == "region":
            cur = (int(rest), [])
        elif key == "end":
            out.append(cur)
            cur = None
        elif key == "segment":
            a, b = (parse_quartic(t) for t in rest.split(";"))
            cur[1].append(Segment(a, b))
        elif key == "fractal":
            kind, rev, pts = rest.split(" ", 2)
            a, b = (parse_quartic(t) for t in pts.split(";"))
            cur[1].append(DirectedEdge(kinds[kind], a, b, bool(int(rev))))
    return out
