"""The hat fractal as a substitution on two kinds of directed segments.

A Blue segment in its canonical position runs 0 -> phi^2, a Red one runs
xi -> phi^2.  One substitution step replaces a segment by a short path of
smaller segments, each an orientation preserving similarity image of a
canonical segment.  Iterating converges to the fractal curve.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import (ONE, PHI, PHI2, XI, ZERO, QPhi, QuarticNumber, RealQuartic, cross,
                        root_of_unity)


class EdgeKind(enum.Enum):
    BLUE = "B"
    RED = "R"

    def __repr__(self):
        return f"EdgeKind.{self.name}"


BLUE = EdgeKind.BLUE
RED = EdgeKind.RED

# canonical chord (c0, c1) per kind
CANONICAL = {
    BLUE: (ZERO, PHI2),
    RED: (XI, PHI2),
}

# Substitution paths in the canonical frame: (kind, path start, path end,
# reversed).  A reversed piece is traversed against its own orientation,
# i.e. its intrinsic chord runs from path end to path start.
RULES = {
    BLUE: (
        (BLUE, ZERO, XI, True),
        (BLUE, XI, XI + ONE, True),
        (RED, XI + ONE, PHI, False),
        (BLUE, PHI, PHI2, False),
    ),
    RED: (
        (BLUE, XI, XI + ONE, True),
        (RED, XI + ONE, PHI, False),
        (BLUE, PHI, PHI2, False),
    ),
}

# canonical convex enclosures, counterclockwise
ENCLOSURES = {
    BLUE: (ZERO, PHI2, PHI2 * XI),
    RED: (XI, ONE, PHI2, PHI + XI),
}

# substitution matrix: row = parent kind, columns = (#Blue, #Red) children
SUBSTITUTION_MATRIX = ((3, 1), (2, 1))


@lru_cache(maxsize=None)
def _relative(kind: EdgeKind) -> tuple:
    """Rule and enclosure points expressed as (p - c0) / (c1 - c0)."""
    c0, c1 = CANONICAL[kind]
    inv = (c1 - c0).inverse()
    rule = tuple((k, (p - c0) * inv, (q - c0) * inv, rev) for k, p, q, rev in RULES[kind])
    enc = tuple((p - c0) * inv for p in ENCLOSURES[kind])
    return rule, enc


@dataclass(frozen=True)
class DirectedEdge:
    kind: EdgeKind
    start: QuarticNumber
    end: QuarticNumber
    reversed: bool = False

    @property
    def intrinsic(self) -> tuple[QuarticNumber, QuarticNumber]:
        """Endpoints (a, b) such that the curve is the image of the canonical one under c0 -> a, c1 -> b."""
        return (self.end, self.start) if self.reversed else (self.start, self.end)

    def similarity(self):
        a, b = self.intrinsic
        s = b - a
        return lambda rel: a + s * rel

    def flipped(self) -> DirectedEdge:
        """Same curve, listed the other way round."""
        return DirectedEdge(self.kind, self.end, self.start, not self.reversed)

    def transformed(self, scale: QuarticNumber, shift: QuarticNumber) -> DirectedEdge:
        """Image under z -> scale*z + shift (an orientation preserving similarity)."""
        return DirectedEdge(self.kind, scale * self.start + shift, scale * self.end + shift, self.reversed)

    def translated(self, shift: QuarticNumber) -> DirectedEdge:
        return DirectedEdge(self.kind, self.start + shift, self.end + shift, self.reversed)

    def chord_length2(self) -> QPhi:
        return (self.end - self.start).abs2()


def canonical(kind: EdgeKind) -> DirectedEdge:
    c0, c1 = CANONICAL[kind]
    return DirectedEdge(kind, c0, c1, False)


def substitute(e: DirectedEdge) -> list[DirectedEdge]:
    """One substitution step; children listed from e.start to e.end."""
    rule, _ = _relative(e.kind)
    f = e.similarity()
    kids = [DirectedEdge(k, f(p), f(q), rev) for k, p, q, rev in rule]
    if e.reversed:
        kids = [k.flipped() for k in reversed(kids)]
    return kids


def expand(e: DirectedEdge, depth: int) -> list[DirectedEdge]:
    edges = [e]
    for _ in range(depth):
        edges = [c for p in edges for c in substitute(p)]
    return edges


def approximate(e: DirectedEdge, depth: int) -> list[QuarticNumber]:
    """Vertices of the depth-fold substituted path, from e.start to e.end."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    edges = expand(e, depth)
    return [e.start] + [c.end for c in edges]


def edge_counts(kind: EdgeKind, depth: int) -> tuple[int, int]:
    """(#Blue, #Red) after depth substitutions, from the substitution matrix."""
    v = (1, 0) if kind is BLUE else (0, 1)
    for _ in range(depth):
        v = (v[0] * SUBSTITUTION_MATRIX[0][0] + v[1] * SUBSTITUTION_MATRIX[1][0],
             v[0] * SUBSTITUTION_MATRIX[0][1] + v[1] * SUBSTITUTION_MATRIX[1][1])
    return v


@dataclass(frozen=True)
class Enclosure:
    vertices: tuple[QuarticNumber, ...]

    def contains(self, z: QuarticNumber, strict: bool = False) -> bool:
        vs = self.vertices
        for i in range(len(vs)):
            s = cross(vs[(i + 1) % len(vs)] - vs[i], z - vs[i]).sign()
            if s < 0 or (strict and s == 0):
                return False
        return True

    def contains_polygon(self, pts) -> bool:
        return all(self.contains(p) for p in pts)

    def area(self) -> RealQuartic:
        vs = self.vertices
        tot = QPhi()
        for i in range(len(vs)):
            tot = tot + cross(vs[i], vs[(i + 1) % len(vs)])
        # cross carries a factor 1/sqrt(3); area = (1/2) sum of true cross products
        return RealQuartic.from_parts(QPhi(), tot * QPhi(1, 0, 2))


def enclosure(e: DirectedEdge) -> Enclosure:
    _, rel = _relative(e.kind)
    f = e.similarity()
    return Enclosure(tuple(f(p) for p in rel))


def nesting_check(e: DirectedEdge) -> bool:
    """Do the child enclosures lie inside the parent enclosure?"""
    outer = enclosure(e)
    return all(outer.contains_polygon(enclosure(c).vertices) for c in substitute(e))


def total_enclosure_area(e: DirectedEdge, depth: int) -> RealQuartic:
    """Sum of enclosure areas over the depth-fold substituted path."""
    tot = RealQuartic()
    for c in expand(e, depth):
        tot = tot + enclosure(c).area()
    return tot


def rotate_about(center: QuarticNumber, k: int):
    """Rotation by k*60 degrees about center."""
    r = root_of_unity(k)
    return lambda z: center + r * (z - center)


def blue_triangle_edges() -> list[DirectedEdge]:
    """The three Blue curves around the triangle (0, phi^2, phi^2 xi)."""
    c = (PHI2 + PHI2 * XI) * QuarticNumber(Fraction(1, 3))
    rot = rotate_about(c, 2)
    e0 = canonical(BLUE)
    e1 = DirectedEdge(BLUE, rot(e0.start), rot(e0.end))
    e2 = DirectedEdge(BLUE, rot(e1.start), rot(e1.end))
    return [e0, e1, e2]


def red_half_turn(z: QuarticNumber) -> QuarticNumber:
    """Half turn about the midpoint of the Red chord xi -> phi^2."""
    return XI + PHI2 - z


# ------------------------------------------------------------ endpoint cones
# The triangle and quadrilateral enclosures have the same corner angle at a
# curve endpoint as every enclosure of the child touching that endpoint, so
# nested enclosures never get sharper there.  The true tangent cone is a
# fixed point: near the end of a Blue curve the last child is a pure scaling
# about that end, so the cone spanned by the other three children contains
# the whole curve.  Clipping the enclosure by the cones at both ends gives a
# convex enclosure that is exact in the field and tight at the ends.

CONE_DEPTH = 2


def _extremes(p: QuarticNumber, dirs: list[QuarticNumber]) -> tuple[QuarticNumber, QuarticNumber]:
    """Most clockwise and most counterclockwise of directions spanning less than a half turn."""
    import cmath
    ang = [cmath.phase(complex(d)) for d in dirs]
    ref = ang[0]
    rel = [((t - ref + cmath.pi) % (2 * cmath.pi)) - cmath.pi for t in ang]
    lo = dirs[min(range(len(dirs)), key=rel.__getitem__)]
    hi = dirs[max(range(len(dirs)), key=rel.__getitem__)]
    for d in dirs:
        if cross(lo, d).sign() < 0 or cross(d, hi).sign() < 0:
            raise ArithmeticError("directions do not fit in a cone")
    if cross(lo, hi).sign() <= 0:
        raise ArithmeticError("cone is not pointed")
    return lo, hi


def _far_vertices(kids: list[DirectedEdge]) -> list[QuarticNumber]:
    out = []
    for c in kids:
        for g in expand(c, CONE_DEPTH):
            out.extend(enclosure(g).vertices)
    return out


@lru_cache(maxsize=None)
def _blue_end_cone() -> tuple[QuarticNumber, QuarticNumber]:
    e = canonical(BLUE)
    kids = substitute(e)
    last = kids[-1]
    assert last.kind is BLUE and last.intrinsic[1] == e.end
    # the last child is z -> e.end + (z - e.end) / phi, no rotation
    assert ((last.intrinsic[1] - last.intrinsic[0]) * (e.end - e.start).inverse()).imag_over_sqrt3() == QPhi()
    return _extremes(e.end, [v - e.end for v in _far_vertices(kids[:-1])])


@lru_cache(maxsize=None)
def endpoint_cones(kind: EdgeKind) -> tuple:
    """((p, lo, hi) at the start, (p, lo, hi) at the end) of the canonical curve."""
    e = canonical(kind)
    kids = substitute(e)
    blo, bhi = _blue_end_cone()
    cones = []
    for p, near, rest in ((e.start, kids[0], kids[1:]), (e.end, kids[-1], kids[:-1])):
        ia, ib = near.intrinsic
        if near.kind is not BLUE or ib != p:
            raise ArithmeticError("endpoint child is not a Blue curve ending there")
        lam = (ib - ia) * PHI2.inverse()
        dirs = [blo * lam, bhi * lam] + [v - p for v in _far_vertices(rest)]
        cones.append((p,) + _extremes(p, dirs))
    return tuple(cones)


def _clip_halfplane(poly: list[QuarticNumber], p: QuarticNumber, d: QuarticNumber) -> list[QuarticNumber]:
    """Part of a convex polygon on the left of (or on) the line p + t d."""
    out = []
    n = len(poly)
    vals = [cross(d, v - p) for v in poly]
    for i in range(n):
        s, e = poly[i], poly[(i + 1) % n]
        fs, fe = vals[i], vals[(i + 1) % n]
        if fs.sign() >= 0:
            out.append(s)
        if fs.sign() * fe.sign() < 0:
            out.append(s + (e - s) * (fs / (fs - fe)))
    return out


@lru_cache(maxsize=None)
def _tight_relative(kind: EdgeKind) -> tuple[QuarticNumber, ...]:
    poly = list(ENCLOSURES[kind])
    for p, lo, hi in endpoint_cones(kind):
        poly = _clip_halfplane(poly, p, lo)
        poly = _clip_halfplane(poly, p, -hi)
    # drop repeated vertices
    clean = []
    for v in poly:
        if not clean or v != clean[-1]:
            clean.append(v)
    if len(clean) > 1 and clean[0] == clean[-1]:
        clean.pop()
    c0, c1 = CANONICAL[kind]
    inv = (c1 - c0).inverse()
    return tuple((v - c0) * inv for v in clean)


def tight_enclosure(e: DirectedEdge) -> Enclosure:
    """Enclosure clipped by the tangent cones at both endpoints."""
    f = e.similarity()
    return Enclosure(tuple(f(p) for p in _tight_relative(e.kind)))
