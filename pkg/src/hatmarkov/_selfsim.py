"""Self-similar points of a two (or more) layer overlay.

Some points of the overlay never resolve under subdivision: two layers
share a curve whose substitution vertices do not line up, or curves of
both layers spiral into a common point.  Near such a point L the labelled
picture is often invariant under a contracting similarity
S(z) = L + lam (z - L).

Certificate.  Let K be a convex polygon around L with S(K) inside K and
suppose, for every layer,

  (i)  every piece meeting K is mapped by S onto a piece of the same layer
       with the same labels on the same sides, and
  (ii) every piece meeting S(K) lies inside the S-image of a piece meeting K.

Then S(G n K) = G n S(K) for the boundary G of each layer, and the labels
of faces match (every face of K minus G touches a curve inside K).  If an
open set U of constant labels meets K, pick y in U n K and the largest
k >= 0 with S^-k(y) in K; that point lies in K minus S(K) and carries the
same labels.  So only cells outside S(K) need to be checked.
"""
from __future__ import annotations

from dataclasses import dataclass

from ._overlay import Cell, Curve, Layer, weakly_separated
from .exactmath import LAMBDA, ONE, QPhi, QuarticNumber, cross, dot, root_of_unity

# self-similar points are only looked for in cells at least this deep
MIN_LEVEL = 8


@dataclass(frozen=True)
class SelfSimilarPoint:
    center: QuarticNumber
    ratio: QuarticNumber          # lam, |lam| < 1
    hexagon: tuple                # K, counterclockwise
    inner: tuple                  # S(K)

    def apply(self, z: QuarticNumber) -> QuarticNumber:
        return self.center + self.ratio * (z - self.center)

    @property
    def finner(self):
        return tuple(complex(p) for p in self.inner)


def _map_curve(c: Curve, L: QuarticNumber, lam: QuarticNumber) -> Curve:
    f = lambda z: L + lam * (z - L)
    if c.edge is None:
        return Curve(f(c.a), f(c.b), c.left, c.right)
    return Curve(f(c.a), f(c.b), c.left, c.right, c.edge.transformed(lam, L - lam * L))


def hexagon(L: QuarticNumber, rho: QuarticNumber) -> tuple:
    return tuple(L + rho * root_of_unity(k) for k in range(6))


def _pieces_meeting(layer: Layer, K, fK, chord2: float) -> list[Curve]:
    """Pieces of the layer meeting K, fractal ones refined to chord^2 <= chord2."""
    out = []
    stack = list(layer.curves)
    while stack:
        g = stack.pop()
        if weakly_separated(g.poly, K, g.fpoly, fK):
            continue
        if g.edge is not None and g.chord2 > chord2:
            stack.extend(g.children())
        else:
            out.append(g)
    return out


def _same_sides(c: Curve, d: Curve) -> bool:
    """Do c and d (same point set) carry the same labels on the same sides?"""
    if c.a == d.a and c.b == d.b:
        return (c.left, c.right) == (d.left, d.right)
    if c.a == d.b and c.b == d.a:
        return (c.left, c.right) == (d.right, d.left)
    return False


def _find_fractal(layer: Layer, q: Curve, limit: int = 64) -> bool:
    """Is q a piece of the layer's substitution trees with matching labels?"""
    stack = [g for g in layer.curves if g.edge is not None]
    tol = q.chord2 * (1 - 1e-9)
    steps = 0
    while stack:
        g = stack.pop()
        steps += 1
        if steps > limit * 64:
            return False
        if g.chord2 < tol:
            continue
        if g.key == q.key:
            return _same_sides(g, q)
        if weakly_separated(g.poly, q.poly, g.fpoly, q.fpoly):
            continue
        stack.extend(g.children())
    return False


def _on_segment_closed(p, a, b) -> bool:
    return cross(b - a, p - a).sign() == 0 and dot(p - a, p - b).sign() <= 0


def _segment_inside(q: Curve, s: Curve) -> bool:
    """Straight q inside straight s, with matching sides."""
    if not (_on_segment_closed(q.a, s.a, s.b) and _on_segment_closed(q.b, s.a, s.b)):
        return False
    if dot(q.b - q.a, s.b - s.a).sign() > 0:
        return (q.left, q.right) == (s.left, s.right)
    return (q.left, q.right) == (s.right, s.left)


def _find_straight(layer: Layer, q: Curve) -> bool:
    return any(g.edge is None and _segment_inside(q, g) for g in layer.curves)


def _clip_segment(a: QuarticNumber, b: QuarticNumber, poly) -> tuple | None:
    """Exact part of segment a-b inside a ccw convex polygon, or None."""
    lo, hi = QPhi(0), QPhi(1)
    d = b - a
    n = len(poly)
    for i in range(n):
        p, e = poly[i], poly[(i + 1) % n] - poly[i]
        # f(t) = cross(e, a + t d - p) >= 0
        f0 = cross(e, a - p)
        f1 = cross(e, d)
        if f1.sign() == 0:
            if f0.sign() < 0:
                return None
            continue
        t = -f0 / f1
        if f1.sign() > 0:
            lo = t if t > lo else lo
        else:
            hi = t if t < hi else hi
    if lo > hi:
        return None
    return a + d * lo, a + d * hi


def verify(layers: list[Layer], L: QuarticNumber, lam: QuarticNumber, rho: QuarticNumber,
           chord: float) -> SelfSimilarPoint | None:
    """Exact check of the certificate; chord sets the refinement of the pieces meeting K."""
    if not (lam.abs2() < QPhi(1)):
        return None
    K = hexagon(L, rho)
    inner = tuple(L + lam * (p - L) for p in K)
    fK = tuple(complex(p) for p in K)
    finner = tuple(complex(p) for p in inner)
    # S(K) inside K: the inner hexagon's corners lie in K
    n = len(K)
    for p in inner:
        if any(cross(K[(i + 1) % n] - K[i], p - K[i]).sign() < 0 for i in range(n)):
            return None
    c2 = chord * chord
    for lay in layers:
        A = _pieces_meeting(lay, K, fK, c2)
        images = [_map_curve(g, L, lam) for g in A]
        # (i)
        for img in images:
            ok = _find_straight(lay, img) if img.edge is None else _find_fractal(lay, img)
            if not ok:
                return None
        # (ii)
        keys = {img.key: img for img in images if img.edge is not None}
        straight = [img for img in images if img.edge is None]
        small = min((img.chord2 for img in images if img.edge is not None), default=0.0)
        stack = list(lay.curves)
        while stack:
            g = stack.pop()
            if weakly_separated(g.poly, inner, g.fpoly, finner):
                continue
            if g.edge is None:
                part = _clip_segment(g.a, g.b, inner)
                if part is None or part[0] == part[1]:
                    continue
                piece = Curve(part[0], part[1], g.left, g.right)
                if not any(_segment_inside(piece, s) for s in straight):
                    return None
                continue
            img = keys.get(g.key)
            if img is not None:
                if not _same_sides(g, img):
                    return None
                continue
            if g.chord2 < small * 1e-3:
                return None
            stack.extend(g.children())
    return SelfSimilarPoint(L, lam, K, inner)


def _near_pieces(layer: Layer, z0: complex, radius: float, smallest: float) -> list[Curve]:
    out = []
    stack = [g for g in layer.curves if g.edge is not None]
    while stack:
        g = stack.pop()
        size = max(abs(p - q) for p in g.fpoly for q in g.fpoly)
        if min(abs(p - z0) for p in g.fpoly) > radius + size:
            continue
        out.append(g)
        if g.chord2 > smallest * smallest:
            stack.extend(g.children())
    return out


def _candidates(layers: list[Layer], z0: complex, r0: float, max_gap: int = 6):
    """Float guesses (score, g, h): S maps piece g of layer 0 onto the smaller piece h.

    A guess is kept when S also maps the coarse pieces of every layer near
    its fixed point onto piece endpoints of the same layer.
    """
    phi = (1 + 5 ** 0.5) / 2
    smallest = r0 * phi ** -(max_gap + 3)
    near = [_near_pieces(lay, z0, 3 * r0, smallest) for lay in layers]
    q = 1e-7 * r0
    verts = [{(round(p.real / q), round(p.imag / q)) for g in pcs for p in (complex(g.a), complex(g.b))}
             for pcs in near]
    coarse = [[g for g in pcs if r0 * phi ** -3 < g.chord2 ** 0.5 <= r0] for pcs in near]
    seeds = sorted(coarse[0], key=lambda g: abs(complex(g.a) + complex(g.b) - 2 * z0))[:12]
    seen = set()
    for g in seeds:
        ga, gb = complex(g.a), complex(g.b)
        for h in near[0]:
            if (h.edge.kind is not g.edge.kind or h.edge.reversed != g.edge.reversed
                    or (h.left, h.right) != (g.left, g.right)):
                continue
            fl = (complex(h.b) - complex(h.a)) / (gb - ga)
            if not (phi ** -max_gap * 0.999 < abs(fl) < 0.999):
                continue
            fL = (complex(h.a) - fl * ga) / (1 - fl)
            if abs(fL - z0) > 2 * r0:
                continue
            key = (round(fL.real / q), round(fL.imag / q), round(fl.real, 9), round(fl.imag, 9))
            if key in seen:
                continue
            seen.add(key)
            ok = True
            for b in range(len(layers)):
                for c in coarse[b]:
                    if min(abs(p - fL) for p in c.fpoly) > 1.5 * r0:
                        continue
                    for p in (complex(c.a), complex(c.b)):
                        w = fL + fl * (p - fL)
                        if (round(w.real / q), round(w.imag / q)) not in verts[b]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if ok:
                yield abs(fl), g, h, abs(fL - z0)


def find_self_similar_point(layers: list[Layer], z0: complex, r0: float,
                            max_tries: int = 40) -> SelfSimilarPoint | None:
    """Look for a certified self-similar point within about r0 of z0."""
    for gap in (6, 9):
        res = _search(layers, z0, r0, gap, max_tries)
        if res is not None:
            return res
    return None


def _search(layers, z0, r0, gap, max_tries):
    cands = sorted(_candidates(layers, z0, r0, gap), key=lambda c: (-round(c[0], 6), c[3]))
    tries = 0
    for _, g, h, _ in cands:
        if tries >= max_tries:
            break
        lam = (h.b - h.a) / (g.b - g.a)
        if h.edge.reversed != g.edge.reversed:
            continue
        L = (h.a - lam * g.a) / (ONE - lam)
        tries += 1
        rho = _approx_length(g.b - g.a)
        for _ in range(4):
            res = verify(layers, L, lam, QuarticNumber.from_parts(rho, QPhi()),
                         abs(complex(g.b) - complex(g.a)))
            if res is not None:
                return res
            rho = rho * _PHI_INV
    return None


_PHI_INV = QPhi(-1, 1)          # 1/phi = phi - 1


def _approx_length(z: QuarticNumber) -> QPhi:
    """A power of phi within a factor phi of |z| (exact, used as a radius)."""
    x = abs(complex(z))
    k = 0
    phi = (1 + 5 ** 0.5) / 2
    r = QPhi(1)
    while phi ** k > x * phi:
        k -= 1
    while phi ** k < x:
        k += 1
    if k >= 0:
        for _ in range(k):
            r = r * QPhi(0, 1)
    else:
        for _ in range(-k):
            r = r * _PHI_INV
    return r


def extended(layer: Layer) -> Layer:
    """The layer's curves together with their translates by the 8 nearest lattice vectors.

    Layers only carry the curves meeting the fundamental cell; a hexagon K
    near the cell's border also needs the neighbours.
    """
    out = Layer(layer.offset)
    seen = set()
    for m in (-1, 0, 1):
        for n in (-1, 0, 1):
            t = LAMBDA.point(m, n)
            for c in layer.curves:
                d = c.translated(t)
                k = d.key if d.key is not None else (d.a, d.b)
                if k not in seen:
                    seen.add(k)
                    out.curves.append(d)
    return out


def _inside(poly, pts) -> bool:
    n = len(poly)
    return all(cross(poly[(i + 1) % n] - poly[i], p - poly[i]).sign() >= 0
               for p in pts for i in range(n))


def _finside(poly, pts, margin: float) -> bool:
    n = len(poly)
    for p in pts:
        for i in range(n):
            e = poly[(i + 1) % n] - poly[i]
            if (e.real * (p - poly[i]).imag - e.imag * (p - poly[i]).real) / abs(e) < -margin:
                return False
    return True


class PointCache:
    """Certified self-similar points of one overlay, found on demand."""

    def __init__(self, layers: list[Layer]):
        self.layers = [extended(lay) for lay in layers]
        self.points: list[SelfSimilarPoint] = []
        self._failed: list[tuple[complex, float]] = []

    def covers(self, cell: Cell) -> bool:
        """Is the closed cell inside S(K) of a certified point (up to a lattice translation)?"""
        for pt in self.points:
            for m in (-1, 0, 1):
                for n in (-1, 0, 1):
                    t = LAMBDA.point(m, n)
                    ft = complex(t)
                    fin = tuple(p + ft for p in pt.finner)
                    if not _finside(fin, cell.fpoly, -1e-9):
                        continue
                    if _inside(tuple(p + t for p in pt.inner), cell.poly):
                        return True
        return False

    def attempt(self, cell: Cell) -> bool:
        """Search for a certified point near the cell; True if one was added."""
        if cell.level < MIN_LEVEL:
            return False
        z0 = complex(cell.center)
        r0 = cell.diam2 ** 0.5 / 2
        for z, r in self._failed:
            if abs(z0 - z) < r and r0 > r / 4:
                return False
        # a known centre in or next to the cell: its S(K) is reached by refining
        for pt in self.points:
            c = complex(pt.center)
            for m in (-1, 0, 1):
                for n in (-1, 0, 1):
                    if _finside(cell.fpoly, [c + complex(LAMBDA.point(m, n))], r0):
                        return False
        pt = find_self_similar_point(self.layers, z0, r0)
        if pt is None:
            self._failed.append((z0, r0))
            return False
        self.points.append(pt)
        return True
