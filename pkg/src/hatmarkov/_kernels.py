"""Floating point fast paths.

Every kernel here is written once as plain Python over numpy arrays and is
compiled with numba's @njit unless HATMARKOV_DISABLE_NUMBA is set (or numba
is missing).  Results are only trusted with a safety margin; anything closer
than EPS to a decision boundary comes back as UNSURE and is redone exactly.
"""
from __future__ import annotations

import os

import numpy as np

EPS = 1e-9
UNSURE = 99
MAX_FLOAT_DEPTH = 40
MIN_CHORD2 = 1e-12

_DISABLED = os.environ.get("HATMARKOV_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    if _DISABLED:
        raise ImportError
    from numba import njit as _njit

    def maybe_njit(f):
        return _njit(cache=True, nogil=True)(f)

    NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag in a subprocess
    def maybe_njit(f):
        return f

    NUMBA = False


def backend() -> str:
    return "numba" if NUMBA else "python"


# ----------------------------------------------------------- predicates

@maybe_njit
def _orient(ax, ay, bx, by, zx, zy):
    # antisymmetric in (a, b) bit for bit: always evaluate from the
    # lexicographically smaller endpoint
    if ax < bx or (ax == bx and ay <= by):
        return (bx - ax) * (zy - ay) - (by - ay) * (zx - ax)
    return -((ax - bx) * (zy - by) - (ay - by) * (zx - bx))


@maybe_njit
def _crossing(ax, ay, bx, by, zx, zy):
    if ay <= zy:
        if by > zy and _orient(ax, ay, bx, by, zx, zy) > 0:
            return 1
    else:
        if by <= zy and _orient(ax, ay, bx, by, zx, zy) < 0:
            return -1
    return 0


@maybe_njit
def _poly_margin(vx, vy, n, zx, zy):
    """Smallest signed distance from z to the edge lines of a ccw convex polygon."""
    m = 1e300
    for i in range(n):
        j = (i + 1) % n
        ex = vx[j] - vx[i]
        ey = vy[j] - vy[i]
        d = (ex * (zy - vy[i]) - ey * (zx - vx[i])) / np.sqrt(ex * ex + ey * ey)
        if d < m:
            m = d
    return m


# ----------------------------------------------------------- curves
# Tables (built in partition_tables): for kind k,
#   path_re/path_im[k, 0..npath[k]]  substitution path relative to chord (0 -> 1)
#   kid_kind[k, i], kid_rev[k, i]    child i spans path[i] -> path[i+1]
#   enc_re/enc_im[k, 0..nenc[k]-1]  enclosure relative to chord


@maybe_njit
def _correction(kind0, ax0, ay0, bx0, by0, zx, zy, npath, path_re, path_im, kid_kind,
                kid_rev, nenc, enc_re, enc_im, maxdepth):
    """Winding about z of (curve a->b, intrinsic) + (chord b->a); returns (value, ok)."""
    cap = 4 * (maxdepth + 2)
    sk = np.empty(cap, np.int64)
    sd = np.empty(cap, np.int64)
    ss = np.empty(cap, np.int64)
    sp = np.empty((cap, 4))
    top = 0
    sk[0] = kind0
    sd[0] = 0
    ss[0] = 1
    sp[0, 0] = ax0
    sp[0, 1] = ay0
    sp[0, 2] = bx0
    sp[0, 3] = by0
    top = 1
    total = 0
    ex = np.empty(4)
    ey = np.empty(4)
    px = np.empty(6)
    py = np.empty(6)
    while top > 0:
        top -= 1
        k = sk[top]
        dep = sd[top]
        sg = ss[top]
        ax = sp[top, 0]
        ay = sp[top, 1]
        bx = sp[top, 2]
        by = sp[top, 3]
        dx = bx - ax
        dy = by - ay
        ne = nenc[k]
        for i in range(ne):
            ex[i] = ax + dx * enc_re[k, i] - dy * enc_im[k, i]
            ey[i] = ay + dx * enc_im[k, i] + dy * enc_re[k, i]
        if _poly_margin(ex, ey, ne, zx, zy) < -EPS:
            continue
        # chords this short cannot be resolved against EPS any more
        if dep >= maxdepth or dx * dx + dy * dy < MIN_CHORD2:
            return 0, False
        n = npath[k]
        px[0] = ax
        py[0] = ay
        for i in range(1, n):
            px[i] = ax + dx * path_re[k, i] - dy * path_im[k, i]
            py[i] = ay + dx * path_im[k, i] + dy * path_re[k, i]
        px[n] = bx
        py[n] = by
        w = _crossing(bx, by, ax, ay, zx, zy)
        for i in range(n):
            w += _crossing(px[i], py[i], px[i + 1], py[i + 1], zx, zy)
        total += sg * w
        for i in range(n):
            if top >= cap:
                return 0, False
            sk[top] = kid_kind[k, i]
            sd[top] = dep + 1
            if kid_rev[k, i]:
                ss[top] = -sg
                sp[top, 0] = px[i + 1]
                sp[top, 1] = py[i + 1]
                sp[top, 2] = px[i]
                sp[top, 3] = py[i]
            else:
                ss[top] = sg
                sp[top, 0] = px[i]
                sp[top, 1] = py[i]
                sp[top, 2] = px[i + 1]
                sp[top, 3] = py[i + 1]
            top += 1
    return total, True


@maybe_njit
def _canonical_label(wx, wy, cpts, npath, path_re, path_im, kid_kind, kid_rev, nenc,
                     enc_re, enc_im, maxdepth):
    """Label (-4, 1, 4, -1) of a point well inside the canonical parallelogram, or UNSURE."""
    # cpts: 0, phi^2, phi^2 + xi, xi  as (x, y) rows
    x0, y0 = cpts[0, 0], cpts[0, 1]
    x1, y1 = cpts[1, 0], cpts[1, 1]
    x2, y2 = cpts[2, 0], cpts[2, 1]
    x3, y3 = cpts[3, 0], cpts[3, 1]
    k1, ok1 = _correction(0, x3, y3, x0, y0, wx, wy, npath, path_re, path_im, kid_kind,
                          kid_rev, nenc, enc_re, enc_im, maxdepth)
    k2, ok2 = _correction(1, x3, y3, x1, y1, wx, wy, npath, path_re, path_im, kid_kind,
                          kid_rev, nenc, enc_re, enc_im, maxdepth)
    k3, ok3 = _correction(0, x1, y1, x2, y2, wx, wy, npath, path_re, path_im, kid_kind,
                          kid_rev, nenc, enc_re, enc_im, maxdepth)
    if not (ok1 and ok2 and ok3):
        return UNSURE
    t1 = (_crossing(x0, y0, x1, y1, wx, wy) + _crossing(x1, y1, x3, y3, wx, wy)
          + _crossing(x3, y3, x0, y0, wx, wy))
    t2 = (_crossing(x3, y3, x1, y1, wx, wy) + _crossing(x1, y1, x2, y2, wx, wy)
          + _crossing(x2, y2, x3, y3, wx, wy))
    wm4 = -k1
    wp1 = t1 - k2 + k1
    wp4 = t2 + k2 + k3
    wm1 = -k3
    lab = UNSURE
    hits = 0
    if wm4 == 1:
        lab = -4
        hits += 1
    elif wm4 != 0:
        return UNSURE
    if wp1 == 1:
        lab = 1
        hits += 1
    elif wp1 != 0:
        return UNSURE
    if wp4 == 1:
        lab = 4
        hits += 1
    elif wp4 != 0:
        return UNSURE
    if wm1 == 1:
        lab = -1
        hits += 1
    elif wm1 != 0:
        return UNSURE
    if hits != 1:
        return UNSURE
    return lab


@maybe_njit
def _shift_label(lab, k):
    m = (abs(lab) - 1 + 2 * k) % 6 + 1
    return m if lab > 0 else -m


@maybe_njit
def classify_points(zx, zy, inst_vx, inst_vy, inst_n, inst_kind, inst_tr, cpts, npath,
                    path_re, path_im, kid_kind, kid_rev, nenc, enc_re, enc_im, maxdepth):
    """Label per point (points already reduced into the cell), UNSURE where not certain.

    Instance r is a piece hull (inst_vx/vy rows, inst_n vertices) already moved
    by its lattice translate; inst_kind is -1 for white, else the
    parallelogram index; inst_tr = (s_re, s_im, c_re, c_im) maps a point to
    the canonical frame as w = s * (z - c).
    """
    npts = zx.shape[0]
    out = np.empty(npts, np.int64)
    ninst = inst_n.shape[0]
    for p in range(npts):
        x = zx[p]
        y = zy[p]
        found = -1
        unsure = False
        for r in range(ninst):
            m = _poly_margin(inst_vx[r], inst_vy[r], inst_n[r], x, y)
            if m > EPS:
                if found >= 0:
                    unsure = True
                found = r
            elif m > -EPS:
                unsure = True
        if unsure or found < 0:
            out[p] = UNSURE
            continue
        kind = inst_kind[found]
        if kind < 0:
            out[p] = 0
            continue
        sr, si, cr, ci = inst_tr[found, 0], inst_tr[found, 1], inst_tr[found, 2], inst_tr[found, 3]
        dx = x - cr
        dy = y - ci
        wx = sr * dx - si * dy
        wy = sr * dy + si * dx
        lab = _canonical_label(wx, wy, cpts, npath, path_re, path_im, kid_kind, kid_rev, nenc,
                               enc_re, enc_im, maxdepth)
        out[p] = UNSURE if lab == UNSURE else _shift_label(lab, kind)
    return out


# ----------------------------------------------------------- kites

@maybe_njit
def kite_histogram(anchor_a, anchor_b, labels, kite_table, lo_a, lo_b, na, nb):
    """Cover counts of kites (a, b, d) from tiles placed at anchors.

    kite_table[label + 6] lists 8 (da, db, d) offsets; the result is indexed
    [a - lo_a, b - lo_b, d].  Kites outside the box are ignored.
    """
    hist = np.zeros((na, nb, 6), np.int64)
    for t in range(anchor_a.shape[0]):
        lab = labels[t]
        if lab == 0:
            continue
        for q in range(8):
            a = anchor_a[t] + kite_table[lab + 6, q, 0] - lo_a
            b = anchor_b[t] + kite_table[lab + 6, q, 1] - lo_b
            if 0 <= a < na and 0 <= b < nb:
                hist[a, b, kite_table[lab + 6, q, 2]] += 1
    return hist


def kite_histogram_numpy(anchor_a, anchor_b, labels, kite_table, lo_a, lo_b, na, nb):
    """Vectorised twin of kite_histogram."""
    keep = labels != 0
    aa, bb, ll = anchor_a[keep], anchor_b[keep], labels[keep]
    offs = kite_table[ll + 6]                       # (n, 8, 3)
    a = (aa[:, None] + offs[:, :, 0] - lo_a).ravel()
    b = (bb[:, None] + offs[:, :, 1] - lo_b).ravel()
    d = offs[:, :, 2].ravel()
    ok = (a >= 0) & (a < na) & (b >= 0) & (b < nb)
    hist = np.zeros((na, nb, 6), np.int64)
    np.add.at(hist, (a[ok], b[ok], d[ok]), 1)
    return hist
