from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import OFFSET1_PAIRS, OVERLAP_1XI, OVERLAP_2
from hatmarkov import _kernels
from hatmarkov.hatgeom import (HexWindow, TilePlacement, anchored_fraction, conj_kite, conj_point,
                               coverage, grid_norm, kite_area, kite_table, outline, outline_area,
                               overlap_oracle, overlap_pairs, rotate_kite, rotate_point, tile_kites,
                               validate)
from hatmarkov.exactmath import RealQuartic
from hatmarkov.partition import mirror_label_geometric

TILE_LABELS = [l for l in range(-6, 7) if l]
labels = st.sampled_from(TILE_LABELS)
grid = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


def rot_label(l: int) -> int:
    """Label of a tile turned by 60 degrees."""
    m = abs(l) % 6 + 1
    return m if l > 0 else -m


@pytest.mark.parametrize("label", TILE_LABELS)
def test_tile_shape(label):
    t = TilePlacement((0, 0), label)
    kites = tile_kites(t)
    assert len(kites) == 8
    assert sum(1 for a, b, _ in kites if (a, b) == (0, 0)) == 4
    assert len(outline(t)) == 13
    assert outline_area(t) == kite_area() * RealQuartic(8)


def test_kite_area():
    # a kite is a third of a unit equilateral triangle
    assert kite_area() == RealQuartic(0, 0, Fraction(1, 12))


def test_bad_label():
    with pytest.raises(ValueError):
        TilePlacement((0, 0), 0)
    with pytest.raises(ValueError):
        TilePlacement((0, 0), 7)


@given(labels, grid, st.integers(0, 5))
def test_rotation_maps_tiles_to_tiles(label, p, k):
    t = TilePlacement(p, label)
    rotated = {rotate_kite(q, k) for q in tile_kites(t)}
    lab = label
    for _ in range(k):
        lab = rot_label(lab)
    assert rotated == tile_kites(TilePlacement(rotate_point(p, k), lab))


@given(labels, grid)
def test_conjugation_maps_tiles_to_mirror_tiles(label, p):
    t = TilePlacement(p, label)
    mirrored = {conj_kite(q) for q in tile_kites(t)}
    assert mirrored == tile_kites(TilePlacement(conj_point(p), mirror_label_geometric(label)))


def test_overlap_tables():
    assert overlap_pairs((1, 1)) == OVERLAP_1XI
    assert overlap_pairs((2, 0)) == OVERLAP_2
    assert overlap_pairs((3, 0)) == set()
    assert {(l, l) for l in TILE_LABELS} <= overlap_pairs((0, 0))


@given(labels, labels, st.tuples(st.integers(-6, 6), st.integers(-6, 6)))
def test_far_tiles_never_overlap(i, j, off):
    if grid_norm(off) > 2:
        assert not overlap_oracle(i, j, off)
    # the shortcut agrees with the kite sets
    direct = bool(tile_kites(TilePlacement((0, 0), i)) & tile_kites(TilePlacement(off, j)))
    assert overlap_oracle(i, j, off) == direct


@given(labels, labels, grid, st.integers(1, 5))
def test_overlap_rotation_equivariance(i, j, off, k):
    ri, rj = i, j
    for _ in range(k):
        ri, rj = rot_label(ri), rot_label(rj)
    assert overlap_oracle(i, j, off) == overlap_oracle(ri, rj, rotate_point(off, k))


def test_listed_offset1_pairs_never_overlap():
    for i, j in OFFSET1_PAIRS:
        if i and j:
            assert not overlap_oracle(i, j, (1, 0))


def test_doubled_tile_is_an_overlap():
    t = TilePlacement((0, 0), 1)
    rep = validate([t, t], HexWindow(5))
    assert len(rep.overlaps) == 8
    assert not rep.ok


def test_empty_configuration_has_gaps():
    rep = validate({}, HexWindow(5))
    assert len(rep.gaps) == rep.interior_kites == 6 * len(HexWindow(2).points())
    assert rep.histogram == {0: rep.interior_kites}


def test_margin_must_cover_tiles():
    with pytest.raises(ValueError):
        validate({}, HexWindow(5), margin=1)


def test_window_points():
    w = HexWindow(3, (2, -1))
    pts = w.points()
    assert len(pts) == 37
    assert all(w.contains(p) for p in pts)
    assert not w.contains((6, -1))


def test_anchored_fraction():
    w = HexWindow(1)
    labs = {p: (1 if p == (0, 0) else 0) for p in w.points()}
    assert anchored_fraction(labs, w) == pytest.approx(1 / 7)


def test_kite_table_matches_tiles():
    tab = kite_table()
    for lab in TILE_LABELS:
        assert {tuple(int(v) for v in row) for row in tab[lab + 6]} == set(tile_kites(TilePlacement((0, 0), lab)))


@given(st.dictionaries(grid, labels, max_size=12))
def test_histogram_backends_agree(labs):
    w = HexWindow(4)
    fast, _, _ = coverage(labs, w, numba=_kernels.NUMBA)
    slow, _, _ = coverage(labs, w, numba=False)
    assert np.array_equal(fast, slow)
    total = 8 * sum(1 for l in labs.values() if l)
    assert int(fast.sum()) == total


def test_minus_one_outline_is_the_mirror_of_plus_one():
    plus = outline(TilePlacement((0, 0), 1))
    minus = outline(TilePlacement((0, 0), -1))
    assert set(minus) == {z.conj() for z in plus}


@pytest.mark.parametrize("label", TILE_LABELS)
def test_anchor_kites_span_240_degrees(label):
    dirs = sorted(d for a, b, d in tile_kites(TilePlacement((0, 0), label)) if (a, b) == (0, 0))
    # four consecutive directions around the anchor, cyclically
    assert any({(s + i) % 6 for i in range(4)} == set(dirs) for s in range(6))
