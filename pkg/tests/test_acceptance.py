"""Acceptance criteria, one test each; a PASS/FAIL line per criterion goes to the terminal summary."""
from __future__ import annotations

import contextlib
import functools
import io
import random
import time
from fractions import Fraction

import pytest

from conftest import GOLDEN_PATCH, OFFSET1_PAIRS, OVERLAP_1XI, OVERLAP_2, record_acceptance
from hatmarkov import cli, fractal
from hatmarkov._certify import Empty
from hatmarkov.exactmath import LAMBDA, RealQuartic, QuarticNumber, embed, sign
from hatmarkov.hatgeom import HexWindow, anchored_fraction, overlap_pairs, validate
from hatmarkov.partition import (UNDECIDED, classify, intersect_shifted,
                                 mirror_partition, random_point, region_area, white_area)
from hatmarkov.symdyn import EXCLUDED, POSITIVE_MARKERS, frequencies
from hatmarkov.tiler import find_offset, generate, random_offset

PHI4 = RealQuartic(2, 3)          # phi^4 = 3 phi + 2


def criterion(number: int, title: str):
    def deco(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            ok = False
            try:
                fn(*args, **kwargs)
                ok = True
            finally:
                record_acceptance(number, title, ok, time.perf_counter() - t0)
                print(f"criterion {number} {'PASS' if ok else 'FAIL'}")
        return run
    return deco


@pytest.fixture(scope="module")
def windows():
    """The 100 seeded radius-50 configurations shared by criteria 6 and 8."""
    return [generate(random_offset(random.Random(seed)), HexWindow(50)) for seed in range(100)]


@criterion(1, "offset-1 pair table equals the 36 listed pairs")
def test_c1_offset1_pairs():
    t0 = time.perf_counter()
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = cli.main(["pairs", "--offset", "1", "--depth", "48"])
    elapsed = time.perf_counter() - t0
    rows = [ln.split() for ln in out.getvalue().splitlines() if ln and not ln.startswith("#")]
    got = {(int(r[0]), int(r[1])) for r in rows if r[2] == "allowed"}
    assert not [r for r in rows if r[2] == "unknown"]
    assert code == cli.EXIT_OK
    assert got == OFFSET1_PAIRS
    assert len(got) == 36
    assert elapsed < 120


@criterion(2, "overlap tables at 1+xi and 2, all certified empty")
def test_c2_overlap_tables():
    t0 = time.perf_counter()
    assert overlap_pairs((1, 1)) == OVERLAP_1XI
    assert overlap_pairs((2, 0)) == OVERLAP_2
    for offset, pairs in ((QuarticNumber.grid(1, 1), OVERLAP_1XI), (QuarticNumber.grid(2, 0), OVERLAP_2)):
        for i, j in sorted(pairs):
            assert isinstance(intersect_shifted(i, j, offset, depth=48), Empty), (i, j, offset)
    assert time.perf_counter() - t0 < 60


@criterion(3, "exact covolume, white area and white fraction")
def test_c3_exact_areas(plus):
    sqrt3 = RealQuartic(0, 0, 1)
    phi2 = RealQuartic(1, 1)
    cov = LAMBDA.covolume()
    white = white_area(plus)
    assert cov.coeffs == (2 * phi2 * sqrt3).coeffs
    assert white.coeffs == (phi2 * sqrt3 * RealQuartic(Fraction(1, 2))).coeffs
    assert white * 4 == cov


@criterion(4, "embedding of u+v near 3.92705+3.99933i, imaginary part not 4")
def test_c4_embedding():
    z = LAMBDA.u + LAMBDA.v
    box = embed(z, precision=64)
    for part, target in ((box.re, 3.92705), (box.im, 3.99933)):
        assert float(part.a) >= target - 1e-5
        assert float(part.b) <= target + 1e-5
    assert z.imag() != RealQuartic(4)
    assert sign(z.imag() - RealQuartic(4)) != 0


@criterion(5, "golden patch found and regenerated")
def test_c5_golden_patch():
    t0 = time.perf_counter()
    x = find_offset(GOLDEN_PATCH)
    cfg = generate(x, HexWindow(5))
    assert {p: cfg[p] for p in GOLDEN_PATCH} == GOLDEN_PATCH
    assert time.perf_counter() - t0 < 300


@criterion(6, "100 radius-30 windows valid, anchored fraction 3/4 at radius 50")
def test_c6_validity(windows):
    inner = HexWindow(30)
    for cfg in windows:
        rep = validate({p: l for p, l in cfg.labels.items() if inner.contains(p)}, inner)
        assert not rep.overlaps, cfg.offset
        assert not rep.gaps, cfg.offset
        frac = anchored_fraction(cfg.labels, cfg.window)
        assert abs(frac - 0.75) <= 0.01 * 0.75, (cfg.offset, frac)


@criterion(7, "positive to negative mass near phi^4, area brackets contain phi^4")
def test_c7_frequency_ratio():
    phi4 = float(PHI4)
    for seed in range(5):
        f = frequencies(generate(random_offset(random.Random(seed)), HexWindow(80)))
        assert abs(f.ratio - phi4) <= 0.05 * phi4, (seed, f.ratio)
    depth = 6
    pos_in = pos_out = neg_in = neg_out = RealQuartic()
    for k in range(1, 7):
        a, b = region_area(k, depth)
        pos_in, pos_out = pos_in + a, pos_out + b
        a, b = region_area(-k, depth)
        neg_in, neg_out = neg_in + a, neg_out + b
    # pos_in / neg_out <= phi^4 <= pos_out / neg_in, all terms positive
    assert sign(neg_in) > 0
    assert sign(PHI4 * neg_out - pos_in) >= 0
    assert sign(pos_out - PHI4 * neg_in) >= 0


@criterion(8, "offset-1 language sound, no excluded pairs, a positive marker in every window")
def test_c8_language(windows):
    excluded = set(EXCLUDED)
    for cfg in windows:
        pairs = cfg.pairs((1, 0))
        assert pairs <= OFFSET1_PAIRS, (cfg.offset, pairs - OFFSET1_PAIRS)
        assert not pairs & excluded
        assert any(m in pairs for m in POSITIVE_MARKERS), cfg.offset


@criterion(9, "fractal nesting, endpoints, symmetries and constant enclosure-area ratio")
def test_c9_fractal_certificates():
    for kind in (fractal.BLUE, fractal.RED):
        assert fractal.nesting_check(fractal.canonical(kind))
    for n in range(7):
        for kind in (fractal.BLUE, fractal.RED):
            e = fractal.canonical(kind)
            path = fractal.approximate(e, n)
            assert (path[0], path[-1]) == (e.start, e.end)
            back = fractal.approximate(e.flipped(), n)
            assert back == path[::-1]
        red = fractal.approximate(fractal.canonical(fractal.RED), n)
        assert [fractal.red_half_turn(z) for z in red][::-1] == red
        edges = fractal.blue_triangle_edges()
        paths = [fractal.approximate(e, n) for e in edges]
        centre = (edges[0].start + edges[1].start + edges[2].start) * QuarticNumber(Fraction(1, 3))
        rot = fractal.rotate_about(centre, 2)
        for k in range(3):
            assert [rot(z) for z in paths[k]] == paths[(k + 1) % 3]
    # ratio area(n+1)/area(n) the same for every n >= 1, compared by cross-multiplication
    for kind in (fractal.BLUE, fractal.RED):
        e = fractal.canonical(kind)
        areas = [fractal.total_enclosure_area(e, n) for n in range(1, 5)]
        for n in range(len(areas) - 2):
            assert areas[n + 1] * areas[n + 1] == areas[n] * areas[n + 2], (kind, n + 1)


@criterion(10, "mirror duality on 10^4 random decided points")
def test_c10_mirror_duality(plus):
    minus = mirror_partition(plus)
    rng = random.Random(2024)
    decided = 0
    while decided < 10_000:
        x = random_point(rng)
        lab = classify(x, plus)
        if lab is UNDECIDED:
            continue
        assert classify(x.conj(), minus) == -lab, x
        decided += 1
