from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import OFFSET1_PAIRS
from hatmarkov import fractal
from hatmarkov._certify import Empty, Nonempty
from hatmarkov._kernels import UNSURE
from hatmarkov.exactmath import LAMBDA, ONE, PHI, XI, QuarticNumber, RealQuartic, sign
from hatmarkov.partition import (LABELS, _float_tables, PRESENTATIONS, UNDECIDED, WHITE_UP, Segment, build_partition,
                                 classify, classify_float, classify_grid, default_partition,
                                 export_partition, intersect_shifted, mirror_label_geometric,
                                 mirror_partition, parse_export, random_point, region_area,
                                 white_area)

coords = st.fractions(min_value=0, max_value=1, max_denominator=10 ** 5)
points = st.builds(lambda s, t: LAMBDA.u * s + LAMBDA.v * t, coords, coords)


def test_white_centroid_is_white(plus):
    c = (WHITE_UP[0] + WHITE_UP[1] + WHITE_UP[2]) * QuarticNumber(Fraction(1, 3))
    assert classify(c, plus) == 0


@pytest.mark.parametrize("z", [XI, XI + PHI, QuarticNumber(), LAMBDA.u])
def test_boundary_points_are_undecided(plus, z):
    assert classify(z, plus) is UNDECIDED


def test_on_segment_is_undecided(plus):
    a, b = WHITE_UP[0], WHITE_UP[1]
    assert classify((a + b) * QuarticNumber(Fraction(1, 2)), plus) is UNDECIDED


def test_white_area_is_quarter(plus):
    assert white_area(plus) * 4 == LAMBDA.covolume()
    lo, hi = region_area(0, 3, plus)
    assert lo == hi == white_area(plus)


@pytest.mark.parametrize("depth", [2, 4])
def test_region_area_brackets_cover_the_cell(plus, depth):
    lo = hi = RealQuartic()
    for lab in LABELS:
        a, b = region_area(lab, depth, plus)
        assert sign(b - a) >= 0
        assert sign(a) > 0
        lo, hi = lo + a, hi + b
    assert sign(LAMBDA.covolume() - lo) >= 0
    assert sign(hi - LAMBDA.covolume()) >= 0


def test_region_area_brackets_tighten(plus):
    w = [region_area(3, d, plus) for d in (2, 4)]
    assert sign((w[0][1] - w[0][0]) - (w[1][1] - w[1][0])) > 0


@settings(max_examples=60)
@given(points, st.integers(-3, 3), st.integers(-3, 3))
def test_periodicity(plus, z, m, n):
    assert classify(z + LAMBDA.point(m, n), plus) == classify(z, plus)


@settings(max_examples=30)
@given(points, st.randoms(use_true_random=False))
def test_order_does_not_matter(plus, z, rnd):
    order = list(range(len(plus._loops)))
    rnd.shuffle(order)
    assert classify(z, plus, order=order) == classify(z, plus)


def test_every_point_lands_in_one_region(plus):
    rng = random.Random(5)
    seen = set()
    for _ in range(400):
        lab = classify(random_point(rng), plus)
        assert lab is UNDECIDED or lab in LABELS
        seen.add(lab)
    assert set(LABELS) <= seen


def test_classification_is_deterministic():
    rng = random.Random(11)
    xs = [random_point(rng) for _ in range(50)]
    a = [classify(x, build_partition()) for x in xs]
    b = [classify(x, build_partition()) for x in xs]
    assert a == b


@pytest.mark.parametrize("presentation", PRESENTATIONS)
def test_presentations_agree(plus, presentation):
    P = build_partition(presentation)
    rng = random.Random(3)
    for _ in range(150):
        x = random_point(rng)
        assert classify(x, P) == classify(x, plus)


def test_unknown_presentation():
    with pytest.raises(ValueError):
        build_partition("spiral")


def test_float_and_exact_agree(plus):
    rng = np.random.default_rng(8)
    s, t = rng.random(3000), rng.random(3000)
    z = s * complex(LAMBDA.u) + t * complex(LAMBDA.v)
    labs = classify_float(z, plus)
    sure = labs != UNSURE
    assert sure.mean() > 0.99
    for k in np.nonzero(sure)[0][:300]:
        x = LAMBDA.u * Fraction(float(s[k])) + LAMBDA.v * Fraction(float(t[k]))
        assert classify(x, plus) == labs[k]


def test_classify_grid_matches_classify(plus):
    x = QuarticNumber(Fraction(1, 7), 0, Fraction(2, 9), 0)
    a = np.arange(-4, 5)
    b = np.array([1, -2, 0, 3, 1, -1, 2, 0, 4])
    labs, und = classify_grid(x, a, b, plus)
    assert not und.any()
    for i in range(len(a)):
        assert labs[i] == classify(x + QuarticNumber.grid(int(a[i]), int(b[i])), plus)


@pytest.mark.parametrize("relabel", ["negate", "geometric"])
def test_mirror_partition(plus, relabel):
    minus = mirror_partition(plus, relabel)
    rng = random.Random(17)
    for _ in range(100):
        x = random_point(rng)
        lab = classify(x, plus)
        want = lab if lab is UNDECIDED else (-lab if relabel == "negate" else mirror_label_geometric(lab))
        assert classify(x.conj(), minus) == want
    back = mirror_partition(minus)
    assert not back.mirrored


def test_geometric_mirror_label_is_involution():
    for lab in LABELS:
        assert mirror_label_geometric(mirror_label_geometric(lab)) == lab
        assert (mirror_label_geometric(lab) > 0) == (lab < 0)


def test_export_roundtrip(plus):
    text = export_partition(plus)
    regions = parse_export(text)
    assert {lab for lab, _ in regions} == set(LABELS)
    n = sum(len(r.loops) for r in plus.regions.values())
    assert len(regions) == n
    for lab, pieces in regions:
        for p, q in zip(pieces, pieces[1:] + pieces[:1]):
            assert p.end == q.start
        assert all(isinstance(p, (Segment, fractal.DirectedEdge)) for p in pieces)
    assert export_partition(plus) == text


def test_export_of_mirror_is_conjugate(plus):
    minus = mirror_partition(plus)
    a = parse_export(export_partition(plus))
    b = parse_export(export_partition(minus))
    assert [-lab for lab, _ in a] == [lab for lab, _ in b]
    assert [p.start.conj() for _, ps in a for p in ps] == [p.start for _, ps in b for p in ps]


def test_parse_export_rejects_other_documents():
    with pytest.raises(ValueError):
        parse_export("hatmarkov-configuration 1\n")


def test_intersect_examples():
    assert (6, 1) in OFFSET1_PAIRS
    out = intersect_shifted(6, 1, ONE)
    assert isinstance(out, Nonempty)
    plus = default_partition()
    assert classify(out.witness, plus) == 6
    assert classify(out.witness + ONE, plus) == 1
    assert isinstance(intersect_shifted(6, 2, ONE), Empty)
    assert isinstance(intersect_shifted(1, 4, ONE + XI), Empty)


def test_intersect_rejects_non_grid_offsets():
    with pytest.raises(ValueError):
        intersect_shifted(1, 2, PHI)
    with pytest.raises(ValueError):
        intersect_shifted(1, 9, ONE)


def test_deeper_classification_never_contradicts(plus):
    rng = random.Random(23)
    # points near the first fractal curve, where shallow depths stay undecided
    path = fractal.approximate(fractal.canonical(fractal.BLUE), 3)
    for _ in range(60):
        z = rng.choice(path) + QuarticNumber(Fraction(rng.randint(-99, 99), 10 ** 4), 0,
                                             Fraction(rng.randint(-99, 99), 10 ** 4), 0)
        final = classify(z, plus)
        for depth in (1, 2, 4, 8):
            lab = classify(z, plus, max_depth=depth)
            assert lab is UNDECIDED or lab == final


def test_shuffled_orders_agree_on_many_points(plus):
    rng = np.random.default_rng(12)
    n = 100_000
    z = rng.random(n) * complex(LAMBDA.u) + rng.random(n) * complex(LAMBDA.v)
    k = len(_float_tables(plus)["inst_n"])
    a = classify_float(z, plus, order=rng.permutation(k))
    b = classify_float(z, plus, order=rng.permutation(k))
    sure = (a != UNSURE) & (b != UNSURE)
    assert sure.mean() > 0.99
    assert (a[sure] == b[sure]).all()


def test_float_periodicity_on_many_points(plus):
    rng = np.random.default_rng(13)
    n = 10_000
    z = rng.random(n) * complex(LAMBDA.u) + rng.random(n) * complex(LAMBDA.v)
    base = classify_float(z, plus)
    for t in (complex(LAMBDA.u), complex(LAMBDA.v)):
        moved = classify_float(z + t, plus)
        sure = (base != UNSURE) & (moved != UNSURE)
        assert (base[sure] == moved[sure]).all()


def test_golden_translates(plus):
    x = QuarticNumber(Fraction(-1, 64), Fraction(1, 128), Fraction(7, 128), Fraction(3, 128))
    assert classify(x, plus) == 3
    assert classify(x + QuarticNumber.grid(2, 1), plus) == -1
    assert classify(x + QuarticNumber.grid(-3, 4), plus) == 0
