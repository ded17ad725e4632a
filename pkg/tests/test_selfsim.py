from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from hatmarkov import _overlay, _selfsim
from hatmarkov._kernels import UNSURE
from hatmarkov.exactmath import ONE, PHI, XI, ZERO, QuarticNumber
from hatmarkov.partition import classify_float

CENTRE = (ONE + XI) * QuarticNumber(Fraction(1, 3))


@pytest.fixture(scope="module")
def layers():
    # pattern (label(z), label(z + 1))
    return [_selfsim.extended(_overlay.make_layer(ZERO)), _selfsim.extended(_overlay.make_layer(-ONE))]


@pytest.fixture(scope="module")
def point(layers):
    return _selfsim.find_self_similar_point(layers, complex(CENTRE), 0.1)


def test_point_at_one_third(point):
    assert point is not None
    assert point.center == CENTRE
    assert point.ratio == XI * PHI.inverse() ** 4


def test_verify_rejects_wrong_ratio(layers, point):
    rho = point.hexagon[0] - point.center
    chord = abs(complex(rho))
    assert _selfsim.verify(layers, point.center, point.ratio, rho, chord) is not None
    assert _selfsim.verify(layers, point.center, PHI.inverse() ** 4, rho, chord) is None
    assert _selfsim.verify(layers, point.center, point.ratio.conj(), rho, chord) is None


def test_verify_rejects_expanding_ratio(layers, point):
    rho = point.hexagon[0] - point.center
    assert _selfsim.verify(layers, point.center, PHI ** 2, rho, 1.0) is None


def test_labels_are_invariant_near_the_point(plus, point):
    # float soundness: pattern(S(y)) = pattern(y) for sample points y of K
    rng = np.random.default_rng(1)
    hexa = np.array([complex(p) for p in point.hexagon])
    c, lam = complex(point.center), complex(point.ratio)
    r = abs(hexa[0] - c) * 0.85          # inside the inscribed disc
    y = c + r * np.sqrt(rng.random(4000)) * np.exp(2j * np.pi * rng.random(4000))
    sy = c + lam * (y - c)

    def pattern(z):
        return np.stack([classify_float(z, plus), classify_float(z + 1, plus)], axis=1)

    a, b = pattern(y), pattern(sy)
    sure = np.all(a != UNSURE, axis=1) & np.all(b != UNSURE, axis=1)
    assert sure.sum() > 3000
    assert (a[sure] == b[sure]).all()


def test_cache_covers_small_cells_near_the_point(layers, point):
    cache = _selfsim.PointCache([_overlay.make_layer(ZERO), _overlay.make_layer(-ONE)])
    cache.points.append(point)
    # descend towards the centre; deep enough cells fall inside S(K)
    cell = _overlay.root_cell()
    covered = False
    for _ in range(14):
        cell = next(k for k in cell.split() if _selfsim._finside(k.fpoly, [complex(CENTRE)], 0.0))
        covered = covered or cache.covers(cell)
    assert covered
