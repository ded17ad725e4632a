from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# offset-1 pairs (i, j) with (p_i + 1) meeting p_j, transcribed by hand
OFFSET1_PAIRS = frozenset({
    (1, 6), (2, 2), (2, 5), (2, 6), (3, 1), (3, 2), (3, 4), (3, 5),
    (4, 2), (4, 3), (4, 6), (5, 1), (5, 5), (5, 6), (6, 1),
    (1, -6), (4, -5), (5, -2), (5, -3), (5, -4),
    (-1, 2), (-2, 1), (-3, 4), (-5, 2), (-6, 2),
    (0, 0), (0, 1), (0, 3), (0, 4), (0, 6), (0, -1),
    (1, 0), (3, 0), (4, 0), (6, 0), (-4, 0),
})

# tile pairs anchored at 0 and 1 + xi that share area
OVERLAP_1XI = frozenset({
    (1, 4), (1, -6), (1, -5), (6, -5), (-3, 4), (-2, 4), (-2, 3), (-2, -5),
})
OVERLAP_2 = frozenset({(-1, 4), (1, -4)})

# 25-label patch of a generated tiling: grid point (a, b) -> label
GOLDEN_PATCH = {
    (-3, 4): 0, (1, 3): 0, (1, 1): 0, (-2, 2): 0, (-1, 2): 0, (-1, 1): 0,
    (-2, 4): 4, (-1, 4): 3, (0, 4): 2, (1, 4): 5, (-2, 3): 5, (-1, 3): -2,
    (0, 3): 1, (2, 3): 6, (0, 2): 3, (1, 2): 4, (2, 2): 3, (0, 1): 3,
    (2, 1): -1, (3, 1): 2, (-1, 0): 4, (0, 0): 3, (1, 0): 2, (2, 0): 2,
    (3, 0): 6,
}

_ACCEPTANCE: list[tuple[int, str, bool, float]] = []


def record_acceptance(number: int, title: str, ok: bool, seconds: float) -> None:
    _ACCEPTANCE.append((number, title, ok, seconds))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, seconds in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'} ({seconds:7.1f} s)  {title}")


@pytest.fixture(scope="session")
def plus():
    from hatmarkov.partition import default_partition

    return default_partition()
