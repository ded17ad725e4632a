"""Configurations w_x: label every grid point g by the region containing x + g."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np

from . import _certify
from .exactmath import QuarticNumber, format_quartic
from .hatgeom import GridPoint, HexWindow, grid_norm
from .partition import Partition, classify_grid, default_partition

FORMAT_NAME = "hatmarkov-configuration"
FORMAT_VERSION = 1


class NonGenericOffset(Exception):
    """Some x + g lies on (or too near to decide) a region boundary."""

    def __init__(self, points):
        self.points = list(points)
        shown = ", ".join(f"({a}, {b})" for a, b in self.points[:10])
        more = "" if len(self.points) <= 10 else f" and {len(self.points) - 10} more"
        super().__init__(f"undecided grid points: {shown}{more}")


class NotFound(Exception):
    def __init__(self, msg: str, certified: bool):
        super().__init__(msg)
        self.certified = certified      # True when the patch is proven impossible


@dataclass
class Configuration:
    labels: dict[GridPoint, int]
    offset: QuarticNumber | None = None
    window: HexWindow | None = None
    mirrored: bool = False

    def __getitem__(self, p: GridPoint) -> int:
        return self.labels[p]

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return (self.labels == other.labels and self.offset == other.offset
                and self.window == other.window and self.mirrored == other.mirrored)

    def pairs(self, step: GridPoint = (1, 0)) -> set[tuple[int, int]]:
        """(label(g), label(g + step)) over all g with both points present."""
        out = set()
        da, db = step
        for (a, b), l in self.labels.items():
            m = self.labels.get((a + da, b + db))
            if m is not None:
                out.add((l, m))
        return out


def mirror_configuration(cfg: Configuration) -> Configuration:
    """Complex conjugate of the tiling: the tile at g moves to conj(g) and is reflected."""
    from .hatgeom import conj_point
    from .partition import mirror_label_geometric

    labels = {conj_point(p): mirror_label_geometric(l) for p, l in cfg.labels.items()}
    win = None if cfg.window is None else HexWindow(cfg.window.radius, conj_point(cfg.window.center))
    return Configuration(labels, None if cfg.offset is None else cfg.offset.conj(), win, not cfg.mirrored)


def generate(x: QuarticNumber, window: HexWindow, max_depth: int = 64,
             P: Partition | None = None) -> Configuration:
    """Labels of x + g for every grid point g of the window."""
    P = P if P is not None else default_partition()
    pts = window.points()
    labs = _classify_points(x, pts, P, max_depth)
    return Configuration(dict(zip(pts, labs)), x, window, P.mirrored)


def _classify_points(x, pts, P, max_depth) -> list[int]:
    if not pts:
        return []
    a = np.array([p[0] for p in pts], np.int64)
    b = np.array([p[1] for p in pts], np.int64)
    labs, undecided = classify_grid(x, a, b, P, max_depth)
    if undecided.any():
        raise NonGenericOffset([pts[i] for i in np.nonzero(undecided)[0]])
    return [int(l) for l in labs]


def stream_generate(x: QuarticNumber, radii, center: GridPoint = (0, 0), max_depth: int = 64,
                    P: Partition | None = None) -> Iterator[dict[GridPoint, int]]:
    """Deltas for growing hexagonal windows: each yields the points new since the last radius."""
    P = P if P is not None else default_partition()
    done = -1
    for r in radii:
        if r <= done:
            continue
        ring = [p for p in HexWindow(r, center).points()
                if grid_norm((p[0] - center[0], p[1] - center[1])) > done]
        yield dict(zip(ring, _classify_points(x, ring, P, max_depth)))
        done = r


def random_offset(rng: random.Random, den: int = 10 ** 6) -> QuarticNumber:
    """A seeded rational offset; generic with overwhelming probability."""
    return QuarticNumber(Fraction(rng.randrange(den), den), 0, Fraction(rng.randrange(den), den), 0)


def find_offset(patch: Mapping[GridPoint, int], depth: int = 24) -> QuarticNumber:
    """Some x with label(x + g) = patch[g] for every g (P+ only)."""
    if not patch:
        raise ValueError("empty patch")
    pts = sorted(patch, key=lambda p: (p[1], p[0]))
    offsets = [QuarticNumber.grid(a, b) for a, b in pts]
    want = tuple(patch[p] for p in pts)
    res = _certify.pattern_table(offsets, depth=depth, want={want})
    out = res.outcomes[want]
    if isinstance(out, _certify.Nonempty):
        return out.witness
    if isinstance(out, _certify.Empty):
        raise NotFound("the patch does not occur in any configuration", certified=True)
    raise NotFound(f"undecided at depth {depth}", certified=False)


# ------------------------------------------------------------ file format

def _frac(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def dumps(cfg: Configuration) -> str:
    lines = [f"{FORMAT_NAME} {FORMAT_VERSION}"]
    if cfg.offset is not None:
        lines.append("offset " + " ".join(_frac(c) for c in cfg.offset.coeffs))
    if cfg.window is not None:
        lines.append(f"window hex {cfg.window.center[0]} {cfg.window.center[1]} {cfg.window.radius}")
    lines.append(f"partition {'minus' if cfg.mirrored else 'plus'}")
    lines.append(f"points {len(cfg.labels)}")
    for (a, b), l in sorted(cfg.labels.items(), key=lambda kv: (kv[0][1], kv[0][0])):
        lines.append(f"{a} {b} {l}")
    return "\n".join(lines) + "\n"


class FormatError(ValueError):
    pass


def loads(text: str) -> Configuration:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows:
        raise FormatError("empty file")
    head = rows[0].split()
    if len(head) != 2 or head[0] != FORMAT_NAME:
        raise FormatError("not a configuration file")
    if int(head[1]) != FORMAT_VERSION:
        raise FormatError(f"unsupported version {head[1]}")
    cfg = Configuration({})
    i = 1
    npts = None
    try:
        while i < len(rows) and npts is None:
            key, *rest = rows[i].split()
            if key == "offset":
                cfg.offset = QuarticNumber(*(Fraction(t) for t in rest))
            elif key == "window":
                if rest[0] != "hex":
                    raise FormatError(f"unknown window shape {rest[0]}")
                cfg.window = HexWindow(int(rest[3]), (int(rest[1]), int(rest[2])))
            elif key == "partition":
                cfg.mirrored = rest[0] == "minus"
            elif key == "points":
                npts = int(rest[0])
            else:
                raise FormatError(f"unknown field {key}")
            i += 1
        body = rows[i:]
        if npts is None or len(body) != npts:
            raise FormatError("point count does not match")
        for ln in body:
            a, b, l = (int(t) for t in ln.split())
            if not -6 <= l <= 6:
                raise FormatError(f"unknown label {l}")
            if (a, b) in cfg.labels:
                raise FormatError(f"grid point ({a}, {b}) listed twice")
            cfg.labels[(a, b)] = l
    except (IndexError, ValueError, ZeroDivisionError) as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(str(e)) from e
    return cfg


def describe_offset(x: QuarticNumber) -> str:
    return format_quartic(x)
