"""hatmarkov command line: generate, render, verify, pairs, stats.

Exit codes: 0 success, 2 non-generic offset, 3 verification mismatch,
4 I/O or parse error.
"""
from __future__ import annotations

import argparse
import os
import random
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .exactmath import QuarticNumber, format_quartic, parse_quartic

EXIT_OK = 0
EXIT_NONGENERIC = 2
EXIT_MISMATCH = 3
EXIT_IO = 4

WORKERS_ENV = "HATMARKOV_WORKERS"


class UsageError(Exception):
    pass


def max_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "").strip()
    if not raw:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    if n < 1:
        raise UsageError(f"{WORKERS_ENV} must be a positive integer, got {raw!r}")
    return n


def parse_grid_offset(text: str) -> tuple[int, int]:
    """'1', '2', '1+xi', '-1+2xi', 'xi' or 'a,b' -> (a, b) meaning a + b*xi."""
    t = text.strip().replace(" ", "")
    if "," in t:
        a, b = t.split(",")
        return int(a), int(b)
    m = re.fullmatch(r"([+-]?\d*)\*?xi", t)
    if m:
        c = m.group(1)
        return 0, int(c + "1") if c in ("", "+", "-") else int(c)
    m = re.fullmatch(r"([+-]?\d+)(?:([+-])(\d*)\*?xi)?", t)
    if not m:
        raise UsageError(f"cannot read grid offset {text!r}")
    a = int(m.group(1))
    if m.group(2) is None:
        return a, 0
    b = int(m.group(3) or "1")
    return a, -b if m.group(2) == "-" else b


def format_grid(p: tuple[int, int]) -> str:
    a, b = p
    if b == 0:
        return str(a)
    bs = "xi" if abs(b) == 1 else f"{abs(b)}xi"
    if a == 0:
        return bs if b > 0 else "-" + bs
    return f"{a}{'+' if b > 0 else '-'}{bs}"


def _offset_from_args(args) -> QuarticNumber:
    if args.offset is not None:
        try:
            return parse_quartic(args.offset)
        except (ValueError, ZeroDivisionError) as e:
            raise UsageError(str(e))
    from .tiler import random_offset

    return random_offset(random.Random(args.seed))


def _partition(minus: bool):
    from .partition import default_partition, mirror_partition

    # geometric relabelling, so that --minus still yields valid tilings
    return mirror_partition(default_partition(), "geometric") if minus else default_partition()


def _write(path: str | None, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


# ------------------------------------------------------------ commands

def cmd_generate(args) -> int:
    from .hatgeom import HexWindow
    from .tiler import NonGenericOffset, dumps, generate

    x = _offset_from_args(args)
    try:
        cfg = generate(x, HexWindow(args.radius), P=_partition(args.minus))
    except NonGenericOffset as e:
        print(f"non-generic offset {format_quartic(x)}", file=sys.stderr)
        for a, b in e.points:
            print(f"worm point {a} {b}", file=sys.stderr)
        return EXIT_NONGENERIC
    _write(args.output, dumps(cfg))
    return EXIT_OK


def cmd_render(args) -> int:
    from . import fractal, render

    spec = render.RenderSpec(scale=args.scale, grid=not args.no_grid, kites=args.kites,
                             anchors=not args.no_anchors, labels=args.labels,
                             fractal_overlay=args.enclosures)
    if args.what == "config":
        from .tiler import loads

        cfg = loads(_read(args.input))
        pts = cfg.window.points() if cfg.window is not None else None
        svg = render.render_configuration(cfg.labels, spec, pts)
    elif args.what == "partition":
        from .partition import export_partition, parse_export

        text = _read(args.input) if args.input else export_partition(_partition(args.minus))
        svg = render.render_partition(parse_export(text), args.depth, spec)
    else:
        kind = fractal.BLUE if args.what == "blue" else fractal.RED
        svg = render.render_fractal(kind, args.depth, spec)
    _write(args.output, svg)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .hatgeom import HexWindow, validate
    from .symdyn import component_test, excluded_found
    from .tiler import loads

    cfg = loads(_read(args.input))
    window = cfg.window or HexWindow(max(max(abs(a), abs(b), abs(a + b)) for a, b in cfg.labels))
    rep = validate(cfg.labels, window)
    print(f"tiles {rep.tiles}")
    print(f"interior_kites {rep.interior_kites}")
    print(f"overlaps {len(rep.overlaps)}")
    print(f"gaps {len(rep.gaps)}")
    for m, n in rep.histogram.items():
        print(f"coverage {m} {n}")
    bad_pairs = excluded_found(cfg)
    print(f"excluded_pairs {len(bad_pairs)}")
    print(f"component {component_test(cfg)}")
    return EXIT_OK if rep.ok and not bad_pairs else EXIT_MISMATCH


def _pair_job(job):
    offset, geometric, depth = job
    from .hatgeom import overlap_pairs
    from .partition import pair_table

    off = QuarticNumber.grid(*offset)
    overlaps = overlap_pairs(offset)
    if geometric:
        res = pair_table(off, depth=depth, want=overlaps) if overlaps else None
    else:
        res = pair_table(off, depth=depth)
    return offset, overlaps, res


def _status(res, pair) -> str:
    from ._certify import Empty, Nonempty

    if res is None:
        return "empty"
    out = res.outcomes.get(pair)
    if isinstance(out, Nonempty):
        return "allowed"
    if isinstance(out, Empty):
        return "empty"
    return "unknown"


def cmd_pairs(args) -> int:
    offsets = [parse_grid_offset(o) for o in (args.offset or ["1", "1+xi", "2"])]
    jobs = [(o, args.geometric, args.depth) for o in offsets]
    n = min(max_workers(), len(jobs))
    if n > 1:
        with ProcessPoolExecutor(max_workers=n) as ex:
            results = list(ex.map(_pair_job, jobs))
    else:
        results = [_pair_job(j) for j in jobs]
    status = EXIT_OK
    for offset, overlaps, res in results:
        print(f"# offset {format_grid(offset)}")
        if args.geometric:
            print("# i j geometric certified")
            rows = sorted(overlaps)
            for i, j in rows:
                st = _status(res, (i, j))
                print(f"{i:+d} {j:+d} overlap {st}")
                if st != "empty":
                    status = EXIT_MISMATCH
        else:
            print("# i j certified geometric witness")
            unknown = res.unknown()
            rows = sorted(res.allowed())
            for i, j in rows:
                geo = "overlap" if (i and j and (i, j) in overlaps) else "free"
                w = format_quartic(res.outcomes[(i, j)].witness)
                print(f"{i:+d} {j:+d} allowed {geo} {w}")
                if geo == "overlap":
                    status = EXIT_MISMATCH
            for i, j in sorted(unknown):
                print(f"{i:+d} {j:+d} unknown - -")
                status = EXIT_MISMATCH
        print(f"# rows {len(rows)}")
    return status


def cmd_stats(args) -> int:
    from .hatgeom import HexWindow, anchored_fraction
    from .symdyn import PHI4, component_test, frequencies
    from .tiler import NonGenericOffset, generate

    x = _offset_from_args(args)
    try:
        cfg = generate(x, HexWindow(args.radius), P=_partition(args.minus))
    except NonGenericOffset as e:
        print(f"non-generic offset {format_quartic(x)}: {e}", file=sys.stderr)
        return EXIT_NONGENERIC
    f = frequencies(cfg)
    print(f"offset {format_quartic(x)}")
    print(f"radius {args.radius}")
    print(f"points {f.total}")
    print("# label count frequency")
    for lab in range(-6, 7):
        print(f"{lab:+d} {f.counts[lab]} {f.frequency(lab):.6f}")
    print(f"white {f.white:.6f}")
    print(f"anchored {anchored_fraction(cfg.labels, cfg.window):.6f}")
    print(f"positive {f.positive:.6f}")
    print(f"negative {f.negative:.6f}")
    print(f"ratio {f.ratio:.6f}")
    print(f"phi4 {PHI4:.6f}")
    print(f"component {component_test(cfg)}")
    return EXIT_OK


# ------------------------------------------------------------ entry point

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hatmarkov", description="Hat tilings from a Markov partition of the torus.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_offset(q):
        g = q.add_mutually_exclusive_group()
        g.add_argument("--offset", help="x as a,b,c,d rationals: (a + b phi) + (c + d phi) xi")
        g.add_argument("--seed", type=int, default=0, help="seed for a random rational offset")
        q.add_argument("--minus", action="store_true", help="use the mirrored partition P-")

    g = sub.add_parser("generate", help="write the configuration of an offset")
    add_offset(g)
    g.add_argument("--radius", type=int, default=10)
    g.add_argument("--output", "-o")
    g.set_defaults(func=cmd_generate)

    r = sub.add_parser("render", help="SVG of a configuration, the partition or a fractal curve")
    r.add_argument("what", choices=("config", "partition", "blue", "red"))
    r.add_argument("input", nargs="?", help="configuration file, or partition export (default: built in)")
    r.add_argument("--depth", type=int, default=5)
    r.add_argument("--scale", type=float, default=40.0)
    r.add_argument("--minus", action="store_true")
    r.add_argument("--no-grid", action="store_true")
    r.add_argument("--no-anchors", action="store_true")
    r.add_argument("--kites", action="store_true")
    r.add_argument("--labels", action="store_true")
    r.add_argument("--enclosures", action="store_true", help="draw the curve's enclosure")
    r.add_argument("--output", "-o")
    r.set_defaults(func=cmd_render)

    v = sub.add_parser("verify", help="check a configuration for overlaps, gaps and excluded pairs")
    v.add_argument("input")
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("pairs", help="certified and geometric pair tables")
    q.add_argument("--offset", action="append", help="grid offset such as 1, 1+xi, 2 (repeatable)")
    q.add_argument("--geometric", action="store_true", help="list geometrically overlapping pairs")
    q.add_argument("--depth", type=int, default=48)
    q.set_defaults(func=cmd_pairs)

    s = sub.add_parser("stats", help="label frequencies of a window")
    add_offset(s)
    s.add_argument("--radius", type=int, default=80)
    s.set_defaults(func=cmd_stats)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_IO
    if getattr(args, "command", None) == "render" and args.what == "config" and not args.input:
        print("render config needs an input file", file=sys.stderr)
        return EXIT_IO
    try:
        return args.func(args)
    except (OSError, UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
