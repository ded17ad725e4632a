"""Compare the compiled (numba) and plain numpy paths of the float kernels.

    python benchmarks/bench_kernels.py [--points N] [--radius R] [--repeat K]

Point classification is timed in two subprocesses, one with
HATMARKOV_DISABLE_NUMBA=1, since the backend is fixed at import time.
The kite histogram has an explicit numpy twin and is timed in process.
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import timeit

CHILD = """
import json, sys, timeit
import numpy as np
from hatmarkov import backend
from hatmarkov.exactmath import LAMBDA
from hatmarkov.partition import classify_float, default_partition
n, repeat = int(sys.argv[1]), int(sys.argv[2])
P = default_partition()
rng = np.random.default_rng(0)
z = rng.random(n) * complex(LAMBDA.u) + rng.random(n) * complex(LAMBDA.v)
classify_float(z[:10], P)                       # compile / warm up
best = min(timeit.repeat(lambda: classify_float(z, P), number=1, repeat=repeat))
labs = classify_float(z, P)
print(json.dumps({"backend": backend(), "seconds": best, "checksum": int(np.sum(labs * np.arange(n) % 1000003))}))
"""


def classify_timing(n: int, repeat: int, disable: bool) -> dict:
    env = dict(os.environ)
    if disable:
        env["HATMARKOV_DISABLE_NUMBA"] = "1"
    else:
        env.pop("HATMARKOV_DISABLE_NUMBA", None)
    out = subprocess.run([sys.executable, "-c", CHILD, str(n), str(repeat)], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def histogram_timing(radius: int, repeat: int) -> tuple[float, float, bool]:
    import random

    import numpy as np

    from hatmarkov import _kernels
    from hatmarkov.hatgeom import HexWindow, coverage
    from hatmarkov.tiler import generate, random_offset

    cfg = generate(random_offset(random.Random(1)), HexWindow(radius))
    w = cfg.window
    coverage(cfg.labels, w, numba=_kernels.NUMBA)
    fast = min(timeit.repeat(lambda: coverage(cfg.labels, w, numba=_kernels.NUMBA), number=1, repeat=repeat))
    slow = min(timeit.repeat(lambda: coverage(cfg.labels, w, numba=False), number=1, repeat=repeat))
    same = np.array_equal(coverage(cfg.labels, w, numba=_kernels.NUMBA)[0], coverage(cfg.labels, w, numba=False)[0])
    return fast, slow, same


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=20000)
    ap.add_argument("--radius", type=int, default=80)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    jit = classify_timing(args.points, args.repeat, disable=False)
    py = classify_timing(args.points, args.repeat, disable=True)
    print(f"classify_float, {args.points} points")
    print(f"  {jit['backend']:>7}: {jit['seconds']:.4f} s")
    print(f"  {py['backend']:>7}: {py['seconds']:.4f} s")
    print(f"  speedup {py['seconds'] / jit['seconds']:.1f}x, labels identical: {jit['checksum'] == py['checksum']}")

    fast, slow, same = histogram_timing(args.radius, args.repeat)
    print(f"kite histogram, radius {args.radius}")
    print(f"  compiled: {fast:.4f} s")
    print(f"     numpy: {slow:.4f} s")
    print(f"  ratio {slow / fast:.1f}x, counts identical: {same}")


if __name__ == "__main__":
    main()
