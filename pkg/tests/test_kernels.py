from __future__ import annotations

import json
import os
import subprocess
import sys

import numpy as np

from hatmarkov import _kernels
from hatmarkov.exactmath import LAMBDA
from hatmarkov.partition import classify_float

SCRIPT = """
import json, numpy as np
from hatmarkov import backend
from hatmarkov.exactmath import LAMBDA
from hatmarkov.partition import classify_float, default_partition
rng = np.random.default_rng(0)
z = rng.random(2000) * complex(LAMBDA.u) + rng.random(2000) * complex(LAMBDA.v)
print(json.dumps([backend(), classify_float(z, default_partition()).tolist()]))
"""


def test_disabled_numba_gives_the_same_labels(plus):
    env = dict(os.environ, HATMARKOV_DISABLE_NUMBA="1")
    r = subprocess.run([sys.executable, "-c", SCRIPT], capture_output=True, text=True, env=env, timeout=600)
    assert r.returncode == 0, r.stderr
    name, labels = json.loads(r.stdout)
    assert name == "python"
    rng = np.random.default_rng(0)
    z = rng.random(2000) * complex(LAMBDA.u) + rng.random(2000) * complex(LAMBDA.v)
    assert classify_float(z, plus).tolist() == labels


def test_backend_name():
    assert _kernels.backend() in ("numba", "python")


def test_unsure_near_boundaries(plus):
    # points right on a region boundary must never get a confident label
    z = np.array([0j, 0.5 + 0.75 ** 0.5 * 1j, complex(LAMBDA.u)])
    assert (classify_float(z, plus) == _kernels.UNSURE).all()
