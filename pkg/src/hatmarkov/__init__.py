"""Hat tilings coded by a fractal Markov partition of the torus C/Lambda."""
from __future__ import annotations

from ._kernels import backend
from .exactmath import LAMBDA, PHI, XI, QuarticNumber
from .partition import classify, default_partition, intersect_shifted, mirror_partition
from .tiler import Configuration, NonGenericOffset, find_offset, generate

__version__ = "0.1.0"

__all__ = [
    "LAMBDA", "PHI", "XI", "QuarticNumber",
    "classify", "default_partition", "intersect_shifted", "mirror_partition",
    "Configuration", "NonGenericOffset", "find_offset", "generate",
    "backend",
]
