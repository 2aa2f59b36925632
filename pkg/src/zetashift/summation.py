"""Deterministic compensated summation helpers.

Two regimes:

* small/medium streams of Python scalars -> math.fsum (exactly rounded,
  independent of summation order);
* large numpy arrays -> fixed-size chunks reduced in ascending index
  order with Kahan compensation across chunk partial sums.

Both give results that do not depend on how work was split across
threads, which is what the determinism contract needs.
"""
from __future__ import annotations

import math
from typing import Iterable

import numpy as np

# Chunk size for array reductions.  Fixed (never derived from thread
# count) so the reduction tree is identical for any pool size.
CHUNK = 1 << 14


def fsum(values: Iterable[float]) -> float:
    """Exactly rounded sum of a stream of floats."""
    return math.fsum(values)


def fsum_complex(values: Iterable[complex]) -> complex:
    vals = list(values)
    return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))


def kahan_combine(partials: np.ndarray) -> float:
    """Kahan-compensated left-to-right sum of chunk partials."""
    total = 0.0
    comp = 0.0
    for x in partials:
        y = float(x) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def chunked_sum(a: np.ndarray) -> float:
    """Sum a 1-D float array: per-chunk pairwise numpy sums, Kahan across chunks."""
    if a.size == 0:
        return 0.0
    partials = np.add.reduceat(a, np.arange(0, a.size, CHUNK))
    return kahan_combine(partials)


def chunked_csum(a: np.ndarray) -> complex:
    """Complex analogue of chunked_sum (real and imaginary parts independently)."""
    if a.size == 0:
        return 0j
    idx = np.arange(0, a.size, CHUNK)
    re = np.add.reduceat(a.real, idx)
    im = np.add.reduceat(a.imag, idx)
    return complex(kahan_combine(re), kahan_combine(im))
