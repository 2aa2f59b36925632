"""Weyl sums and exact solution counting for power-sum Diophantine systems.

Covers the finite exponential sum S(a;N) = Sum_{n<=N} e(a1*n+...+ad*n^d),
the mean-value counts J (simultaneous power sums of degrees 1..d),
M (single degree-d equation) and T (permutation/diagonal count), a
deterministic Monte Carlo estimator of the coefficient-space integral
that J equals, and diagnostics for growth exponents and the ratio
power-sum bound.

Counting uses exact integer keys throughout; the meet-in-the-middle
route hashes half-tuple power sums, the brute route compares every pair
of half tuples.  Both are retained so they can oracle-check each other.
"""
from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DomainError, ResourceError
from .parallel import parallel_map
from .summation import kahan_combine

BRUTE_PAIR_LIMIT = 10 ** 9   # brute force examines N^(2h) ordered pairs
MITM_TUPLE_LIMIT = 10 ** 8   # meet-in-the-middle hashes N^h vectors
_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class WeylPolynomial:
    """P(x) = a1*x + a2*x^2 + ... + ad*x^d with nonnegative real coefficients."""

    degree: int
    coeffs: Tuple[float, ...]

    def __post_init__(self):
        if self.degree < 1:
            raise DomainError("WeylPolynomial degree must be >= 1")
        coeffs = tuple(float(c) for c in self.coeffs)
        if len(coeffs) != self.degree:
            raise DomainError(
                f"WeylPolynomial needs exactly {self.degree} coefficients, got {len(coeffs)}"
            )
        if any(not math.isfinite(c) or c < 0.0 for c in coeffs):
            raise DomainError("WeylPolynomial coefficients must be finite and >= 0")
        object.__setattr__(self, "coeffs", coeffs)

    def evaluate(self, n: float) -> float:
        total = 0.0
        for a in reversed(self.coeffs):
            total = total * n + a
        return total * n

    def frac_at(self, n: int) -> float:
        """P(n) mod 1 with each a_i*n^i reduced exactly before adding.

        Splitting a_i into its exact dyadic integer ratio keeps full
        precision even when a_i*n^i is far beyond 2^53.
        """
        acc = 0.0
        npow = 1
        for a in self.coeffs:
            npow *= n
            num, den = a.as_integer_ratio()
            acc += ((num * npow) % den) / den
        return math.fmod(acc, 1.0)


@dataclass(frozen=True)
class CountReport:
    h: int
    d: int
    n_max: int
    method: str  # brute | mitm | monte_carlo | exact
    count: Union[int, float]
    stderr: Optional[float]
    elapsed_seconds: float


def weyl_sum(p: WeylPolynomial, n_max: int, threads: int = 1) -> complex:
    """Sum_{n=1}^{n_max} e(P(n)), phases reduced mod 1 before exponentiation."""
    if n_max < 1:
        raise DomainError("weyl_sum requires n_max >= 1")

    def block(start: int) -> Tuple[float, float]:
        stop = min(start + 4096, n_max + 1)
        phases = np.array([p.frac_at(n) for n in range(start, stop)])
        ang = 2.0 * np.pi * phases
        return float(np.sum(np.cos(ang))), float(np.sum(np.sin(ang)))

    starts = list(range(1, n_max + 1, 4096))
    parts = parallel_map(block, starts, threads)
    re = kahan_combine(np.array([x for x, _ in parts]))
    im = kahan_combine(np.array([y for _, y in parts]))
    return complex(re, im)


def ratio_power_sum(k: int, l: int, p: WeylPolynomial, n_max: int,
                    threads: int = 1) -> complex:
    """Sum_{n=1}^{N} (k/l)^(i*P(n)): the Weyl sum with coefficients scaled by log(k/l)/(2*pi)."""
    if l < 1 or l >= k:
        raise DomainError("ratio_power_sum requires 1 <= l < k")
    scale = math.log(k / l) / (2.0 * math.pi)
    scaled = WeylPolynomial(p.degree, tuple(a * scale for a in p.coeffs))
    return weyl_sum(scaled, n_max, threads)


# ---------------------------------------------------------------------------
# Exact counting
# ---------------------------------------------------------------------------

def _np_half_keys(h: int, exponents: Sequence[int], n_max: int) -> np.ndarray:
    """(N^h, len(exponents)) int64 array of power-sum keys over all half tuples."""
    grids = np.indices((n_max,) * h).reshape(h, -1) + 1  # rows are x_1..x_h
    keys = np.zeros((grids.shape[1], len(exponents)), dtype=np.int64)
    for col, j in enumerate(exponents):
        acc = np.zeros(grids.shape[1], dtype=np.int64)
        for row in range(h):
            acc += grids[row].astype(np.int64) ** j
        keys[:, col] = acc
    return keys

def _py_half_keys(h: int, exponents: Sequence[int], n_max: int) -> List[Tuple[int, ...]]:
    """Object fallback for keys that would overflow int64."""
    keys = []
    for tup in itertools.product(range(1, n_max + 1), repeat=h):
        keys.append(tuple(sum(x ** j for x in tup) for j in exponents))
    return keys

# Above this many half tuples, enumerate in blocks over the first
# coordinate instead of one giant grid (memory stays O(N^(h-1))).
_SINGLE_SHOT_LIMIT = 4_000_000

def _half_key_counts(h: int, exponents: Sequence[int], n_max: int) -> Dict[tuple, int]:
    """Multiplicity of each power-sum key over the N^h half tuples."""
    if h * n_max ** max(exponents) >= _INT64_SAFE:
        counts: Dict[tuple, int] = {}
        for key in _py_half_keys(h, exponents, n_max):
            counts[key] = counts.get(key, 0) + 1
        return counts
    if h == 1 or n_max ** h <= _SINGLE_SHOT_LIMIT:
        keys = _np_half_keys(h, exponents, n_max)
        uniq, counts_arr = np.unique(keys, axis=0, return_counts=True)
        return {tuple(int(v) for v in row): int(c)
                for row, c in zip(uniq, counts_arr)}
    sub = _np_half_keys(h - 1, exponents, n_max)
    merged: Dict[tuple, int] = {}
    for v in range(1, n_max + 1):
        offset = np.array([v ** j for j in exponents], dtype=np.int64)
        uniq, counts_arr = np.unique(sub + offset, axis=0, return_counts=True)
        for row, c in zip(uniq, counts_arr):
            key = tuple(int(x) for x in row)
            merged[key] = merged.get(key, 0) + int(c)
    return merged

def count_J(h: int, d: int, n_max: int, method: str = "mitm") -> CountReport:
    """Count 2h-tuples in [1,N]^{2h} whose halves share all power sums of degree 1..d."""
    return _counted(h, d, n_max, method, tuple(range(1, d + 1)))

def count_M(h: int, d: int, n_max: int, method: str = "mitm") -> CountReport:
    """Count 2h-tuples whose halves share the single degree-d power sum."""
    return _counted(h, d, n_max, method, (d,))

def _counted(h: int, d: int, n_max: int, method: str,
             exponents: Sequence[int]) -> CountReport:
    if h < 1 or d < 1 or n_max < 1:
        raise DomainError("counting requires h >= 1, d >= 1, n_max >= 1")
    if method not in ("brute", "mitm"):
        raise DomainError(f"unknown counting method: {method!r}")
    half = n_max ** h
    start = time.perf_counter()
    if method == "brute":
        pairs = half * half
        if pairs > BRUTE_PAIR_LIMIT:
            raise ResourceError(
                f"brute force needs {pairs} pair comparisons, limit {BRUTE_PAIR_LIMIT}"
            )
        if h * n_max ** max(exponents) < _INT64_SAFE:
            keys = _np_half_keys(h, exponents, n_max)
            total = 0
            for i in range(keys.shape[0]):
                total += int(np.sum(np.all(keys == keys[i], axis=1)))
        else:
            keys = _py_half_keys(h, exponents, n_max)
            total = sum(1 for a in keys for b in keys if a == b)
    else:
        if half > MITM_TUPLE_LIMIT:
            raise ResourceError(
                f"meet-in-the-middle needs {half} hashed vectors, limit {MITM_TUPLE_LIMIT}"
            )
        counts = _half_key_counts(h, exponents, n_max)
        total = sum(c * c for c in counts.values())
    elapsed = time.perf_counter() - start
    return CountReport(h=h, d=d, n_max=n_max, method=method, count=total,
                       stderr=None, elapsed_seconds=elapsed)


def _partitions(n: int, largest: int | None = None):
    """Integer partitions of n as non-increasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def count_T(h: int, n_max: int) -> CountReport:
    """Count of 2h-tuples whose halves are permutations of each other.

    Computed combinatorially: for each multiplicity pattern (partition
    of h), the number of value assignments times the squared number of
    orderings.
    """
    if h < 1 or n_max < 1:
        raise DomainError("count_T requires h >= 1, n_max >= 1")
    start = time.perf_counter()
    total = 0
    for part in _partitions(h):
        k = len(part)
        if k > n_max:
            continue
        assignments = math.perm(n_max, k)
        for size, reps in _multiplicities(part).items():
            assignments //= math.factorial(reps)
        orderings = math.factorial(h)
        for c in part:
            orderings //= math.factorial(c)
        total += assignments * orderings * orderings
    elapsed = time.perf_counter() - start
    return CountReport(h=h, d=1, n_max=n_max, method="exact", count=total,
                       stderr=None, elapsed_seconds=elapsed)


def _multiplicities(part: Tuple[int, ...]) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for c in part:
        out[c] = out.get(c, 0) + 1
    return out


# ---------------------------------------------------------------------------
# Monte Carlo estimator of the mean-value integral
# ---------------------------------------------------------------------------

def mc_mean_value(h: int, d: int, n_max: int, samples: int, seed: int,
                  threads: int = 1) -> CountReport:
    """Monte Carlo estimate of the [0,1]^d integral of |S(a;N)|^(2h).

    Counter-based generator (Philox) keyed by the seed: the sample
    stream is a pure function of (seed, samples), and chunked evaluation
    keeps the reduction order fixed, so results are independent of the
    thread count.
    """
    if h < 1 or d < 1 or n_max < 1:
        raise DomainError("mc_mean_value requires h >= 1, d >= 1, n_max >= 1")
    if samples < 1000:
        raise DomainError("mc_mean_value requires samples >= 1000")
    if d * float(n_max) ** d > 2.0 ** 52:
        raise ResourceError(
            "mc_mean_value phases exceed exact float range; reduce n_max or d"
        )
    start = time.perf_counter()
    rng = np.random.Generator(np.random.Philox(key=seed))
    a = rng.random((samples, d))
    n = np.arange(1, n_max + 1, dtype=np.float64)
    powers = np.vstack([n ** j for j in range(1, d + 1)])  # (d, N)

    chunk = 1 << 14
    starts = list(range(0, samples, chunk))

    def block(s0: int) -> Tuple[float, float]:
        blk = a[s0:s0 + chunk]
        phases = blk @ powers
        z = np.exp(2j * np.pi * phases).sum(axis=1)
        v = np.abs(z) ** (2 * h)
        return float(np.sum(v)), float(np.sum(v * v))

    parts = parallel_map(block, starts, threads)
    sv = kahan_combine(np.array([x for x, _ in parts]))
    svv = kahan_combine(np.array([y for _, y in parts]))
    mean = sv / samples
    var = max(0.0, (svv - sv * sv / samples) / (samples - 1))
    stderr = math.sqrt(var / samples)
    elapsed = time.perf_counter() - start
    return CountReport(h=h, d=d, n_max=n_max, method="monte_carlo", count=mean,
                       stderr=stderr, elapsed_seconds=elapsed)


# ---------------------------------------------------------------------------
# Diagnostics
# ---------------------------------------------------------------------------

def growth_exponent(h: int, d: int, n_list: Sequence[int], threads: int = 1) -> float:
    """Least-squares slope of log J_{h,d}(N) against log N over the given N."""
    ns = [int(n) for n in n_list]
    if len(ns) < 4:
        raise DomainError("growth_exponent needs at least 4 values of N")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError("growth_exponent requires strictly increasing N")
    counts = parallel_map(lambda n: count_J(h, d, n, method="mitm").count, ns, threads)
    return float(np.polyfit(np.log(np.array(ns, dtype=float)),
                            np.log(np.array(counts, dtype=float)), 1)[0])


def flm_ratio(p: WeylPolynomial, m_bound: int, mu: float, eps: float,
              n_max: int, k: int, l: int) -> float:
    """Ratio power-sum diagnostic: |Sum (k/l)^{iP(n)}|^{d(d+1)} over the
    envelope ((floor(M/(2 pi) * log(k/l)) + 1)/log(k/l))^d * N^{d(d+1)/2 + 1 + 2 mu d + 3 eps}.

    Sampled diagnostic only: the envelope's unknown constant is omitted,
    so only relative sizes across inputs are meaningful.
    """
    if m_bound < 1:
        raise DomainError("flm_ratio requires m_bound >= 1")
    if any(c > m_bound for c in p.coeffs):
        raise DomainError("flm_ratio requires all coefficients <= m_bound")
    if not (mu > 0.0 and math.isfinite(mu)):
        raise DomainError("flm_ratio requires mu > 0")
    if eps < 0.0:
        raise DomainError("flm_ratio requires eps >= 0")
    if n_max < 1:
        raise DomainError("flm_ratio requires n_max >= 1")
    if l < 1 or l >= k:
        raise DomainError("flm_ratio requires 1 <= l < k")
    d = p.degree
    k_cap = (2.0 * d * m_bound * float(n_max) ** d) ** mu
    if k > k_cap:
        raise DomainError(f"flm_ratio: k={k} exceeds allowed range (2dMN^d)^mu = {k_cap:.6g}")
    log_ratio = math.log(k / l)
    lhs = abs(ratio_power_sum(k, l, p, n_max)) ** (d * (d + 1))
    envelope = ((math.floor(m_bound / (2.0 * math.pi) * log_ratio) + 1) / log_ratio) ** d
    envelope *= float(n_max) ** (d * (d + 1) / 2.0 + 1.0 + 2.0 * mu * d + 3.0 * eps)
    return lhs / envelope
