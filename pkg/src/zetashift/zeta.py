"""Reference evaluator for the Riemann zeta function in the half-plane sigma > 0.

Two evaluation routes:

* Euler-Maclaurin: truncated Dirichlet sum to a cutoff M that grows
  linearly with |t|, plus the integral/endpoint corrections and an even
  number of Bernoulli-term corrections.  Works for any sigma > 0, s != 1.
* Tail-bounded Dirichlet: plain truncated sum for sigma > 1 where the
  monotone tail integral bound X^(1-sigma)/(sigma-1) prescribes the
  cutoff for a requested tolerance.  Cost is independent of t, which is
  what makes large moment averages affordable.

All sums are reduced in fixed chunk order (see summation module) so
results are bit-identical for any thread count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericalError, ResourceError
from .parallel import parallel_map
from .summation import CHUNK, chunked_csum, chunked_sum, kahan_combine

# Hard ceiling on the number of Dirichlet terms a single evaluation may
# use (either route).  Beyond this the request is declared infeasible
# instead of silently taking hours: e.g. sigma=1.5 with tail tolerance
# 1e-8 would need X ~ 4e16 terms.
MAX_TERMS = 1 << 26

# Bernoulli numbers B_2 .. B_30, exact.
_BERNOULLI = {
    2: Fraction(1, 6), 4: Fraction(-1, 30), 6: Fraction(1, 42), 8: Fraction(-1, 30),
    10: Fraction(5, 66), 12: Fraction(-691, 2730), 14: Fraction(7, 6),
    16: Fraction(-3617, 510), 18: Fraction(43867, 798), 20: Fraction(-174611, 330),
    22: Fraction(854513, 138), 24: Fraction(-236364091, 2730), 26: Fraction(8553103, 6),
    28: Fraction(-23749461029, 870), 30: Fraction(8615841276005, 14322),
}
MAX_BERNOULLI_ORDER = max(_BERNOULLI)
_BERNOULLI_F = {k: float(v) for k, v in _BERNOULLI.items()}


@dataclass(frozen=True)
class EvalPoint:
    """A point s = sigma + i*t."""

    sigma: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and math.isfinite(self.t)):
            raise DomainError("EvalPoint requires finite sigma and t")

    def as_complex(self) -> complex:
        return complex(self.sigma, self.t)


@dataclass(frozen=True)
class ZetaEvalConfig:
    """Evaluator settings.

    method: "euler_maclaurin" or "dirichlet_tail_bounded".
    em_terms_per_unit_t: cutoff multiplier, M = max(30, ceil(mult*|t|)).
    bernoulli_order: even K; K/2 Bernoulli correction terms are applied.
    tail_tolerance: truncation bound for the tail-bounded route.
    """

    method: str = "euler_maclaurin"
    em_terms_per_unit_t: float = 2.0 / math.pi
    bernoulli_order: int = 12
    tail_tolerance: float = 1e-6

    def __post_init__(self):
        if self.method not in ("euler_maclaurin", "dirichlet_tail_bounded"):
            raise DomainError(f"unknown evaluation method: {self.method!r}")
        if not (self.em_terms_per_unit_t >= 1.0 / math.pi):
            raise DomainError("em_terms_per_unit_t must be >= 1/pi")
        k = self.bernoulli_order
        if k < 2 or k % 2 != 0:
            raise DomainError("bernoulli_order must be even and >= 2")
        if k > MAX_BERNOULLI_ORDER:
            raise DomainError(f"bernoulli_order supported up to {MAX_BERNOULLI_ORDER}")
        if not (0.0 < self.tail_tolerance < 1.0):
            raise DomainError("tail_tolerance must lie in (0, 1)")


DEFAULT_CONFIG = ZetaEvalConfig()


def _point(s) -> EvalPoint:
    if isinstance(s, EvalPoint):
        return s
    sigma, t = s
    return EvalPoint(float(sigma), float(t))


@lru_cache(maxsize=4)
def _term_basis(n_terms: int):
    """Cached (log n, n^) basis for repeated fixed-cutoff sums, n = 1..n_terms."""
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    logn = np.log(n)
    logn.flags.writeable = False
    n.flags.writeable = False
    return n, logn


@lru_cache(maxsize=4)
def _term_weights(sigma: float, n_terms: int):
    n, _ = _term_basis(n_terms)
    w = n ** (-sigma)
    w.flags.writeable = False
    return w


# Fixed-cutoff sums up to this size go through the cached basis; larger
# ones stream chunk by chunk to bound memory.
_CACHE_LIMIT = 1 << 18


def _power_sum(sigma: float, t: float, n_terms: int, threads: int = 1) -> complex:
    """Deterministic Sum_{n=1}^{n_terms} n^(-sigma-i t)."""
    if n_terms <= 0:
        return 0j
    if n_terms <= _CACHE_LIMIT:
        _, logn = _term_basis(n_terms)
        w = _term_weights(sigma, n_terms)
        if t == 0.0:
            return complex(chunked_sum(w), 0.0)
        return chunked_csum(w * np.exp(-1j * t * logn))

    starts = list(range(1, n_terms + 1, CHUNK))

    def chunk_sum(start: int) -> complex:
        stop = min(start + CHUNK, n_terms + 1)
        n = np.arange(start, stop, dtype=np.float64)
        terms = n ** (-sigma) * np.exp(-1j * t * np.log(n))
        return complex(np.sum(terms))

    partials = parallel_map(chunk_sum, starts, threads)
    re = kahan_combine(np.array([p.real for p in partials]))
    im = kahan_combine(np.array([p.imag for p in partials]))
    return complex(re, im)


def _bernoulli_correction(s: complex, cutoff: int, order: int) -> complex:
    """Sum of the K/2 Bernoulli correction terms at the given cutoff.

    Terms must decrease in magnitude; the series is asymptotic, so a
    growing term means the (M, K) pair cannot deliver the result.
    """
    total = 0j
    poch = s  # s(s+1)...(s+2k-2), starting at k=1
    prev = math.inf
    m = float(cutoff)
    for k in range(1, order // 2 + 1):
        term = (_BERNOULLI_F[2 * k] / math.factorial(2 * k)) * poch * m ** (-s - 2 * k + 1)
        if abs(term) > prev:
            raise NumericalError(
                "eval_zeta: Bernoulli corrections stopped decreasing "
                f"(cutoff {cutoff}, order {order})"
            )
        prev = abs(term)
        total += term
        poch *= (s + 2 * k - 1) * (s + 2 * k)
    return total


def _euler_maclaurin(point: EvalPoint, cfg: ZetaEvalConfig, threads: int) -> complex:
    cutoff = max(30, math.ceil(cfg.em_terms_per_unit_t * abs(point.t)))
    if cutoff > MAX_TERMS:
        raise ResourceError(
            f"eval_zeta: Euler-Maclaurin cutoff {cutoff} exceeds limit {MAX_TERMS}"
        )
    s = point.as_complex()
    m = float(cutoff)
    value = _power_sum(point.sigma, point.t, cutoff, threads)
    value += m ** (1 - s) / (s - 1) - 0.5 * m ** (-s)
    value += _bernoulli_correction(s, cutoff, cfg.bernoulli_order)
    return value


def tail_cutoff(sigma: float, tolerance: float) -> int:
    """Smallest X with X^(1-sigma)/(sigma-1) <= tolerance (sigma > 1)."""
    if sigma <= 1.0:
        raise DomainError("tail-bounded mode requires sigma > 1")
    log_x = -math.log(tolerance * (sigma - 1.0)) / (sigma - 1.0)
    if log_x > math.log(MAX_TERMS):
        raise ResourceError(
            f"eval_zeta: tail cutoff exp({log_x:.1f}) exceeds limit {MAX_TERMS} "
            f"(sigma={sigma}, tolerance={tolerance})"
        )
    x = max(1, math.ceil(math.exp(log_x)))
    while x ** (1.0 - sigma) / (sigma - 1.0) > tolerance:
        x += 1
    return x


def eval_zeta(s, cfg: ZetaEvalConfig = DEFAULT_CONFIG, threads: int = 1) -> complex:
    """zeta(s) for sigma > 0, s != 1, by the configured route.

    Absolute error: ~1e-10 or better for the Euler-Maclaurin defaults at
    |t| up to 1e5; bounded by tail_tolerance for the tail-bounded route.
    """
    point = _point(s)
    if point.sigma <= 0.0:
        raise DomainError("eval_zeta requires sigma > 0")
    if point.sigma == 1.0 and point.t == 0.0:
        raise DomainError("eval_zeta: pole at s = 1")
    if cfg.method == "dirichlet_tail_bounded":
        if point.sigma <= 1.0:
            raise DomainError("dirichlet_tail_bounded requires sigma > 1")
        x = tail_cutoff(point.sigma, cfg.tail_tolerance)
        return _power_sum(point.sigma, point.t, x, threads)
    return _euler_maclaurin(point, cfg, threads)


def dirichlet_partial_sum(s, cutoff: float, threads: int = 1) -> complex:
    """Sum_{n=1}^{floor(cutoff)} n^(-s); zero when cutoff < 1."""
    point = _point(s)
    if not math.isfinite(cutoff):
        raise DomainError("dirichlet_partial_sum requires a finite cutoff")
    n_terms = math.floor(cutoff)
    if n_terms < 1:
        return 0j
    if n_terms > MAX_TERMS:
        raise ResourceError(
            f"dirichlet_partial_sum: cutoff {n_terms} exceeds limit {MAX_TERMS}"
        )
    return _power_sum(point.sigma, point.t, n_terms, threads)
