"""Second-moment experiments for zeta along polynomial shifts.

The discrete experiment averages |zeta(s + i*P(n))|^2 over n <= N and
compares against the generic limit zeta(2*sigma).  For sigma > 1 and
coefficients built from 2*pi*m_i/log(k0/l0) the average instead locks
onto the larger resonant limit, computed here by a truncated geometric
series over the exponent u of the ratio (k0/l0)^u.  A continuous-time
quadrature cross-check and the Weyl-sum equidistribution ratio round
out the toolkit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, ResourceError
from .parallel import parallel_map
from .summation import fsum
from .weylcount import WeylPolynomial, weyl_sum
from .zeta import (DEFAULT_CONFIG, EvalPoint, ZetaEvalConfig, _point,
                   eval_zeta, tail_cutoff)

DEFAULT_BUDGET = 2 * 10 ** 8  # estimated Dirichlet terms across a whole run


@dataclass(frozen=True)
class MomentExperiment:
    s: EvalPoint
    p: WeylPolynomial
    n_schedule: Tuple[int, ...]
    eval_cfg: ZetaEvalConfig = DEFAULT_CONFIG
    seed: int = 42  # only used when coefficients are sampled

    def __post_init__(self):
        if self.s.sigma <= 0.5:
            raise DomainError("MomentExperiment requires sigma > 1/2")
        sched = tuple(int(n) for n in self.n_schedule)
        if len(sched) == 0 or sched[0] < 1:
            raise DomainError("n_schedule must contain positive checkpoints")
        if any(b <= a for a, b in zip(sched, sched[1:])):
            raise DomainError("n_schedule must be strictly increasing")
        object.__setattr__(self, "n_schedule", sched)


@dataclass(frozen=True)
class ResonantSpec:
    k0: int
    l0: int
    m: Tuple[int, ...]
    sigma: float
    t: float = 0.0
    truncation_tolerance: float = 1e-10

    def __post_init__(self):
        if self.k0 < 1 or self.l0 < 1:
            raise DomainError("ResonantSpec requires k0, l0 >= 1")
        if self.k0 == self.l0:
            raise DomainError("ResonantSpec requires k0 != l0 (log ratio vanishes)")
        if math.gcd(self.k0, self.l0) != 1:
            raise DomainError("ResonantSpec requires gcd(k0, l0) = 1")
        m = tuple(int(v) for v in self.m)
        if len(m) == 0 or all(v == 0 for v in m):
            raise DomainError("ResonantSpec requires m not all zero")
        object.__setattr__(self, "m", m)
        if not (self.sigma > 1.0):
            raise DomainError("ResonantSpec requires sigma > 1")
        if not (self.truncation_tolerance > 0.0):
            raise DomainError("truncation_tolerance must be positive")


@dataclass(frozen=True)
class MomentResult:
    n: int
    average: float
    target: float
    abs_dev: float


def _shift_values(p: WeylPolynomial, n_max: int) -> np.ndarray:
    """P(n) for n = 1..n_max as floats."""
    n = np.arange(1, n_max + 1, dtype=np.float64)
    total = np.zeros_like(n)
    for a in reversed(p.coeffs):
        total = total * n + a
    return total * n


def _estimated_cost(sigma: float, t0: float, p: WeylPolynomial, n_max: int,
                    cfg: ZetaEvalConfig) -> float:
    """Dirichlet-term cost model: tail cutoff per point, or the E-M cutoff sum."""
    if cfg.method == "dirichlet_tail_bounded":
        return float(n_max) * tail_cutoff(sigma, cfg.tail_tolerance)
    t_vals = np.abs(t0 + _shift_values(p, n_max))
    return float(np.sum(np.maximum(30.0, np.ceil(cfg.em_terms_per_unit_t * t_vals))))


def _moment_values(point: EvalPoint, p: WeylPolynomial, n_max: int,
                   cfg: ZetaEvalConfig, threads: int) -> List[float]:
    """|zeta(s + i*P(n))|^2 for n = 1..n_max, in order."""
    shifts = _shift_values(p, n_max)

    def block(start: int) -> List[float]:
        out = []
        for idx in range(start, min(start + 256, n_max)):
            z = eval_zeta(EvalPoint(point.sigma, point.t + shifts[idx]), cfg)
            out.append(z.real * z.real + z.imag * z.imag)
        return out

    blocks = parallel_map(block, list(range(0, n_max, 256)), threads)
    return [v for blk in blocks for v in blk]


def discrete_moment(exp: MomentExperiment, budget: float = DEFAULT_BUDGET,
                    threads: int = 1) -> List[MomentResult]:
    """Averages (1/N) Sum |zeta(s+iP(n))|^2 at each checkpoint vs zeta(2*sigma).

    Prefix sums are shared across checkpoints, so the largest checkpoint
    dictates the cost.  The cost model is checked against the budget
    before any evaluation starts.
    """
    n_max = exp.n_schedule[-1]
    cost = _estimated_cost(exp.s.sigma, exp.s.t, exp.p, n_max, exp.eval_cfg)
    if cost > budget:
        raise ResourceError(
            f"discrete_moment: estimated cost {cost:.3g} terms exceeds budget {budget:.3g}"
        )
    target = eval_zeta(EvalPoint(2.0 * exp.s.sigma, 0.0)).real
    values = _moment_values(exp.s, exp.p, n_max, exp.eval_cfg, threads)
    results = []
    for n in exp.n_schedule:
        avg = fsum(values[:n]) / n
        results.append(MomentResult(n=n, average=avg, target=target,
                                    abs_dev=abs(avg - target)))
    return results


def continuous_moment(s, a: float, big_t: float, quad_step: float = 0.05,
                      cfg: ZetaEvalConfig = DEFAULT_CONFIG,
                      budget: float = DEFAULT_BUDGET,
                      threads: int = 1) -> MomentResult:
    """(1/T) Integral_0^T |zeta(s+i*a*tau)|^2 dtau by composite trapezoid.

    Same zeta(2*sigma) target as the discrete experiment; the result's n
    field holds the number of quadrature panels.
    """
    point = _point(s)
    if point.sigma <= 0.5:
        raise DomainError("continuous_moment requires sigma > 1/2")
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError("continuous_moment requires a > 0")
    if big_t < 100.0:
        raise DomainError("continuous_moment requires T >= 100")
    if not (0.0 < quad_step <= big_t):
        raise DomainError("quad_step must lie in (0, T]")
    panels = max(1, round(big_t / quad_step))
    step = big_t / panels
    if cfg.method == "dirichlet_tail_bounded":
        cost = (panels + 1.0) * tail_cutoff(point.sigma, cfg.tail_tolerance)
    else:
        mean_t = abs(point.t) + a * big_t / 2.0
        cost = (panels + 1.0) * max(30.0, cfg.em_terms_per_unit_t * mean_t)
    if cost > budget:
        raise ResourceError(
            f"continuous_moment: estimated cost {cost:.3g} terms exceeds budget {budget:.3g}"
        )

    def block(start: int) -> List[float]:
        out = []
        for i in range(start, min(start + 256, panels + 1)):
            z = eval_zeta(EvalPoint(point.sigma, point.t + a * step * i), cfg)
            out.append(z.real * z.real + z.imag * z.imag)
        return out

    blocks = parallel_map(block, list(range(0, panels + 1, 256)), threads)
    g = [v for blk in blocks for v in blk]
    avg = (fsum(g[1:-1]) + 0.5 * (g[0] + g[-1])) / panels
    target = eval_zeta(EvalPoint(2.0 * point.sigma, 0.0)).real
    return MomentResult(n=panels, average=avg, target=target,
                        abs_dev=abs(avg - target))


def resonant_coeffs(spec: ResonantSpec) -> WeylPolynomial:
    """Coefficients a_i = 2*pi*m_i / log(k0/l0)."""
    if spec.k0 == spec.l0:
        raise DomainError("resonant_coeffs requires k0 != l0")
    scale = 2.0 * math.pi / math.log(spec.k0 / spec.l0)
    return WeylPolynomial(len(spec.m), tuple(v * scale for v in spec.m))


def enumerate_U(k0: int, l0: int, bound: int) -> List[Tuple[int, int, int]]:
    """All pairs k < l <= bound with l/k = (k0/l0)^u for some u >= 1.

    These are (m*l0^u, m*k0^u) for m >= 1; returned as (k, l, u) sorted
    by (l, k).
    """
    if k0 <= l0 or l0 < 1:
        raise DomainError("enumerate_U requires k0 > l0 >= 1")
    if math.gcd(k0, l0) != 1:
        raise DomainError("enumerate_U requires gcd(k0, l0) = 1")
    if bound < 1:
        raise DomainError("enumerate_U requires bound >= 1")
    pairs = []
    u = 1
    while k0 ** u <= bound:
        lo_pow, hi_pow = l0 ** u, k0 ** u
        for m in range(1, bound // hi_pow + 1):
            pairs.append((m * lo_pow, m * hi_pow, u))
        u += 1
    pairs.sort(key=lambda kl: (kl[1], kl[0]))
    return pairs


def _resonant_series(spec: ResonantSpec) -> Tuple[float, int]:
    """Truncated resonant limit and the number of u-terms used.

    value = zeta(2s)*(1 + 2*Sum_u cos(t*u*log(k0/l0)) * (k0*l0)^(-u*s));
    truncation stops when the geometric tail bound drops below the
    spec's tolerance.
    """
    if not (spec.sigma > 1.0):
        raise DomainError("resonant series requires sigma > 1")
    z2 = eval_zeta(EvalPoint(2.0 * spec.sigma, 0.0)).real
    q = float(spec.k0 * spec.l0) ** (-spec.sigma)
    log_ratio = math.log(spec.k0 / spec.l0)
    series = 0.0
    u = 1
    while 2.0 * q ** u / (1.0 - q) * z2 >= spec.truncation_tolerance:
        series += math.cos(spec.t * u * log_ratio) * q ** u
        u += 1
    return z2 * (1.0 + 2.0 * series), u - 1


def resonant_target(spec: ResonantSpec) -> float:
    """The sigma > 1 resonant limit of the discrete second moment."""
    return _resonant_series(spec)[0]


def resonant_target_detail(spec: ResonantSpec) -> Tuple[float, int]:
    """(resonant target, number of truncated series terms)."""
    return _resonant_series(spec)


# Tail evaluation tolerance used when no explicit config is supplied to
# a resonant run: accurate to ~1e-4 per point, cheap enough for N=1e4.
RESONANT_EVAL_CONFIG = ZetaEvalConfig(method="dirichlet_tail_bounded",
                                      tail_tolerance=1e-4)


def resonant_experiment(spec: ResonantSpec, n_max: int,
                        eval_cfg: Optional[ZetaEvalConfig] = None,
                        budget: float = DEFAULT_BUDGET,
                        threads: int = 1) -> MomentResult:
    """Discrete moment with resonant coefficients vs the resonant target."""
    if n_max < 1:
        raise DomainError("resonant_experiment requires n_max >= 1")
    cfg = RESONANT_EVAL_CONFIG if eval_cfg is None else eval_cfg
    p = resonant_coeffs(spec)
    experiment = MomentExperiment(s=EvalPoint(spec.sigma, spec.t), p=p,
                                  n_schedule=(n_max,), eval_cfg=cfg)
    run = discrete_moment(experiment, budget=budget, threads=threads)[-1]
    target = resonant_target(spec)
    return MomentResult(n=n_max, average=run.average, target=target,
                        abs_dev=abs(run.average - target))


def equidistribution_ratio(p: WeylPolynomial, n_max: int, threads: int = 1) -> float:
    """|weyl_sum(p, N)| / N: near zero for equidistributed phases, 1 at full resonance."""
    if n_max < 1:
        raise DomainError("equidistribution_ratio requires n_max >= 1")
    return abs(weyl_sum(p, n_max, threads)) / n_max


_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def sample_generic_coeffs(d: int, seed: int) -> WeylPolynomial:
    """Seeded 'almost every' coefficients: uniform [0.1, 2] scales times sqrt-prime offsets."""
    if d < 1:
        raise DomainError("sample_generic_coeffs requires d >= 1")
    if d > len(_SMALL_PRIMES):
        raise DomainError(f"sample_generic_coeffs supports d <= {len(_SMALL_PRIMES)}")
    rng = np.random.Generator(np.random.Philox(key=seed))
    scales = rng.uniform(0.1, 2.0, d)
    return WeylPolynomial(d, tuple(float(s) * math.sqrt(q)
                                   for s, q in zip(scales, _SMALL_PRIMES)))
