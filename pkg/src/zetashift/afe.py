"""Short-sum approximation layer for zeta inside the critical strip.

The admissible-abscissa function A(mu) tells how far left of sigma = 1
a Dirichlet partial sum of length t^mu still approximates zeta(s) with
power-decaying error.  This module evaluates A, locates the root mu_0
where its two branches cross on (0,1), runs the approximation against
the reference evaluator, and fits the empirical decay exponent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Tuple

import numpy as np

from .errors import DomainError
from .parallel import parallel_map
from .zeta import (DEFAULT_CONFIG, EvalPoint, ZetaEvalConfig, _point,
                   dirichlet_partial_sum, eval_zeta)

ETA = 4.45
THETA = 4.0 / (27.0 * ETA * ETA)  # 0.00748128...


@dataclass(frozen=True)
class AfeParams:
    """A (mu, delta) pair in the admissible region, with the fixed constants."""

    mu: float
    delta: float
    eta: float = ETA
    theta: float = THETA

    def __post_init__(self):
        if abs(self.theta - 4.0 / (27.0 * self.eta * self.eta)) > 1e-15:
            raise DomainError("theta must equal 4/(27*eta^2)")
        if not (self.mu > 0.0 and math.isfinite(self.mu)):
            raise DomainError("mu must be positive and finite")
        if not (0.0 < self.delta < 1.0 - abscissa_A(self.mu)):
            raise DomainError("delta must lie in (0, 1 - A(mu))")


class AfeRow(NamedTuple):
    t: float
    approx: complex
    reference: complex
    abs_error: float


@dataclass(frozen=True)
class AfeReport:
    sigma: float
    mu: float
    rows: Tuple[AfeRow, ...]
    fitted_decay: float


def abscissa_A(mu: float) -> float:
    """Piecewise admissible abscissa: 1 - 1/mu for mu >= 1, else min{1/(2mu), 1 - theta*mu^2}."""
    if not (isinstance(mu, (int, float)) and math.isfinite(mu) and mu > 0):
        raise DomainError("abscissa_A requires mu > 0 and finite")
    mu = float(mu)
    if mu >= 1.0:
        return 1.0 - 1.0 / mu
    return min(1.0 / (2.0 * mu), 1.0 - THETA * mu * mu)


def mu_zero() -> float:
    """Root of Q(x) = 2*theta*x^3 - 2x + 1 in [0, 1], bisected to 1e-12.

    This is where the two 0 < mu < 1 branches of A cross; it lies in
    [1/2, 3/4].
    """

    def q(x: float) -> float:
        return 2.0 * THETA * x ** 3 - 2.0 * x + 1.0

    lo, hi = 0.0, 1.0
    qlo = q(lo)
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if q(mid) == 0.0:
            return mid
        if (q(mid) > 0.0) == (qlo > 0.0):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def afe_approx(s, mu: float, cfg: ZetaEvalConfig = DEFAULT_CONFIG,
               threads: int = 1) -> Tuple[complex, float]:
    """Partial sum of length t^mu vs the reference evaluator.

    Valid in the strip A(mu) < sigma <= 1 with t >= 2; returns
    (approximation, absolute error).
    """
    point = _point(s)
    if point.t < 2.0:
        raise DomainError("afe_approx requires t >= 2")
    a_mu = abscissa_A(mu)
    if not (a_mu < point.sigma <= 1.0):
        raise DomainError(
            f"afe_approx: sigma={point.sigma} outside the strip ({a_mu:.6g}, 1]"
        )
    approx = dirichlet_partial_sum(point, point.t ** mu, threads)
    reference = eval_zeta(point, cfg, threads)
    return approx, abs(approx - reference)


def afe_classical(s, x: float, cfg: ZetaEvalConfig = DEFAULT_CONFIG,
                  threads: int = 1) -> Tuple[complex, float]:
    """Partial sum to x plus the correction x^(1-s)/(s-1), for pi*x >= t.

    Valid for 0 < sigma <= 2, x >= 1; returns (approximation, absolute
    error against the reference evaluator).
    """
    point = _point(s)
    if not (0.0 < point.sigma <= 2.0):
        raise DomainError("afe_classical requires 0 < sigma <= 2")
    if x < 1.0:
        raise DomainError("afe_classical requires x >= 1")
    if math.pi * x < point.t:
        raise DomainError(f"afe_classical precondition pi*x >= t failed: pi*{x} < {point.t}")
    sc = point.as_complex()
    approx = dirichlet_partial_sum(point, x, threads) + x ** (1 - sc) / (sc - 1)
    reference = eval_zeta(point, cfg, threads)
    return approx, abs(approx - reference)


def afe_error_scan(sigma: float, mu: float, t_list: Sequence[float],
                   cfg: ZetaEvalConfig = DEFAULT_CONFIG, threads: int = 1) -> AfeReport:
    """Run afe_approx over increasing t and fit log(error) vs log(t).

    The fitted slope is the empirical decay exponent (a negative value
    is the measured -nu).
    """
    ts = [float(t) for t in t_list]
    if len(ts) < 3:
        raise DomainError("afe_error_scan needs at least 3 t values for a fit")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise DomainError("afe_error_scan requires strictly increasing t values")
    if ts[0] < 2.0:
        raise DomainError("afe_error_scan requires all t >= 2")
    a_mu = abscissa_A(mu)
    if not (a_mu < sigma <= 1.0):
        raise DomainError(
            f"afe_error_scan: sigma={sigma} outside the strip ({a_mu:.6g}, 1]"
        )

    def one(t: float) -> AfeRow:
        point = EvalPoint(sigma, t)
        approx = dirichlet_partial_sum(point, t ** mu)
        reference = eval_zeta(point, cfg)
        return AfeRow(t, approx, reference, abs(approx - reference))

    rows = parallel_map(one, ts, threads)
    errors = np.array([max(r.abs_error, 1e-300) for r in rows])
    slope = float(np.polyfit(np.log(np.array(ts)), np.log(errors), 1)[0])
    return AfeReport(sigma=sigma, mu=mu, rows=tuple(rows), fitted_decay=slope)
