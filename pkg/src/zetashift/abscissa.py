"""Abscissa calculus: the exponents kappa/lambda, the mean-value bounds
B (polynomial) and B_mo (monomial), and the one-dimensional optimization
defining the convergence abscissa S(d).

S(d) is the infimum over admissible mu of f(mu) = max(A(mu), 1 - B(mu)),
where A comes from the short-sum approximation layer and B from the
counting bounds.  The optimizer is a dense grid followed by golden-
section refinement inside the best cell: f has a branch discontinuity
at mu = 1 and may be non-smooth at branch crossings, so derivative-free
search is the robust choice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .afe import THETA, abscissa_A
from .errors import DomainError, NumericalError
from .parallel import parallel_map

GOLDEN_TOL = 1e-8
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class AbscissaProfile:
    d: int
    variant: str       # polynomial | monomial
    conditional: str   # unconditional | lindelof
    mu_star: float
    A_at_mu: float
    B_at_mu: float
    S: float
    h_mo: Optional[int]
    e_mo: Optional[float]
    at_boundary: bool  # best value within grid_step of an interval endpoint


def kappa(d: int, k: int, m: int) -> float:
    """Sum_{r=k+1}^{m} (r+1) * d^(-1/r)."""
    if d < 1:
        raise DomainError("kappa requires d >= 1")
    if not (0 <= k < m):
        raise DomainError("kappa requires 0 <= k < m")
    return math.fsum((r + 1) * d ** (-1.0 / r) for r in range(k + 1, m + 1))


def lambda_exponent(d: int, h: int) -> float:
    """Mean-value exponent correction lambda(d, h).

    Three nested regimes, each tightening the previous:
      d >= 2h-1       -> -2 + 2/sqrt(3) + kappa(d, h-1, 2h-2)
      d >= (2h-1)^2   -> -1 + kappa(d, h-1, 2h-2)
      d >= (2h)^(4h)  -> -1/2
    The most specific applicable regime is returned.  The d=2, h=2 case
    is covered by the classical fourth-moment bound instead, encoded as
    an effective exponent of 0.
    """
    if d == 2 and h == 2:
        return 0.0
    if h < 2 or d < 2 * h - 1:
        raise DomainError(f"lambda_exponent requires d >= 2h-1 >= 3 (got d={d}, h={h})")
    if d >= (2 * h) ** (4 * h):
        return -0.5
    if d >= (2 * h - 1) ** 2:
        return -1.0 + kappa(d, h - 1, 2 * h - 2)
    return -2.0 + 2.0 / math.sqrt(3.0) + kappa(d, h - 1, 2 * h - 2)


def _e_h(d: int, h: int) -> float:
    lam = lambda_exponent(d, h)
    return 0.5 - (max(0.0, lam) + 1.0) / (2.0 * h)


def select_h_mo(d: int) -> Tuple[int, float]:
    """The h in [2, (d+1)/2] maximizing e_h = 1/2 - (max{0,lambda}+1)/(2h).

    Ties break toward smaller h.  Returns (h_mo, e_mo); e_mo must be
    positive.  For d = 2 the fourth-moment bound forces h = 2 and
    e_mo = 1/4.
    """
    if d < 2:
        raise DomainError("select_h_mo requires d >= 2")
    if d == 2:
        return 2, 0.25
    # kappa grows ~ h^2/d^(1/h); once h exceeds ~2*log2(d) the pre-factor
    # d^(1/h) is below sqrt(2) and e_h is forced negative, so the scan
    # never needs to go further.
    h_cap = min((d + 1) // 2, max(4, 2 * math.ceil(math.log2(d)) + 2))
    best_h, best_e = None, -math.inf
    for h in range(2, h_cap + 1):
        e = _e_h(d, h)
        if e > best_e + 1e-15:
            best_h, best_e = h, e
    if best_h is None or best_e <= 0.0:
        raise NumericalError(f"select_h_mo: no positive e_h found for d={d}")
    return best_h, best_e


def mu_upper(d: int) -> float:
    """Right edge of the polynomial-variant domain: (d^2+d-2)/(4d)."""
    return (d * d + d - 2) / (4.0 * d)


def bound_B(d: int, mu):
    """B(d, mu) = (1/(2 mu d)) * (1/2 - 2 mu/(d+1) - 1/(d(d+1))).

    Positive exactly when 0 < mu < mu_upper(d); may be <= 0, callers
    check the sign.  Accepts a scalar or an array of mu values.
    """
    if d < 2:
        raise DomainError("bound_B requires d >= 2")
    mu_arr = np.asarray(mu, dtype=np.float64)
    if not np.all(mu_arr > 0.0):
        raise DomainError("bound_B requires mu > 0")
    val = (0.5 - 2.0 * mu_arr / (d + 1) - 1.0 / (d * (d + 1))) / (2.0 * mu_arr * d)
    return float(val) if np.isscalar(mu) or mu_arr.ndim == 0 else val


def bound_B_mo(d: int, h: int, mu):
    """B_mo(d, h, mu) = (1/(2 mu d)) * (1/2 - (max{0,lambda}+1+2 mu d)/(2h)).

    Positive exactly when mu < e_h * h / d.  Accepts scalar or array mu.
    """
    if d < 2:
        raise DomainError("bound_B_mo requires d >= 2")
    lam = max(0.0, lambda_exponent(d, h))
    mu_arr = np.asarray(mu, dtype=np.float64)
    if not np.all(mu_arr > 0.0):
        raise DomainError("bound_B_mo requires mu > 0")
    val = (0.5 - (lam + 1.0 + 2.0 * mu_arr * d) / (2.0 * h)) / (2.0 * mu_arr * d)
    return float(val) if np.isscalar(mu) or mu_arr.ndim == 0 else val


def _A_values(mu_arr: np.ndarray, conditional: str) -> np.ndarray:
    if conditional == "lindelof":
        return np.full_like(mu_arr, 0.5)
    return np.where(mu_arr >= 1.0, 1.0 - 1.0 / mu_arr,
                    np.minimum(1.0 / (2.0 * mu_arr), 1.0 - THETA * mu_arr * mu_arr))


def _golden_section(f, lo: float, hi: float, tol: float) -> float:
    """Golden-section minimizer on [lo, hi]; returns the bracket midpoint."""
    a, b = lo, hi
    c = b - _INV_PHI * (b - a)
    d_ = a + _INV_PHI * (b - a)
    fc, fd = f(c), f(d_)
    while b - a > tol:
        if fc <= fd:
            b, d_, fd = d_, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d_, fd
            d_ = a + _INV_PHI * (b - a)
            fd = f(d_)
    return 0.5 * (a + b)


def compute_S(d: int, variant: str = "polynomial",
              conditional: str = "unconditional",
              grid_step: float = 1e-4) -> AbscissaProfile:
    """Minimize f(mu) = max(A(mu), 1 - B(mu)) over the admissible open interval.

    Dense grid at grid_step, then golden-section refinement (to 1e-8) in
    the best grid cell.  In lindelof mode A is replaced by the constant
    1/2 on (0,1) and the domain is capped at min(mu_upper, 1).  The
    at_boundary flag records when the optimum sits within grid_step of
    an endpoint, i.e. when the infimum may be approached rather than
    attained.
    """
    if not isinstance(d, int) or d < 2:
        raise DomainError("compute_S requires integer d >= 2")
    if variant not in ("polynomial", "monomial"):
        raise DomainError(f"unknown variant: {variant!r}")
    if conditional not in ("unconditional", "lindelof"):
        raise DomainError(f"unknown conditional: {conditional!r}")
    if not (0.0 < grid_step <= 1e-2):
        raise DomainError("grid_step must lie in (0, 1e-2]")

    if variant == "monomial":
        h_mo, e_mo = select_h_mo(d)
        mu_max = e_mo * h_mo / d

        def b_func(mu):
            return bound_B_mo(d, h_mo, mu)
    else:
        h_mo, e_mo = None, None
        mu_max = mu_upper(d)

        def b_func(mu):
            return bound_B(d, mu)

    if conditional == "lindelof":
        mu_max = min(mu_max, 1.0)

    grid = np.arange(grid_step, mu_max, grid_step)
    grid = grid[grid < mu_max]
    if grid.size == 0:
        raise DomainError(
            f"compute_S: empty feasible interval (0, {mu_max:.6g}) at grid_step {grid_step}"
        )
    f_grid = np.maximum(_A_values(grid, conditional), 1.0 - b_func(grid))
    best = int(np.argmin(f_grid))

    def f_scalar(mu: float) -> float:
        a_val = 0.5 if conditional == "lindelof" else abscissa_A(mu)
        return max(a_val, 1.0 - float(b_func(mu)))

    lo = max(grid[best] - grid_step, grid_step / 1024.0)
    hi = min(grid[best] + grid_step, mu_max)
    mu_star = _golden_section(f_scalar, lo, hi, GOLDEN_TOL)

    a_at = 0.5 if conditional == "lindelof" else abscissa_A(mu_star)
    b_at = float(b_func(mu_star))
    s_val = max(a_at, 1.0 - b_at)
    at_boundary = mu_star <= grid_step or (mu_max - mu_star) <= grid_step
    return AbscissaProfile(d=d, variant=variant, conditional=conditional,
                           mu_star=float(mu_star), A_at_mu=a_at, B_at_mu=b_at,
                           S=s_val, h_mo=h_mo, e_mo=e_mo, at_boundary=at_boundary)


def abscissa_table(d_list: Sequence[int], variants: Sequence[str],
                   conditionals: Sequence[str], grid_step: float = 1e-4,
                   threads: int = 1) -> List[AbscissaProfile]:
    """compute_S for every (d, variant, conditional) combination, in input order."""
    combos = [(d, v, c) for d in d_list for v in variants for c in conditionals]
    return parallel_map(lambda args: compute_S(args[0], args[1], args[2], grid_step),
                        combos, threads)
