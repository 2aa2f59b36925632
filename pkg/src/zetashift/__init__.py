"""zetashift: discrete second-moment experiments for the Riemann zeta
function along polynomial shifts, with the supporting Weyl-sum counting
and abscissa optimization machinery."""

from .abscissa import (AbscissaProfile, abscissa_table, bound_B, bound_B_mo,
                       compute_S, kappa, lambda_exponent, mu_upper, select_h_mo)
from .afe import (ETA, THETA, AfeParams, AfeReport, AfeRow, abscissa_A,
                  afe_approx, afe_classical, afe_error_scan, mu_zero)
from .errors import DomainError, NumericalError, ResourceError
from .moments import (DEFAULT_BUDGET, MomentExperiment, MomentResult,
                      ResonantSpec, continuous_moment, discrete_moment,
                      enumerate_U, equidistribution_ratio, resonant_coeffs,
                      resonant_experiment, resonant_target,
                      resonant_target_detail, sample_generic_coeffs)
from .weylcount import (CountReport, WeylPolynomial, count_J, count_M, count_T,
                        flm_ratio, growth_exponent, mc_mean_value,
                        ratio_power_sum, weyl_sum)
from .zeta import (DEFAULT_CONFIG, EvalPoint, ZetaEvalConfig,
                   dirichlet_partial_sum, eval_zeta, tail_cutoff)

__version__ = "0.1.0"

__all__ = [
    "AbscissaProfile", "AfeParams", "AfeReport", "AfeRow", "CountReport",
    "DEFAULT_BUDGET", "DEFAULT_CONFIG", "DomainError", "ETA", "EvalPoint",
    "MomentExperiment", "MomentResult", "NumericalError", "ResonantSpec",
    "ResourceError", "THETA", "WeylPolynomial", "ZetaEvalConfig",
    "abscissa_A", "abscissa_table", "afe_approx", "afe_classical",
    "afe_error_scan", "bound_B", "bound_B_mo", "compute_S",
    "continuous_moment", "count_J", "count_M", "count_T",
    "dirichlet_partial_sum", "discrete_moment", "enumerate_U",
    "equidistribution_ratio", "eval_zeta", "flm_ratio", "growth_exponent",
    "kappa", "lambda_exponent", "mc_mean_value", "mu_upper", "mu_zero",
    "ratio_power_sum", "resonant_coeffs", "resonant_experiment",
    "resonant_target", "resonant_target_detail", "sample_generic_coeffs",
    "select_h_mo", "tail_cutoff", "weyl_sum",
]
