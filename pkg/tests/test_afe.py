import math

import pytest

from zetashift import (
    AfeParams,
    DomainError,
    EvalPoint,
    abscissa_A,
    afe_approx,
    afe_classical,
    afe_error_scan,
    mu_zero,
)
from zetashift.afe import ETA, THETA


def test_constants():
    assert ETA == 4.45
    assert THETA == 4.0 / (27.0 * 4.45 ** 2)
    assert abs(THETA - 0.007481285097747666) < 1e-18


def test_abscissa_A_branches():
    # mu >= 1: the 1 - 1/mu branch.
    assert abscissa_A(1.0) == 0.0
    assert abscissa_A(2.0) == 0.5
    assert abscissa_A(4.0) == 0.75
    # Small mu: the quadratic branch min(1/(2mu), 1 - theta mu^2).
    assert abs(abscissa_A(0.5) - 0.9981296787255631) < 1e-15
    assert abscissa_A(0.1) == 1.0 - THETA * 0.01
    # Near the crossover, still the 1/(2mu) branch from above.
    assert abscissa_A(0.6) == pytest.approx(1.0 / 1.2)


def test_abscissa_A_domain():
    for bad in (0.0, -1.0, float("nan"), float("inf")):
        with pytest.raises(DomainError):
            abscissa_A(bad)


def test_mu_zero_location_and_residual():
    root = mu_zero()
    # Offline 40-digit value: 0.5009404473848312...
    assert abs(root - 0.5009404473848313) < 1e-9
    residual = 2.0 * THETA * root ** 3 - 2.0 * root + 1.0
    assert abs(residual) < 1e-10
    # The root is where the two branches of A meet.
    assert abs(1.0 / (2.0 * root) - (1.0 - THETA * root * root)) < 1e-10


def test_params_validation():
    p = AfeParams(mu=1.2, delta=0.05)
    assert p.eta == ETA
    with pytest.raises(DomainError):
        AfeParams(mu=1.2, delta=0.05, theta=0.008)
    with pytest.raises(DomainError):
        AfeParams(mu=-1.0, delta=0.05)
    with pytest.raises(DomainError):
        AfeParams(mu=2.0, delta=0.6)  # 1 - A(2) = 0.5, so 0.6 is out
    with pytest.raises(DomainError):
        AfeParams(mu=1.2, delta=0.0)


def test_afe_approx_error_small_on_the_line():
    _, err100 = afe_approx(EvalPoint(1.0, 100.0), mu=1.2)
    _, err400 = afe_approx(EvalPoint(1.0, 400.0), mu=1.2)
    assert err100 < 0.02
    assert err400 < err100


def test_afe_approx_domain():
    with pytest.raises(DomainError):
        afe_approx(EvalPoint(1.0, 1.0), mu=1.2)  # t < 2
    with pytest.raises(DomainError):
        afe_approx(EvalPoint(0.1, 50.0), mu=1.2)  # sigma <= A(mu)
    with pytest.raises(DomainError):
        afe_approx(EvalPoint(1.5, 50.0), mu=1.2)  # sigma > 1


def test_afe_classical_accuracy_scales_with_x():
    # Just past the pi*x >= t threshold: percent-level accuracy.
    _, err_near = afe_classical(EvalPoint(1.0, 50.0), x=50.0)
    assert err_near < 0.05
    # Error decays like x^(-sigma) once the threshold is cleared.
    _, err_mid = afe_classical(EvalPoint(1.0, 10.0), x=1000.0)
    _, err_far = afe_classical(EvalPoint(1.0, 10.0), x=20000.0)
    assert err_mid < 2e-3
    assert err_far < 1e-4
    assert err_far < err_mid < err_near


def test_afe_classical_domain():
    with pytest.raises(DomainError):
        afe_classical(EvalPoint(2.5, 10.0), x=100.0)  # sigma > 2
    with pytest.raises(DomainError):
        afe_classical(EvalPoint(1.0, 10.0), x=0.5)  # x < 1
    with pytest.raises(DomainError):
        afe_classical(EvalPoint(1.0, 100.0), x=10.0)  # pi*x < t


def test_error_scan_decay():
    report = afe_error_scan(1.0, 1.2, (50.0, 100.0, 200.0, 400.0))
    errs = [r.abs_error for r in report.rows]
    assert all(b < a for a, b in zip(errs, errs[1:]))
    assert report.fitted_decay < 0.0
    # Empirically the decay exponent sits near -1 for this strip point.
    assert -1.5 < report.fitted_decay < -0.5
    assert report.sigma == 1.0 and report.mu == 1.2
    assert [r.t for r in report.rows] == [50.0, 100.0, 200.0, 400.0]


def test_error_scan_row_consistency():
    report = afe_error_scan(1.0, 1.2, (50.0, 100.0, 200.0))
    for row in report.rows:
        assert row.abs_error == abs(row.approx - row.reference)


def test_error_scan_thread_invariance():
    a = afe_error_scan(1.0, 1.2, (50.0, 100.0, 200.0), threads=1)
    b = afe_error_scan(1.0, 1.2, (50.0, 100.0, 200.0), threads=4)
    assert a == b


def test_error_scan_domain():
    with pytest.raises(DomainError):
        afe_error_scan(1.0, 1.2, (50.0, 100.0))  # too few points
    with pytest.raises(DomainError):
        afe_error_scan(1.0, 1.2, (100.0, 50.0, 200.0))  # not increasing
    with pytest.raises(DomainError):
        afe_error_scan(1.0, 1.2, (1.0, 50.0, 100.0))  # t < 2
    with pytest.raises(DomainError):
        afe_error_scan(0.1, 1.2, (50.0, 100.0, 200.0))  # outside strip


def test_strip_is_a_sliver_for_small_mu():
    # Below the branch crossing the quadratic branch governs: the strip
    # (A(mu), 1] is a sliver hugging sigma = 1.
    assert abscissa_A(0.4) == pytest.approx(0.9988029943843604)
    with pytest.raises(DomainError):
        afe_approx(EvalPoint(0.99, 100.0), mu=0.4)  # below A(0.4)
    # Above the crossing the reciprocal branch takes over and the strip
    # opens up; short sums still work, just with slower decay.
    assert abscissa_A(0.6) == pytest.approx(1.0 / 1.2)
    _, err = afe_approx(EvalPoint(0.999, 1000.0), mu=0.6)
    assert err < 0.5
