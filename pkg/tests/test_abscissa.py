import math

import numpy as np
import pytest

from zetashift import (
    AbscissaProfile,
    DomainError,
    abscissa_table,
    bound_B,
    bound_B_mo,
    compute_S,
    kappa,
    lambda_exponent,
    mu_upper,
    select_h_mo,
)

THETA = 4.0 / (27.0 * 4.45 ** 2)


def test_kappa_hand_values():
    assert kappa(2, 1, 2) == pytest.approx(3.0 / math.sqrt(2.0), abs=1e-15)
    want = 4.0 * 4.0 ** (-1.0 / 3.0) + 5.0 * 4.0 ** (-0.25)
    assert kappa(4, 2, 4) == pytest.approx(want, abs=1e-14)
    # Single-term window.
    assert kappa(9, 3, 4) == pytest.approx(5.0 * 9.0 ** (-0.25), abs=1e-15)


def test_kappa_domain():
    with pytest.raises(DomainError):
        kappa(0, 1, 2)
    with pytest.raises(DomainError):
        kappa(2, 2, 2)
    with pytest.raises(DomainError):
        kappa(2, 3, 2)


def test_lambda_regimes():
    # Offline 40-digit values for the two shallow-regime anchors.
    assert lambda_exponent(3, 2) == pytest.approx(0.8867513459481288, abs=1e-12)
    assert lambda_exponent(4, 2) == pytest.approx(0.6547005383792515, abs=1e-12)
    # Mid regime: d >= (2h-1)^2.
    assert lambda_exponent(9, 2) == pytest.approx(-1.0 + kappa(9, 1, 2), abs=1e-15)
    # Deep regime: d >= (2h)^(4h).
    assert lambda_exponent(65536, 2) == -0.5
    # Fourth-moment special case.
    assert lambda_exponent(2, 2) == 0.0


def test_lambda_prefers_most_specific_regime():
    # At the deep-regime threshold the flat -1/2 applies even though the
    # shallower formulas would produce other (larger) values.
    d = (2 * 2) ** (4 * 2)
    assert lambda_exponent(d, 2) == -0.5
    assert -1.0 + kappa(d, 1, 2) != -0.5


def test_lambda_domain():
    with pytest.raises(DomainError):
        lambda_exponent(2, 3)  # d < 2h-1
    with pytest.raises(DomainError):
        lambda_exponent(10, 1)  # h < 2


def test_select_h_mo():
    assert select_h_mo(2) == (2, 0.25)
    h3, e3 = select_h_mo(3)
    assert h3 == 2
    assert e3 == pytest.approx(0.02831216351296779, abs=1e-12)
    h_big, e_big = select_h_mo(65536)
    assert h_big == 3
    assert e_big == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_select_h_mo_is_fast_for_huge_degree():
    # The h scan must cut off long before (d+1)/2.
    import time
    start = time.perf_counter()
    select_h_mo(10 ** 6)
    assert time.perf_counter() - start < 0.1


def test_mu_upper():
    assert mu_upper(2) == pytest.approx(0.5)
    assert mu_upper(3) == pytest.approx(10.0 / 12.0)


def test_bound_values():
    assert bound_B(2, 0.1) == pytest.approx(2.0 / 3.0, abs=1e-15)
    assert bound_B_mo(3, 2, 0.01) == pytest.approx(0.2218693918827966, abs=1e-12)
    # At mu = e_h * h / d the monomial bound crosses zero.
    _, e3 = select_h_mo(3)
    mu_edge = e3 * 2 / 3
    assert abs(bound_B_mo(3, 2, mu_edge)) < 1e-12


def test_bounds_accept_arrays():
    mus = np.array([0.05, 0.1, 0.2])
    arr = bound_B(2, mus)
    assert arr.shape == (3,)
    for m, v in zip(mus, arr):
        assert v == pytest.approx(bound_B(2, float(m)), abs=1e-15)
    arr2 = bound_B_mo(3, 2, mus)
    for m, v in zip(mus, arr2):
        assert v == pytest.approx(bound_B_mo(3, 2, float(m)), abs=1e-15)


def test_bound_domain():
    with pytest.raises(DomainError):
        bound_B(1, 0.1)
    with pytest.raises(DomainError):
        bound_B(2, 0.0)
    with pytest.raises(DomainError):
        bound_B_mo(3, 2, -0.1)


# --- the optimizer ---

# Offline closed-form crossing values (40-digit computation).
S_POLY = {2: 0.9981700824980268, 3: 39.0 / 41.0, 4: 0.9438202247191011}
MU_POLY = {2: 0.4945698676593297, 3: 41.0 / 78.0, 4: 0.5297619047619048}
S_MONO = {2: 0.9995341573736860, 3: 0.9999973347954687}


@pytest.mark.parametrize("d", [2, 3, 4])
def test_compute_S_polynomial(d):
    prof = compute_S(d)
    assert prof.S == pytest.approx(S_POLY[d], abs=1e-6)
    assert prof.mu_star == pytest.approx(MU_POLY[d], abs=1e-4)
    assert prof.h_mo is None and prof.e_mo is None
    assert prof.variant == "polynomial"
    assert 0.0 < prof.mu_star < min(mu_upper(d), 1.0)
    # S is the max of the two criteria at the optimum.
    assert prof.S == pytest.approx(max(prof.A_at_mu, 1.0 - prof.B_at_mu),
                                   abs=1e-15)


@pytest.mark.parametrize("d", [2, 3])
def test_compute_S_monomial(d):
    prof = compute_S(d, variant="monomial")
    tol = 1e-6 if d == 2 else 1e-7
    assert prof.S == pytest.approx(S_MONO[d], abs=tol)
    assert prof.h_mo == 2
    assert prof.e_mo is not None and prof.e_mo > 0.0


def test_monomial_beats_polynomial():
    for d in (2, 3, 4, 8):
        s_poly = compute_S(d).S
        s_mono = compute_S(d, variant="monomial").S
        assert s_mono >= s_poly


def test_compute_S_interval_and_tends_to_one():
    for d in (16, 32, 64):
        prof = compute_S(d)
        assert 0.5 < prof.S < 1.0
        assert 1.0 - prof.S <= 1.0 / d


def test_lindelof_collapse():
    for d in (2, 4, 8, 16):
        for variant in ("polynomial", "monomial"):
            prof = compute_S(d, variant=variant, conditional="lindelof")
            assert prof.S <= 0.5 + 2.0 * 1e-4
            assert prof.S >= 0.5
            assert prof.at_boundary


def test_boundary_flag():
    # Unconditional polynomial optima are interior crossings.
    assert not compute_S(3).at_boundary
    # The d=3 monomial optimum hugs the left edge of its domain.
    assert compute_S(3, variant="monomial").at_boundary


def test_independent_fine_grid_cross_check():
    # Re-derive S(3) on a dense grid with formulas written from scratch.
    d = 3
    grid = np.arange(1e-6, (d * d + d - 2) / (4.0 * d), 1e-6)
    a_vals = np.where(grid >= 1.0, 1.0 - 1.0 / grid,
                      np.minimum(0.5 / grid, 1.0 - THETA * grid ** 2))
    b_vals = (0.5 - 2.0 * grid / (d + 1) - 1.0 / (d * (d + 1))) / (2.0 * grid * d)
    objective = np.maximum(a_vals, 1.0 - b_vals)
    oracle = float(objective.min())
    assert compute_S(d).S == pytest.approx(oracle, abs=1e-6)


def test_table_order_and_thread_invariance():
    ds = [5, 2, 3]
    table = abscissa_table(ds, ["polynomial"], ["unconditional"])
    assert [p.d for p in table] == ds
    table4 = abscissa_table(ds, ["polynomial"], ["unconditional"], threads=4)
    assert table == table4


def test_table_variant_product():
    table = abscissa_table([2], ["polynomial", "monomial"],
                           ["unconditional", "lindelof"])
    assert len(table) == 4
    combos = {(p.variant, p.conditional) for p in table}
    assert combos == {("polynomial", "unconditional"),
                      ("polynomial", "lindelof"),
                      ("monomial", "unconditional"),
                      ("monomial", "lindelof")}


def test_compute_S_domain():
    with pytest.raises(DomainError):
        compute_S(1)
    with pytest.raises(DomainError):
        compute_S(2, variant="cubic")
    with pytest.raises(DomainError):
        compute_S(2, conditional="riemann")
    with pytest.raises(DomainError):
        compute_S(2, grid_step=0.5)
    with pytest.raises(DomainError):
        compute_S(2, grid_step=0.0)


def test_profile_is_frozen():
    prof = compute_S(2)
    assert isinstance(prof, AbscissaProfile)
    with pytest.raises(AttributeError):
        prof.S = 0.0
