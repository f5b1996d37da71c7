import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from oracles import GAMMA0, GAMMA1, H0, H1, SQRT2, bell_by_back_substitution, meyer_weights

from matchlet import (
    DecayCertificate,
    InadmissibleError,
    MeyerTargetSequence,
    SingularSystemError,
    check_admissibility,
    design_meyer,
    eval_h,
    eval_lattice,
    eval_psi_time,
    project_feasible,
    run_suite,
    solve_h_coefficients,
)
from matchlet.meyer import Gam3Warning, condition_weights, two_adic_valuation

TWO = MeyerTargetSequence([GAMMA0, GAMMA1])


def test_weights_match_hand_formula():
    w1, w2 = condition_weights(40)
    for n in range(41):
        a, b = meyer_weights(n)
        assert w1[n] == pytest.approx(a, abs=1e-14)
        assert w2[n] == pytest.approx(b, abs=1e-14)


@pytest.mark.parametrize("n, q", [(1, 0), (2, 1), (12, 2), (40, 3), (7, 0)])
def test_two_adic_valuation(n, q):
    assert two_adic_valuation(n) == q


def test_two_point_admissibility():
    a = check_admissibility(TWO)
    assert a.lhs1 == pytest.approx(1.0, abs=1e-12)
    assert a.lhs2 == pytest.approx(SQRT2 / 2, abs=1e-12)
    assert a.lhs3 == pytest.approx(1.0, abs=1e-12)
    assert a.passed


def test_single_term_pass1_fail2():
    a = check_admissibility(MeyerTargetSequence([SQRT2]))
    assert a.pass1 and not a.pass2
    assert a.lhs2 == pytest.approx(1.0, abs=1e-14)


def test_zero_fails_first_condition():
    a = check_admissibility(MeyerTargetSequence([0.0, 0.0]))
    assert a.lhs1 == 0.0 and not a.pass1


def test_two_point_coefficients():
    c = solve_h_coefficients(TWO)
    assert c[0] == pytest.approx(H0, abs=1e-12)
    assert c[1] == pytest.approx(H1, abs=1e-12)
    assert all(abs(c[n]) < 1e-12 for n in range(2, c.n_max + 1))


def test_zero_data_zero_coefficients():
    c = solve_h_coefficients(MeyerTargetSequence(np.zeros(6)))
    assert np.all(c.coef == 0)


gamma_lists = st.lists(st.floats(-1, 1, allow_nan=False), min_size=1, max_size=40)


@settings(max_examples=100, deadline=None)
@given(gamma_lists)
def test_coefficients_match_back_substitution(vals):
    g = np.array(vals) / (1.0 + np.arange(len(vals))) ** 2
    c = solve_h_coefficients(MeyerTargetSequence(g))
    ref = bell_by_back_substitution(g)
    assert np.max(np.abs(c.coef[:ref.size] - ref)) < 1e-12
    assert np.max(np.abs(c.recurrence_residuals())) < 1e-12


def test_infinite_data_truncated_with_bound():
    cert = DecayCertificate(0.01, 1.0)
    g = MeyerTargetSequence(np.zeros(0), cert, lambda k: 0.01 * (1.0 + k) ** -3.0)
    c = solve_h_coefficients(g, 256)
    assert 0 < c.tail_bound < 1e-3
    assert np.max(np.abs(c.recurrence_residuals())) < 1e-12


@pytest.mark.parametrize("xi, want", [(0.0, 1.0), (np.pi / 3, SQRT2 / 2), (np.pi / 6, H0)])
def test_bell_values(xi, want):
    assert eval_h(solve_h_coefficients(TWO), xi) == pytest.approx(want, abs=1e-12)


def test_spectra_special_points(meyer_two):
    assert abs(meyer_two.phi_hat(0.0)) == pytest.approx(1.0, abs=1e-14)
    assert abs(meyer_two.phi_hat(4 * np.pi / 3)) == pytest.approx(0.0, abs=1e-14)
    assert abs(meyer_two.psi_hat(np.pi)) == pytest.approx(SQRT2 / 2, abs=1e-14)


@pytest.mark.parametrize("k, want", [(0, GAMMA0), (1, GAMMA1), (2, 0.0)])
def test_lattice_values(meyer_two, k, want):
    assert eval_psi_time(meyer_two, 0.5 + 3 * k) == pytest.approx(want, abs=1e-8)
    assert eval_lattice(meyer_two, k) == pytest.approx(want, abs=1e-10)


def test_symmetry_about_half(meyer_two):
    s = np.random.default_rng(7).uniform(0, 10, 20)
    d = eval_psi_time(meyer_two, 0.5 + s) - eval_psi_time(meyer_two, 0.5 - s)
    assert np.max(np.abs(d)) < 1e-10


def test_inadmissible_rejected():
    with pytest.raises(InadmissibleError):
        design_meyer(MeyerTargetSequence([1.0, 0.3, -0.2]))


def test_feasible_from_zero():
    g = project_feasible(MeyerTargetSequence([0.0, 0.0]), (0, 1))
    assert g.values == pytest.approx([GAMMA0, GAMMA1], abs=1e-15)


def test_feasible_with_index_two():
    g = project_feasible(MeyerTargetSequence(np.zeros(3)), (0, 2))
    assert g.values[0] == pytest.approx((3 + SQRT2) / 4, abs=1e-14)
    assert g.values[2] == pytest.approx((SQRT2 - 1) / 24, abs=1e-14)
    a = check_admissibility(g)
    assert a.pass1 and a.pass2


@pytest.mark.parametrize("pair", [(1, 3), (2, 6), (5, 7)])
def test_feasible_singular_pairs(pair):
    with pytest.raises(SingularSystemError):
        project_feasible(MeyerTargetSequence(np.zeros(8)), pair)


def test_feasible_two_four_is_regular():
    project_feasible(MeyerTargetSequence(np.zeros(5)), (2, 4))


def test_feasible_warns_when_sum_bound_fails():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        project_feasible(MeyerTargetSequence([0.0, 0.0, 0.0, 0.3]), (0, 1))
    assert any(issubclass(w.category, Gam3Warning) for w in caught)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-0.01, 0.01), min_size=2, max_size=10), st.sampled_from(
    [(0, 1), (0, 2), (1, 2), (0, 3), (2, 3)]))
def test_feasible_fixed_point(extra, pair):
    g = np.concatenate([[0.0, 0.0], extra])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", Gam3Warning)
        once = project_feasible(MeyerTargetSequence(g), (0, 1))
        twice = project_feasible(once, pair)
    assert np.max(np.abs(twice.values - once.values)) < 1e-12


def test_suite_passes():
    rep = run_suite(TWO)
    assert rep.passed, "\n".join(rep.summary_lines())
