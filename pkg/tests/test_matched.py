import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from oracles import autocorrelation

from matchlet import (
    DataSequence,
    DesignRejected,
    design_matched,
    eval_cardinal_wavelet,
    eval_time,
    eval_time_series,
    frame_function,
    gram_eigen_check,
    gram_matrix,
    reconstruct_cardinal,
    run_suite,
    verify_interpolation,
)
from matchlet.verification import is_toeplitz


def design(*vals, start=0):
    return design_matched(DataSequence.finite(np.array(vals), start))


@pytest.mark.parametrize("vals, A, B", [((1.0,), 1.0, 1.0), ((1.0, 0.5), 0.25, 2.25)])
def test_design_bounds(vals, A, B):
    psi = design(*vals)
    assert psi.bounds.A == pytest.approx(A, abs=1e-9)
    assert psi.bounds.B == pytest.approx(B, abs=1e-9)


def test_rejection_names_root():
    with pytest.raises(DesignRejected) as info:
        design(1.0, 1.0)
    assert info.value.on_circle_roots == pytest.approx([-1.0], abs=1e-9)
    assert "-1" in str(info.value)


@pytest.mark.parametrize("vals, t, want", [
    ((1.0,), 0.5, 1.0),
    ((1.0, 0.5), 1.5, 0.5),
    ((1.0, 0.5), 0.5, 1.0),
])
def test_eval_time_on_lattice(vals, t, want):
    assert eval_time(design(*vals), t) == pytest.approx(want, abs=1e-10)


def test_unit_data_reproduces_cardinal(psi_unit):
    t = np.linspace(-4, 4, 37)
    assert np.max(np.abs(eval_time(psi_unit, t) - eval_cardinal_wavelet(t))) < 1e-12


@pytest.mark.parametrize("vals, tol", [
    ((1.0,), 1e-10),
    ((1.0, 0.5), 1e-8),
    ((1.0, 0.0, -0.25), 1e-8),
])
def test_interpolation_residual(vals, tol):
    assert verify_interpolation(design(*vals), 20).residual < tol


def test_complex_data_interpolates():
    psi = design_matched(DataSequence.finite(np.array([1.0, 0.3j, -0.2 + 0.1j]), -1))
    rep = verify_interpolation(psi, 6)
    assert rep.residual < 1e-8


@pytest.mark.parametrize("xi, want", [(np.pi, 0.25), (0.0, 2.25)])
def test_frame_function_points(psi_half, xi, want):
    assert frame_function(psi_half, xi) == pytest.approx(want, abs=1e-12)


def test_frame_function_unit(psi_unit):
    xi = np.random.default_rng(3).uniform(-10, 10, 50)
    assert np.allclose(frame_function(psi_unit, xi), 1.0, atol=1e-14)


def test_gram_identity_for_cardinal(psi_unit):
    ev = gram_eigen_check(psi_unit, 16).eigenvalues
    assert np.max(np.abs(ev - 1)) < 1e-10


def test_gram_spectrum_in_bounds(psi_half):
    e = gram_eigen_check(psi_half, 32)
    assert e.lower >= 0.25 - 1e-6 and e.upper <= 2.25 + 1e-6


def test_gram_finite_sections_approach_A(psi_half):
    assert gram_eigen_check(psi_half, 32).lower < gram_eigen_check(psi_half, 8).lower


def test_gram_toeplitz_entries(psi_half):
    G = gram_matrix(psi_half, 6).value
    ok, worst = is_toeplitz(G, 1e-12)
    assert ok, worst
    c = 6
    for lag in (-2, -1, 0, 1, 2):
        assert G[c, c + lag] == pytest.approx(autocorrelation([1.0, 0.5], lag), abs=1e-12)


def test_reconstruction_improves(psi_half):
    r16 = reconstruct_cardinal(psi_half, 16).residual
    r32 = reconstruct_cardinal(psi_half, 32).residual
    assert r16 < 1e-4
    assert r32 < r16


def test_reconstruction_trivial(psi_unit):
    assert reconstruct_cardinal(psi_unit, 0).residual < 1e-10


@settings(max_examples=10, deadline=None)
@given(st.floats(-0.4, 0.4), st.floats(-0.4, 0.4), st.floats(-3, 3), st.floats(-3, 3))
def test_linearity(a, b, x, y):
    g1 = np.array([1.0, a])
    g2 = np.array([1.0, 0.0, b])
    mix = x * np.concatenate([g1, [0.0]]) + y * g2
    if abs(mix[0]) < 0.5:
        return
    t = np.linspace(-3.3, 3.3, 9)
    lhs = eval_time(design(*mix), t)
    rhs = x * eval_time(design(*g1), t) + y * eval_time(design(*g2), t)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_quadrature_matches_shift_series():
    psi = design(0.5, -1.0, 0.25, start=-1)
    t = np.linspace(-6.1, 6.1, 25)
    assert np.max(np.abs(eval_time(psi, t) - eval_time_series(psi, t))) < 1e-10


@pytest.mark.parametrize("vals", [(1.0,), (1.0, 0.5)])
def test_suite_passes(vals):
    rep = run_suite(DataSequence.finite(np.array(vals)))
    assert rep.passed, "\n".join(rep.summary_lines())


def test_suite_records_rejection():
    rep = run_suite(DataSequence.finite(np.array([1.0, 1.0])))
    assert not rep.passed
    assert "rejection" in rep.diagnostics
