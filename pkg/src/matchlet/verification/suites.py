"""Check batteries for each designed model, aggregated into reports."""
import numpy as np

from .. import meyer as _meyer
from ..cardinal import SHANNON, ShannonCardinal
from ..matched import (
    DesignRejected,
    MatchedWavelet,
    design_matched,
    eval_time,
    eval_time_series,
    frame_function,
    gram_eigen_check,
    reconstruct_cardinal,
    verify_interpolation,
)
from ..sequence import DataSequence, dual_symbol_coefficients, extrema
from .gram import gram_matrix, hermitian_defect, is_toeplitz, periodization
from .quadrature import fourier_inverse
from .report import VerificationReport, bound_check, deviation_check, flag_check

GRID = 4096


def _monotone(values, floor=1e-13):
    """Non-increasing, allowing ties once everything is at rounding level."""
    return all(b <= a or b <= floor for a, b in zip(values, values[1:]))


def cardinal_suite(model=SHANNON, report=None):
    rep = report or VerificationReport("cardinal")
    n = np.arange(-50, 51)
    rep.add(bound_check(
        "wavelet_lattice_delta",
        np.max(np.abs(model.wavelet(n + 0.5) - (n == 0))), 0.0, 1e-12, "closed form"))
    rep.add(bound_check(
        "scaling_lattice_delta",
        np.max(np.abs(model.scaling(n) - (n == 0))), 0.0, 1e-12, "closed form"))
    xi = np.linspace(0, 2 * np.pi, GRID, endpoint=False)
    pou = periodization(model.hat, xi, breakpoints=model.breakpoints)
    rep.add(bound_check("wavelet_partition_of_unity", np.max(np.abs(pou - 1)), 0.0, 1e-12,
                        "2pi-periodization"))
    t = np.random.default_rng(0).uniform(-10, 10, 100)
    inv = fourier_inverse(model.hat, model.breakpoints, t).value
    rep.add(bound_check("inverse_transform_consistency",
                        np.max(np.abs(inv - model.wavelet(t))), 0.0, 1e-8,
                        "quadrature vs closed form"))
    G = gram_matrix(model, 4, (0, 1)).value
    rep.add(bound_check("cross_scale_orthogonality", np.max(np.abs(G)), 0.0, 1e-10,
                        "frequency quadrature"))
    return rep


def matched_suite(psi, report=None, K_interp=20, K_gram=32):
    rep = report or VerificationReport("matched")
    b = psi.bounds
    rep.add(flag_check("riesz_bounds", b.is_riesz, "grid scan + Brent",
                       f"A={b.A:.17g} B={b.B:.17g}"))
    interp = verify_interpolation(psi, K_interp, 1e-8)
    rep.add(bound_check("interpolation", interp.residual, 0.0, 1e-8,
                        f"psi(n+1/2) vs gamma_n, |n|<={K_interp}"))
    if psi.gamma.is_finite:
        t = np.linspace(-10.25, 10.25, 42)
        series = eval_time_series(psi, t)
        rep.add(bound_check("shift_series_agreement",
                            np.max(np.abs(eval_time(psi, t) - series)), 0.0, 1e-10,
                            "frequency quadrature vs direct shift series"))
    xi = np.linspace(0, 2 * np.pi, GRID, endpoint=False)
    ff = frame_function(psi, xi)
    rep.add(bound_check("frame_function_identity",
                        np.max(np.abs(ff - psi.symbol.power(psi.shift_sign * xi))), 0.0,
                        1e-10, "periodized |psi^|^2 vs |Gamma|^2"))
    fmin = extrema(lambda x: frame_function(psi, x), xi, maximize=False)[1]
    fmax = extrema(lambda x: frame_function(psi, x), xi, maximize=True)[1]
    rep.add(deviation_check("bounds_consistency_A", fmin, b.A, 1e-9,
                            "extrema of the frame function"))
    rep.add(deviation_check("bounds_consistency_B", fmax, b.B, 1e-9,
                            "extrema of the frame function"))
    G = gram_matrix(psi, K_gram, (0, 0), spec=psi.spec).value
    rep.add(bound_check("gram_hermitian", hermitian_defect(G), 0.0, 1e-12, "G - G^H"))
    rep.add(bound_check("gram_toeplitz", is_toeplitz(G, 1e-12)[1], 0.0, 1e-12,
                        "diagonal constancy"))
    eig = gram_eigen_check(psi, K_gram)
    rep.add(bound_check("gram_eigen_lower", b.A - eig.lower, 0.0, 1e-6,
                        f"{2 * K_gram + 1}-square Gram spectrum"))
    rep.add(bound_check("gram_eigen_upper", eig.upper - b.B, 0.0, 1e-6,
                        f"{2 * K_gram + 1}-square Gram spectrum"))
    duals = [dual_symbol_coefficients(psi.symbol, M, b).residual for M in (8, 16, 32)]
    rep.add(flag_check("dual_residual_decreasing", _monotone(duals), "FFT quadrature",
                       "residuals " + ", ".join(f"{d:.3e}" for d in duals)))
    rec = [reconstruct_cardinal(psi, M).residual for M in (16, 32)]
    rep.add(flag_check("cardinal_reconstruction_decreasing", _monotone(rec, 1e-12),
                       "sum beta_k psi(t-k) vs psi^I",
                       "residuals " + ", ".join(f"{r:.3e}" for r in rec)))
    rep.diagnostics.update({"bounds": b.to_dict(),
                            "gram_eigen": [eig.lower, eig.upper],
                            "reconstruction": rec})
    return rep


def meyer_suite(model, gamma=None, report=None, tol=1e-10):
    rep = report or VerificationReport("meyer")
    coeffs = model.coeffs
    g = gamma if gamma is not None else _meyer.MeyerTargetSequence(coeffs.gamma)
    adm = _meyer.check_admissibility(g, 1e-12)
    rep.add(deviation_check("admissibility_1", adm.lhs1, 1.0, 1e-12 + adm.tail1,
                            "condition weights . gamma"))
    rep.add(deviation_check("admissibility_2", adm.lhs2, _meyer.HALF_SQRT2,
                            1e-12 + adm.tail2, "condition weights . gamma"))
    if adm.pass3:
        rep.add(bound_check("admissibility_3", adm.lhs3 + adm.tail3, 1.0, 1e-12,
                            "triple sum (sufficient)"))
    else:
        rep.add(bound_check("admissibility_3_grid", adm.h_grid_max, 1.0, 1e-12,
                            "dense-grid max |h| (series bound failed)",
                            f"series lhs3={adm.lhs3:.6g}"))
    rec = coeffs.recurrence_residuals()
    rep.add(bound_check("recurrence_residual", np.max(np.abs(rec), initial=0.0), 0.0,
                        1e-12, "lattice equations"))
    rep.add(deviation_check("h_at_0", _meyer.eval_h(coeffs, 0.0), 1.0, tol, "cosine series"))
    rep.add(deviation_check("h_at_pi_3", _meyer.eval_h(coeffs, np.pi / 3),
                            _meyer.HALF_SQRT2, tol, "cosine series"))
    rep.add(bound_check("h_deriv_at_0", abs(_meyer.eval_h_deriv(coeffs, 0.0)), 0.0, tol,
                        "term-by-term derivative"))
    rep.add(bound_check("h_deriv_at_pi_3", abs(_meyer.eval_h_deriv(coeffs, np.pi / 3)),
                        0.0, tol, "term-by-term derivative"))
    rep.add(bound_check("h_bound_grid", adm.h_grid_max, 1.0, 1e-12, "dense grid"))

    xi = np.linspace(-np.pi, np.pi, GRID, endpoint=False)
    pou = periodization(model.phi_hat, xi, breakpoints=_meyer.PHI_BREAKPOINTS)
    rep.add(bound_check("partition_of_unity", np.max(np.abs(pou - 1)), 0.0, 1e-10,
                        "sum |phi^(xi+2pi k)|^2"))
    m0, m1 = model.mask(xi), model.mask(xi + np.pi)
    rep.add(bound_check("mask_complementarity",
                        np.max(np.abs(np.abs(m0) ** 2 + np.abs(m1) ** 2 - 1)), 0.0, 1e-10,
                        "|m|^2 + |m(.+pi)|^2"))
    wide = np.linspace(-3 * np.pi, 3 * np.pi, GRID)
    via_mask = (np.exp(-0.5j * wide) * np.conj(model.mask(wide / 2 + np.pi))
                * model.phi_hat(wide / 2))
    rep.add(bound_check("wavelet_from_mask", np.max(np.abs(via_mask - model.psi_hat(wide))),
                        0.0, 1e-12, "two-scale relation"))

    k = np.arange(0, 9)
    target = np.array([coeffs.gamma[i] if i < coeffs.gamma.size else 0.0 for i in k])
    if not g.is_finite:
        target = g.materialize(8)
    psi_t = _meyer.eval_psi_time(model, 0.5 + 3 * k)
    lat = _meyer.eval_lattice(model, k)
    rep.add(bound_check("lattice_interpolation", np.max(np.abs(psi_t - target)), 0.0, 1e-8,
                        "psi^M(1/2+3k) vs gamma_k, 0<=k<=8"))
    rep.add(bound_check("lattice_agreement", np.max(np.abs(lat - psi_t)), 0.0, 1e-10,
                        "reduced integral vs full inverse transform"))
    s = np.random.default_rng(1).uniform(0, 10, 20)
    sym = _meyer.eval_psi_time(model, 0.5 + s) - _meyer.eval_psi_time(model, 0.5 - s)
    rep.add(bound_check("symmetry_about_half", np.max(np.abs(sym)), 0.0, 1e-10,
                        "psi(1/2+s) vs psi(1/2-s)"))
    G = gram_matrix(model, 8, (0, 0), spec=model.spec).value
    rep.add(bound_check("gram_orthonormality", np.max(np.abs(G - np.eye(G.shape[0]))), 0.0,
                        1e-7, "frequency quadrature, |k|<=8"))
    X = gram_matrix(model, 8, (0, 1), spec=model.spec).value
    rep.add(bound_check("cross_scale_orthogonality", np.max(np.abs(X)), 0.0, 1e-7,
                        "frequency quadrature, scales 0 vs 1"))
    rep.diagnostics.update({"admissibility": adm.to_dict(),
                            "h_abs_sum": coeffs.abs_sum})
    return rep


def rejected_matched(exc, suite="matched"):
    """Report recording a Riesz-bound rejection."""
    rep = VerificationReport(suite)
    rep.add(flag_check("riesz_bounds", False, "grid scan + Brent", str(exc)))
    rep.diagnostics["rejection"] = str(exc)
    rep.diagnostics["on_circle_roots"] = [complex(z) for z in exc.on_circle_roots]
    return rep


def rejected_meyer(exc, gamma, suite="meyer"):
    """Report recording an inadmissible bell function."""
    rep = VerificationReport(suite)
    rep.add(flag_check("admissible", False, "bell checks", str(exc)))
    rep.diagnostics["rejection"] = str(exc)
    rep.diagnostics["admissibility"] = _meyer.check_admissibility(gamma).to_dict()
    return rep


def run_suite(model, suite=None):
    """Run the battery matching ``model`` (or design it first from raw data).

    Raw ``DataSequence`` / ``MeyerTargetSequence`` inputs are designed here
    so that a rejection is recorded in the report instead of raised.
    """
    if isinstance(model, DataSequence):
        try:
            model = design_matched(model)
        except DesignRejected as exc:
            return rejected_matched(exc, suite or "matched")
        return matched_suite(model, VerificationReport(suite or "matched"))
    if isinstance(model, _meyer.MeyerTargetSequence):
        gamma = model
        try:
            model = _meyer.design_meyer(gamma)
        except _meyer.InadmissibleError as exc:
            return rejected_meyer(exc, gamma, suite or "meyer")
        return meyer_suite(model, gamma, VerificationReport(suite or "meyer"))
    if isinstance(model, MatchedWavelet):
        return matched_suite(model, VerificationReport(suite or "matched"))
    if isinstance(model, _meyer.MeyerWaveletModel):
        return meyer_suite(model, report=VerificationReport(suite or "meyer"))
    if isinstance(model, ShannonCardinal):
        return cardinal_suite(model, VerificationReport(suite or "cardinal"))
    raise TypeError(f"no suite for {type(model).__name__}")
