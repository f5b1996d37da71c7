"""Riesz-basis wavelets interpolating data on the half-integer lattice.

psi(x) = sum_k gamma_k psi^I(x - k) with psi^I the cardinal wavelet, so that
psi(n + 1/2) = gamma_n.  In frequency psi^(xi) = Gamma(-xi) psi^I^(xi); the
shifts of psi form a Riesz system with the extrema of |Gamma|^2 as bounds.
"""
from dataclasses import dataclass, field

import numpy as np

from .cardinal import SHANNON
from .sequence import (
    DataSequence,
    NotRieszError,
    RootFindingError,
    compute_frame_bounds,
    dual_symbol_coefficients,
    polynomial_roots,
    symbol_from_sequence,
    symbol_polynomial_coeffs,
    unit_circle_check,
    POSITIVITY_TOL,
)
from .verification import default_spec, fourier_inverse, gram_matrix, periodization

# psi(x) = sum gamma_k psi^I(x + SHIFT_SIGN * k)
SHIFT_SIGN = -1


class DesignRejected(NotRieszError):
    """Data whose symbol vanishes on the circle (no Riesz bounds)."""

    def __init__(self, message, xi=None, on_circle_roots=()):
        super().__init__(message)
        self.xi = xi
        self.on_circle_roots = tuple(on_circle_roots)


@dataclass(frozen=True)
class MatchedWavelet:
    gamma: DataSequence
    symbol: object
    bounds: object
    cardinal: object = SHANNON
    spec: object = field(default_factory=default_spec)
    shift_sign: int = SHIFT_SIGN

    @property
    def breakpoints(self):
        return self.cardinal.breakpoints

    @property
    def is_real(self):
        return self.symbol.is_real

    def hat(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self.symbol(self.shift_sign * xi) * self.cardinal.hat(xi)

    def __call__(self, t):
        return eval_time(self, t)


def design_matched(gamma, positivity_tol=POSITIVITY_TOL, spec=None,
                   cardinal=SHANNON, symbol_tol=1e-12):
    """Build the matched wavelet for ``gamma`` or reject it.

    Rejection carries the location of the symbol's minimum and, for finite
    data, the roots found on (or within 1e-6 of) the unit circle.
    """
    symbol = symbol_from_sequence(gamma, tol=symbol_tol)
    bounds = compute_frame_bounds(symbol, positivity_tol)
    if not bounds.is_riesz:
        offenders = ()
        if gamma.is_finite and gamma.values.size >= 2:
            try:
                roots = polynomial_roots(symbol_polynomial_coeffs(gamma))
                offenders = unit_circle_check(roots, 1e-6).offenders
            except (RootFindingError, ValueError):
                offenders = ()
        where = ", ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in offenders)
        msg = (
            f"min |Gamma|^2 = {bounds.A:.3e} at xi = {bounds.argmin:.6f}"
            + (f"; roots on the unit circle: {where}" if where else "")
            + "; move them off the circle with perturb_roots"
        )
        raise DesignRejected(msg, bounds.argmin, offenders)
    return MatchedWavelet(gamma, symbol, bounds, cardinal, spec or default_spec())


def eval_time_result(psi, t):
    """Quadrature result (values and error estimate) of psi at ``t``."""
    return fourier_inverse(psi.hat, psi.breakpoints, t, psi.spec)


def eval_time(psi, t):
    """psi(t) via the inverse transform over pi <= |xi| <= 2pi."""
    scalar = np.ndim(t) == 0
    v = eval_time_result(psi, t).value
    if psi.is_real:
        v = v.real
    return v[0] if scalar else v


def eval_time_series(psi, t):
    """Direct shift series sum_k gamma_k psi^I(t - k) (finite data only)."""
    g = psi.symbol.sequence
    t = np.asarray(t, dtype=float)
    k = g.indices()
    vals = psi.cardinal.wavelet(t[..., None] + psi.shift_sign * k)
    return vals @ g.values


@dataclass(frozen=True)
class InterpolationReport:
    residual: float
    points: np.ndarray
    residuals: np.ndarray
    tol: float

    @property
    def passed(self):
        return bool(self.residual <= self.tol)


def verify_interpolation(psi, K=20, tol=1e-8):
    n = np.arange(-K, K + 1)
    got = eval_time(psi, n + 0.5)
    want = np.array([psi.symbol.sequence[int(k)] for k in n])
    res = np.abs(got - want)
    return InterpolationReport(float(res.max()), n, res, tol)


def frame_function(psi, xi):
    """sum_k |psi^(xi + 2 pi k)|^2; equals |Gamma(-xi)|^2 (|Gamma(xi)|^2 for real data)."""
    scalar = np.ndim(xi) == 0
    out = periodization(psi.hat, np.atleast_1d(xi), breakpoints=psi.breakpoints)
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class EigenInterval:
    eigenvalues: np.ndarray
    lower: float
    upper: float
    A: float
    B: float
    eps: float

    @property
    def inside(self):
        return bool(self.lower >= self.A - self.eps and self.upper <= self.B + self.eps)


def gram_eigen_check(psi, K, eps=1e-6):
    """Spectrum of the (2K+1)-square Gram matrix of integer shifts of psi."""
    G = gram_matrix(psi, K, (0, 0), spec=psi.spec).value
    ev = np.linalg.eigvalsh(0.5 * (G + G.conj().T))
    return EigenInterval(ev, float(ev[0]), float(ev[-1]), psi.bounds.A, psi.bounds.B, eps)


@dataclass(frozen=True)
class ReconstructionReport:
    residual: float
    M: int
    dual_residual: float


def reconstruct_cardinal(psi, M, t=None):
    """sup_t |sum_{|k|<=M} beta_k psi(t - k) - psi^I(t)| with beta from 1/Gamma.

    Default grid: 121 points on [-3, 3].
    """
    t = np.linspace(-3.0, 3.0, 121) if t is None else np.asarray(t, dtype=float)
    dual = dual_symbol_coefficients(psi.symbol, M, psi.bounds)
    k = np.arange(-M, M + 1)
    pts = (t[:, None] + psi.shift_sign * k[None, :]).ravel()
    vals = eval_time(psi, pts).reshape(t.size, k.size)
    approx = vals @ dual.beta
    err = np.abs(approx - psi.cardinal.wavelet(t))
    return ReconstructionReport(float(err.max()), M, dual.residual)
