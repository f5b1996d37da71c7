"""Interpolation data, its trigonometric symbol, Riesz bounds and root tests.

The symbol of a sequence gamma is Gamma(xi) = sum_k gamma_k exp(i k xi).  Its
squared modulus bounds the shift system of the matched wavelet; for finite
data the lower bound is positive iff the polynomial
z^max(-N1, 0) * sum_k gamma_k z^k has no roots on the unit circle.
"""
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.optimize import minimize_scalar

from . import _kernels

GRID_POINTS = 4096
XI_TOL = 1e-12
POSITIVITY_TOL = 1e-10
MAX_TRUNCATION = 2_000_000


class RootFindingError(RuntimeError):
    """Root solve failed the residual test; ``roots`` holds what was found."""

    def __init__(self, message, roots):
        super().__init__(message)
        self.roots = roots


class NotRieszError(ValueError):
    """The symbol vanishes (numerically) somewhere on the circle."""


@dataclass(frozen=True)
class DecayCertificate:
    """Claim |gamma_k| <= constant * |k|^(-2 - epsilon) for every k != 0."""

    constant: float
    epsilon: float

    def __post_init__(self):
        if not (self.constant >= 0 and self.epsilon > 0):
            raise ValueError("decay certificate needs constant >= 0, epsilon > 0")

    def bound(self, k):
        k = np.abs(np.asarray(k, dtype=float))
        with np.errstate(divide="ignore"):
            return np.where(k > 0, self.constant * k ** (-2.0 - self.epsilon), np.inf)

    def verify(self, indices, values):
        indices = np.asarray(indices)
        mag = np.abs(np.asarray(values))
        bad = mag > self.bound(indices) * (1 + 1e-12)
        if np.any(bad):
            k = int(indices[np.argmax(bad)])
            raise ValueError(
                f"decay certificate violated at k={k}: "
                f"|gamma_k|={mag[np.argmax(bad)]:.3e} > {float(self.bound(k)):.3e}"
            )

    def tail_power_sum(self, N, power):
        """Upper bound of sum_{k > N} constant * k^(-power), power > 1."""
        if power <= 1:
            raise ValueError("tail sum diverges")
        return self.constant * N ** (1.0 - power) / (power - 1.0)


def _trim(values, start):
    nz = np.flatnonzero(values != 0)
    if nz.size == 0:
        return values[:0], 0
    return values[nz[0]: nz[-1] + 1], start + int(nz[0])


@dataclass(frozen=True)
class DataSequence:
    """Samples gamma_k for k = start, ..., start + len(values) - 1.

    Finite sequences are stored trimmed.  An infinite sequence carries a
    vectorized ``generator`` k -> gamma_k and a decay certificate; ``values``
    is then empty until materialized with :meth:`truncate`.
    """

    values: np.ndarray
    start: int = 0
    generator: Optional[Callable] = None
    decay: Optional[DecayCertificate] = None

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.dtype.kind not in "fc":
            vals = vals.astype(float)
        if vals.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        if self.generator is None:
            vals, start = _trim(vals, int(self.start))
            object.__setattr__(self, "start", start)
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def finite(cls, values, start=0):
        return cls(np.asarray(values), start)

    @classmethod
    def infinite(cls, generator, decay):
        return cls(np.zeros(0), 0, generator=generator, decay=decay)

    @property
    def is_finite(self):
        return self.generator is None

    @property
    def is_real(self):
        return self.values.dtype.kind == "f"

    @property
    def stop(self):
        """Index one past the last stored sample."""
        return self.start + len(self.values)

    def indices(self):
        return np.arange(self.start, self.stop)

    def __getitem__(self, k):
        if self.generator is not None:
            return self.generator(np.asarray([k]))[0]
        if self.start <= k < self.stop:
            return self.values[k - self.start]
        return 0.0

    def truncate(self, N):
        """Finite two-sided truncation to |k| <= N (certificate checked)."""
        if self.is_finite:
            idx = self.indices()
            keep = np.abs(idx) <= N
            if not keep.any():
                return DataSequence(self.values[:0], 0)
            return DataSequence(self.values[keep], int(idx[keep][0]))
        k = np.arange(-N, N + 1)
        vals = np.asarray(self.generator(k))
        self.decay.verify(k, vals)
        return DataSequence(vals, -N)

    def scaled(self, c):
        if not self.is_finite:
            raise ValueError("scaling an infinite sequence is not supported")
        return DataSequence(self.values * c, self.start)


@dataclass(frozen=True)
class SymbolPolynomial:
    """Gamma(xi) = sum_j coeffs[j] exp(i (offset + j) xi).

    ``truncation_error`` bounds sup |Gamma_true - Gamma| when the symbol was
    cut from an infinite sequence.
    """

    coeffs: np.ndarray
    offset: int = 0
    truncation_error: float = 0.0
    grid_points: int = GRID_POINTS

    def __call__(self, xi):
        xi = np.asarray(xi, dtype=float)
        flat = xi.ravel()
        if self.coeffs.size == 0:
            return np.zeros(xi.shape, dtype=complex)
        return _kernels.trig_poly(self.coeffs, self.offset, flat).reshape(xi.shape)

    def power(self, xi):
        """|Gamma(xi)|^2."""
        v = self(xi)
        return v.real ** 2 + v.imag ** 2

    def grid(self):
        return np.linspace(0.0, 2 * np.pi, self.grid_points, endpoint=False)

    @property
    def is_real(self):
        return self.coeffs.dtype.kind == "f"

    @property
    def sequence(self):
        return DataSequence(self.coeffs, self.offset)


@dataclass(frozen=True)
class FrameBounds:
    A: float
    B: float
    argmin: float
    argmax: float
    uncertainty: float = 0.0
    positivity_tol: float = POSITIVITY_TOL

    @property
    def is_riesz(self):
        return self.A - self.uncertainty > self.positivity_tol

    def to_dict(self):
        return {
            "A": self.A,
            "B": self.B,
            "argmin": self.argmin,
            "argmax": self.argmax,
            "uncertainty": self.uncertainty,
            "is_riesz": self.is_riesz,
        }


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray
    leading: complex
    multiplicities: tuple = field(default=())

    @property
    def circle_distance(self):
        if self.roots.size == 0:
            return math.inf
        return float(np.min(np.abs(np.abs(self.roots) - 1.0)))

    def rebuild(self):
        """Ascending coefficients leading * prod (z - r)."""
        c = P.polyfromroots(self.roots) * self.leading
        return c

    def to_dict(self):
        return {
            "roots": [[float(r.real), float(r.imag)] for r in self.roots],
            "leading": [float(np.real(self.leading)), float(np.imag(self.leading))],
            "multiplicities": [
                {"root": [float(r.real), float(r.imag)], "multiplicity": m}
                for r, m in self.multiplicities
            ],
            "circle_distance": self.circle_distance,
        }


def symbol_from_sequence(gamma, tol=1e-12, grid_points=GRID_POINTS):
    """Symbol of ``gamma``; infinite data is cut where the certified tail < tol."""
    if gamma.is_finite:
        return SymbolPolynomial(gamma.values, gamma.start, 0.0, grid_points)
    if gamma.decay is None:
        raise ValueError("infinite sequence needs a decay certificate")
    c, eps = gamma.decay.constant, gamma.decay.epsilon
    # two-sided tail: 2 * sum_{k>N} C k^(-2-eps) <= 2C N^(-1-eps)/(1+eps)
    if c == 0:
        N = 1
    else:
        N = max(1, math.ceil((2 * c / ((1 + eps) * tol)) ** (1.0 / (1 + eps))))
    if N > MAX_TRUNCATION:
        raise ValueError(
            f"certified truncation needs {N} terms for tol={tol:g}; "
            "loosen the tolerance or sharpen the certificate"
        )
    cut = gamma.truncate(N)
    tail = 2 * gamma.decay.tail_power_sum(N, 2 + eps)
    return SymbolPolynomial(cut.values, cut.start, tail, grid_points)


def _refine(fun, centre, half_width, maximize=False):
    sign = -1.0 if maximize else 1.0
    res = minimize_scalar(
        lambda x: sign * fun(np.array([x]))[0],
        bounds=(centre - half_width, centre + half_width),
        method="bounded",
        options={"xatol": XI_TOL},
    )
    x = float(res.x)
    fx = float(fun(np.array([x]))[0])
    fc = float(fun(np.array([centre]))[0])
    # keep the grid point if refinement wandered off a flat extremum
    if (fc < fx) != maximize and fc != fx:
        return centre, fc
    return x, fx


def _local_extrema(vals, maximize):
    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    if maximize:
        mask = (vals >= left) & (vals >= right)
    else:
        mask = (vals <= left) & (vals <= right)
    return np.flatnonzero(mask)


def extrema(fun, grid, maximize, candidates=6):
    """Refined global extremum of a 2pi-periodic function sampled on ``grid``."""
    vals = fun(grid)
    idx = _local_extrema(vals, maximize)
    if idx.size == 0:
        idx = np.array([int(np.argmax(vals) if maximize else np.argmin(vals))])
    order = np.argsort(-vals[idx] if maximize else vals[idx])[:candidates]
    h = grid[1] - grid[0]
    best_x, best_f = None, None
    for i in idx[order]:
        x, fx = _refine(fun, grid[i], h, maximize)
        if best_f is None or (fx > best_f if maximize else fx < best_f):
            best_x, best_f = x, fx
    return best_x % (2 * np.pi), best_f


def compute_frame_bounds(symbol, positivity_tol=POSITIVITY_TOL):
    """A = min |Gamma|^2 and B = max |Gamma|^2 over the circle.

    A dense grid locates candidate extrema; bounded Brent refines each to
    ~1e-12 in xi.  A failing lower bound is reported via ``is_riesz``.
    """
    grid = symbol.grid()
    xmin, A = extrema(symbol.power, grid, maximize=False)
    xmax, B = extrema(symbol.power, grid, maximize=True)
    tau = symbol.truncation_error
    unc = 2 * math.sqrt(max(B, 0.0)) * tau + tau * tau
    return FrameBounds(max(A, 0.0), B, xmin, xmax, unc, positivity_tol)


def _group_roots(roots, tol=1e-6):
    groups = []
    for r in roots:
        for g in groups:
            if abs(r - g[0]) <= tol * max(1.0, abs(r)):
                g[1] += 1
                break
        else:
            groups.append([r, 1])
    return tuple((complex(r), m) for r, m in groups)


def polynomial_roots(coeffs, tol=1e-10, polish_steps=3):
    """Roots of sum_j coeffs[j] z^j (ascending), companion eigenvalues + Newton.

    Each root must have normwise backward error below ``tol``:
    |p(r)| <= tol * sum_j |c_j| max(1, |r|)^j.
    """
    c = np.trim_zeros(np.asarray(coeffs), "b")
    if c.size < 2:
        raise ValueError("polynomial has degree 0; it has no roots")
    nz_low = int(np.argmax(c != 0))
    body = c[nz_low:]
    roots = P.polyroots(body).astype(complex) if body.size > 1 else np.zeros(0, complex)
    d = P.polyder(body)
    for _ in range(polish_steps):
        pv = P.polyval(roots, body)
        dv = P.polyval(roots, d)
        step = np.where(dv != 0, pv / np.where(dv != 0, dv, 1), 0)
        better = np.abs(P.polyval(roots - step, body)) < np.abs(pv)
        roots = np.where(better, roots - step, roots)
    roots = np.concatenate([np.zeros(nz_low, complex), roots])
    scale = P.polyval(np.maximum(np.abs(roots), 1.0), np.abs(c))
    resid = np.abs(P.polyval(roots, c))
    bad = resid > tol * np.maximum(scale, 1e-300)
    if np.any(bad):
        raise RootFindingError(
            f"{int(bad.sum())} root(s) failed the residual test "
            f"(worst {float(np.max(resid / scale)):.2e})",
            roots[~bad],
        )
    if np.all(np.isreal(c)):
        roots = _pair_conjugates(roots)
    order = np.lexsort((roots.imag, roots.real))
    roots = roots[order]
    return RootSet(roots, complex(c[-1]), _group_roots(roots))


def _pair_conjugates(roots, tol=1e-8):
    """Snap near-real roots to the axis and make complex pairs exact mirrors."""
    out = roots.copy()
    small = np.abs(out.imag) <= tol * np.maximum(1.0, np.abs(out))
    out[small] = out[small].real
    upper = np.flatnonzero(out.imag > 0)
    lower = list(np.flatnonzero(out.imag < 0))
    for i in upper:
        if not lower:
            break
        j = min(lower, key=lambda j: abs(out[j] - np.conj(out[i])))
        lower.remove(j)
        out[j] = np.conj(out[i])
    return out


def symbol_polynomial_coeffs(gamma):
    """Ascending coefficients of z^max(-N1, 0) * sum_k gamma_k z^k."""
    if not gamma.is_finite:
        raise ValueError("root analysis needs a finite sequence")
    shift = max(gamma.start, 0)
    return np.concatenate([np.zeros(shift, gamma.values.dtype), gamma.values])


@dataclass(frozen=True)
class CircleCheck:
    passed: bool
    offenders: tuple
    margin: float


def unit_circle_check(roots, margin):
    """Pass iff every root keeps | |z| - 1 | >= margin."""
    if not margin > 0:
        raise ValueError("margin must be positive")
    dist = np.abs(np.abs(roots.roots) - 1.0)
    off = tuple(complex(r) for r in roots.roots[dist < margin])
    return CircleCheck(not off, off, margin)


def perturb_roots(gamma, delta):
    """Push roots with | |z| - 1 | < delta radially out to modulus 1 + delta.

    The rebuilt polynomial keeps the lowest coefficient gamma_{N1}; real data
    stays real.  Returns ``gamma`` itself when nothing needs moving.
    """
    if not delta > 0:
        raise ValueError("delta must be positive")
    if not gamma.is_finite:
        raise ValueError("perturbation needs a finite sequence")
    body = gamma.values
    if body.size < 2:
        raise ValueError("degree-0 polynomial: nothing to perturb")
    rs = polynomial_roots(body)
    r = rs.roots.copy()
    near = np.abs(np.abs(r) - 1.0) < delta
    if not near.any():
        return gamma
    r[near] = (1.0 + delta) * r[near] / np.abs(r[near])
    if gamma.is_real:
        r = _pair_conjugates(r)
    monic = P.polyfromroots(r)
    new = monic * (body[0] / monic[0])
    if gamma.is_real:
        new = new.real
    return DataSequence(new, gamma.start)


@dataclass(frozen=True)
class DualCoefficients:
    """beta_k, k = -M..M, Fourier coefficients of 1/Gamma."""

    beta: np.ndarray
    M: int
    residual: float

    def __getitem__(self, k):
        return self.beta[k + self.M] if -self.M <= k <= self.M else 0.0


def dual_symbol_coefficients(symbol, M, bounds=None, grid_points=None):
    """Trapezoid-rule (FFT) Fourier coefficients of 1/Gamma up to |k| <= M.

    The attached residual is sup |Gamma * sum beta_k e^{ik xi} - 1| on a grid.
    """
    bounds = bounds or compute_frame_bounds(symbol)
    if not bounds.is_riesz:
        raise NotRieszError(
            f"1/Gamma is unbounded: min |Gamma|^2 = {bounds.A:.3e} at xi={bounds.argmin:.6f}"
        )
    n = grid_points or max(GRID_POINTS, 8 * (M + 1))
    xi = 2 * np.pi * np.arange(n) / n
    inv = 1.0 / symbol(xi)
    c = np.fft.fft(inv) / n  # c[k] ~ beta_k with e^{-ik xi} kernel
    k = np.arange(-M, M + 1)
    beta = c[k % n]
    if symbol.is_real:
        # real data: beta is real too (symbol conjugate-symmetric)
        beta = beta.real.astype(float)
    check = np.linspace(0, 2 * np.pi, 4 * n, endpoint=False)
    approx = _kernels.trig_poly(np.asarray(beta, dtype=complex), -M, check)
    residual = float(np.max(np.abs(symbol(check) * approx - 1.0)))
    return DualCoefficients(np.asarray(beta), M, residual)
