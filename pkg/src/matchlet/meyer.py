"""Meyer wavelets interpolating real data on the lattice 1/2 + 3k, k >= 0.

The Meyer profile is encoded by its bell h = cos(theta), an even cosine series
h(xi) = sum_n h^(n) cos(3 n xi).  With this parameterization

    psi^M(1/2 + 3k) = ((-1)^k h^(k) + 2 h^(2k)) / (3 sqrt 2),   k >= 1,
    psi^M(1/2)      = sqrt(2) h^(0),

so the data fix h^(0) = gamma_0 / sqrt(2) and one linear relation per k >= 1.
The odd coefficients are the free ones; choosing

    h^(2k+1) = 3 sqrt 2 sum_q (-1)^(q-1) 2^q gamma_{2^q (2k+1)}

gives the closed form h^(2^p m) = 3 sqrt 2 sum_q (-1)^q 2^q gamma_{2^(q+p) m}
for p >= 1.  The wavelet is admissible when h(0) = 1, h(pi/3) = sqrt(2)/2 and
|h| <= 1; the first two are linear in gamma (conditions 1 and 2 below) and
sum |h^(n)| <= 1 is a sufficient test for the third.
"""
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .sequence import DecayCertificate
from .verification import cosine_inverse, default_spec, integrate

SQRT2 = math.sqrt(2.0)
HALF_SQRT2 = SQRT2 / 2.0
BELL_FREQ = 3.0
PSI_BREAKPOINTS = (2 * np.pi / 3, np.pi, 4 * np.pi / 3, 2 * np.pi, 8 * np.pi / 3)
PHI_BREAKPOINTS = (0.0, 2 * np.pi / 3, np.pi, 4 * np.pi / 3)
DEFAULT_N_MAX = 1024


class InadmissibleError(ValueError):
    """Bell function violates h(0)=1, h(pi/3)=sqrt(2)/2 or |h| <= 1."""

    def __init__(self, message, xi=None):
        super().__init__(message)
        self.xi = xi


class SingularSystemError(ValueError):
    pass


class Gam3Warning(UserWarning):
    """The sufficient bound sum |h^(n)| <= 1 fails (|h| <= 1 may still hold)."""


@dataclass(frozen=True)
class MeyerTargetSequence:
    """gamma_k for k = 0..len(values)-1, or a generator with a decay certificate."""

    values: np.ndarray = field(default_factory=lambda: np.zeros(0))
    decay: Optional[DecayCertificate] = None
    generator: Optional[Callable] = None

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.dtype.kind == "c":
            raise ValueError("Meyer lattice data must be real")
        vals = vals.astype(float).copy()
        if vals.ndim != 1 or not np.all(np.isfinite(vals)):
            raise ValueError("values must be a finite one-dimensional array")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        if self.generator is not None and self.decay is None:
            raise ValueError("an infinite sequence needs a decay certificate")
        if self.decay is not None and vals.size > 1:
            self.decay.verify(np.arange(1, vals.size), vals[1:])

    @property
    def is_finite(self):
        return self.generator is None

    def materialize(self, n_max=DEFAULT_N_MAX):
        """gamma_0..gamma_L: all stored values, or the generator up to n_max."""
        if self.is_finite:
            return np.asarray(self.values)
        k = np.arange(0, n_max + 1)
        vals = np.asarray(self.generator(k), dtype=float)
        self.decay.verify(k[1:], vals[1:])
        return vals

    def tail_sum(self, N, weight):
        """Bound of weight * sum_{j > N} j |gamma_j| from the certificate."""
        if self.is_finite:
            return 0.0
        # sum_{j>N} C j^(-1-eps) <= C N^(-eps) / eps
        return weight * self.decay.tail_power_sum(N, 1.0 + self.decay.epsilon)


# ---------------------------------------------------------------------------
# admissibility
# ---------------------------------------------------------------------------

def two_adic_valuation(n):
    n = np.asarray(n, dtype=np.int64)
    q = np.zeros(n.shape, dtype=np.int64)
    m = n.copy()
    while True:
        even = (m > 0) & (m % 2 == 0)
        if not even.any():
            return q
        m[even] //= 2
        q[even] += 1


def condition_weights(n_max):
    """Weights w1, w2 with h(0) = w1 . gamma and h(pi/3) = w2 . gamma."""
    n = np.arange(n_max + 1)
    q = two_adic_valuation(n)
    s = (-1.0) ** (q - 1) * 2.0 ** q
    w1 = SQRT2 * (1.0 + 4.0 * s)
    w2 = SQRT2 * (1.0 - 2.0 * s)
    w1[0] = w2[0] = 1.0 / SQRT2
    return w1, w2


def _lhs3_direct(g):
    """|gamma_0|/sqrt2 + 3 sqrt2 sum_{m odd} sum_p |sum_q (-2)^q gamma_{2^(q+p) m}|."""
    L = g.size
    if L == 0:
        return 0.0
    total = abs(g[0]) / SQRT2
    for m in range(1, L, 2):
        base = m
        while base < L:
            inner = 0.0
            idx, w = base, 1.0
            while idx < L:
                inner += w * g[idx]
                idx *= 2
                w *= -2.0
            total += 3.0 * SQRT2 * abs(inner)
            base *= 2
    return total


@dataclass(frozen=True)
class AdmissibilityReport:
    lhs1: float
    lhs2: float
    lhs3: float
    tail1: float
    tail2: float
    tail3: float
    tol: float
    h_grid_max: float

    @property
    def residual1(self):
        return self.lhs1 - 1.0

    @property
    def residual2(self):
        return self.lhs2 - HALF_SQRT2

    @property
    def slack3(self):
        return 1.0 - self.lhs3

    @property
    def pass1(self):
        return abs(self.residual1) <= self.tol + self.tail1

    @property
    def pass2(self):
        return abs(self.residual2) <= self.tol + self.tail2

    @property
    def pass3(self):
        return self.lhs3 + self.tail3 <= 1.0 + self.tol

    @property
    def pass_grid(self):
        """|h| <= 1 on a dense grid: admits data the sufficient test rejects."""
        return self.h_grid_max <= 1.0 + self.tol

    @property
    def bound_mode(self):
        if self.pass3:
            return "series"
        return "grid" if self.pass_grid else "fail"

    @property
    def passed(self):
        return self.pass1 and self.pass2 and (self.pass3 or self.pass_grid)

    def to_dict(self):
        return {
            "lhs1": self.lhs1, "lhs2": self.lhs2, "lhs3": self.lhs3,
            "residual1": self.residual1, "residual2": self.residual2,
            "slack3": self.slack3,
            "tail1": self.tail1, "tail2": self.tail2, "tail3": self.tail3,
            "pass1": self.pass1, "pass2": self.pass2, "pass3": self.pass3,
            "h_grid_max": self.h_grid_max, "pass_grid": self.pass_grid,
            "bound_mode": self.bound_mode, "tol": self.tol,
        }


def check_admissibility(gamma, tol=1e-12, n_max=DEFAULT_N_MAX):
    g = gamma.materialize(n_max)
    L = g.size
    w1, w2 = condition_weights(max(L - 1, 0))
    N = max(L - 1, 1)
    coef = _kernels.dyadic_coefficients(g, max(L - 1, 0))
    return AdmissibilityReport(
        lhs1=float(w1 @ g) if L else 0.0,
        lhs2=float(w2 @ g) if L else 0.0,
        lhs3=float(_lhs3_direct(g)),
        tail1=gamma.tail_sum(N, 5 * SQRT2),
        tail2=gamma.tail_sum(N, 5 * SQRT2),
        tail3=gamma.tail_sum(N, 6 * SQRT2),
        tol=tol,
        h_grid_max=float(np.max(np.abs(_h_on_grid(coef)[1]))),
    )


# ---------------------------------------------------------------------------
# bell coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BellCoefficients:
    coef: np.ndarray
    gamma: np.ndarray
    tail_bound: float = 0.0

    @property
    def n_max(self):
        return self.coef.size - 1

    def __getitem__(self, n):
        return float(self.coef[n]) if 0 <= n < self.coef.size else 0.0

    def recurrence_residuals(self):
        return recurrence_residuals(self.coef, self.gamma)

    @property
    def abs_sum(self):
        return float(np.abs(self.coef).sum())


def recurrence_residuals(coef, gamma):
    """Lattice equations for k = 0..n_max//2.

    k >= 1: (-1)^k h^(k) + 2 h^(2k) - 3 sqrt2 gamma_k;
    k = 0:  3 h^(0) - (3 sqrt2 / 2) gamma_0  (the k = 0 cosine integral is
    twice the k >= 1 one).
    """
    coef = np.asarray(coef)
    K = (coef.size - 1) // 2
    k = np.arange(K + 1)
    g = np.zeros(K + 1)
    n = min(K + 1, len(gamma))
    g[:n] = gamma[:n]
    lhs = (-1.0) ** k * coef[k] + 2.0 * coef[2 * k]
    rhs = 3.0 * SQRT2 * g
    rhs[0] *= 0.5
    return lhs - rhs


def solve_h_coefficients(gamma, n_max=None):
    """Bell coefficients h^(0..n_max) reproducing ``gamma`` on 1/2 + 3k.

    Finite data need no truncation (h^(n) = 0 beyond the last sample);
    infinite data are cut at ``n_max`` (default 1024) and carry a certified
    l1 bound on the omitted part.
    """
    if gamma.is_finite:
        g = gamma.materialize()
        n = max(g.size - 1, n_max or 0, 1)
        tail = 0.0
    else:
        n = n_max or DEFAULT_N_MAX
        g = gamma.materialize(n)
        tail = gamma.tail_sum(n, 6 * SQRT2)
    coef = _kernels.dyadic_coefficients(g, n)
    coef.setflags(write=False)
    g = np.asarray(g).copy()
    g.setflags(write=False)
    return BellCoefficients(coef, g, tail)


def eval_h(coeffs, xi):
    c = coeffs.coef if isinstance(coeffs, BellCoefficients) else np.asarray(coeffs)
    xi = np.asarray(xi, dtype=float)
    out = _kernels.cos_series(c, BELL_FREQ, xi.ravel()).reshape(xi.shape)
    return out.item() if out.ndim == 0 else out


def eval_h_deriv(coeffs, xi):
    c = coeffs.coef if isinstance(coeffs, BellCoefficients) else np.asarray(coeffs)
    xi = np.asarray(xi, dtype=float)
    out = _kernels.cos_series_deriv(c, BELL_FREQ, xi.ravel()).reshape(xi.shape)
    return out.item() if out.ndim == 0 else out


def _h_on_grid(coef, n=4097):
    # period 2pi/3 and even: [0, pi/3] covers every value
    xi = np.linspace(0.0, np.pi / 3, n)
    return xi, _kernels.cos_series(np.asarray(coef, dtype=float), BELL_FREQ, xi)


# ---------------------------------------------------------------------------
# Meyer model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class _ScalingView:
    model: "MeyerWaveletModel"
    breakpoints: tuple = PHI_BREAKPOINTS

    def hat(self, xi):
        return self.model.phi_hat(xi)


@dataclass(frozen=True)
class MeyerWaveletModel:
    coeffs: BellCoefficients
    spec: object = field(default_factory=default_spec)
    breakpoints: tuple = PSI_BREAKPOINTS

    def h(self, u):
        return np.asarray(eval_h(self.coeffs, u))

    def s(self, u):
        """sin(theta) = sgn(u) sqrt(1 - h^2); theta itself is never formed."""
        u = np.asarray(u, dtype=float)
        h = self.h(u)
        return np.sign(u) * np.sqrt(np.maximum(0.0, 1.0 - h * h))

    def _cos_sin_lambda(self, xi):
        a = np.abs(np.asarray(xi, dtype=float))
        c = np.ones(a.shape)
        s = np.zeros(a.shape)
        b1 = (a >= 2 * np.pi / 3) & (a <= 4 * np.pi / 3)
        b2 = (a > 4 * np.pi / 3) & (a <= 8 * np.pi / 3)
        if b1.any():
            u = a[b1] - np.pi
            h, sn = self.h(u), self.s(u)
            c[b1] = (h - sn) / SQRT2
            s[b1] = (h + sn) / SQRT2
        if b2.any():
            v = a[b2] / 2 - np.pi
            h, sn = self.h(v), self.s(v)
            c[b2] = (h + sn) / SQRT2
            s[b2] = (h - sn) / SQRT2
        return c, s

    def cos_lambda(self, xi):
        return self._cos_sin_lambda(xi)[0]

    def sin_lambda(self, xi):
        return self._cos_sin_lambda(xi)[1]

    def phi_hat(self, xi):
        xi = np.asarray(xi, dtype=float)
        c = self.cos_lambda(xi)
        return np.where(np.abs(xi) <= 4 * np.pi / 3, c, 0.0)

    def psi_hat(self, xi):
        xi = np.asarray(xi, dtype=float)
        return np.exp(-0.5j * xi) * self.sin_lambda(xi)

    hat = psi_hat

    def mask(self, xi):
        """2pi-periodic mask m(xi) = phi^(2 xi) for |xi| < pi."""
        xi = np.asarray(xi, dtype=float)
        r = (xi + np.pi) % (2 * np.pi) - np.pi
        return self.phi_hat(2 * r)

    @property
    def scaling(self):
        return _ScalingView(self)

    def __call__(self, t):
        return eval_psi_time(self, t)


def build_meyer(coeffs, tol=1e-10, strict=True, spec=None, grid_points=4097):
    """Assemble the Meyer model after checking the bell function.

    |h| <= 1 is always enforced on a dense grid; the endpoint identities
    h(0) = 1 and h(pi/3) = sqrt(2)/2 are enforced when ``strict``.
    """
    xi, hv = _h_on_grid(coeffs.coef, grid_points)
    i = int(np.argmax(np.abs(hv)))
    if abs(hv[i]) > 1.0 + 1e-12:
        raise InadmissibleError(
            f"|h| = {abs(hv[i]):.12g} > 1 at xi = {xi[i]:.6f}", float(xi[i])
        )
    if strict:
        h0 = eval_h(coeffs, 0.0)
        h1 = eval_h(coeffs, np.pi / 3)
        if abs(h0 - 1.0) > tol:
            raise InadmissibleError(f"h(0) = {h0:.15g}, expected 1", 0.0)
        if abs(h1 - HALF_SQRT2) > tol:
            raise InadmissibleError(
                f"h(pi/3) = {h1:.15g}, expected sqrt(2)/2", float(np.pi / 3)
            )
    return MeyerWaveletModel(coeffs, spec or default_spec())


def design_meyer(gamma, n_max=None, tol=1e-10, strict=True, spec=None):
    return build_meyer(solve_h_coefficients(gamma, n_max), tol, strict, spec)


def eval_psi_time_result(model, t):
    tau = np.atleast_1d(np.asarray(t, dtype=float)) - 0.5
    return cosine_inverse(model.sin_lambda, model.breakpoints, tau, model.spec)


def eval_psi_time(model, t):
    """psi^M(t) = (1/pi) int_{2pi/3}^{8pi/3} cos((t - 1/2) xi) sin(lambda(xi)) dxi."""
    scalar = np.ndim(t) == 0
    v = eval_psi_time_result(model, t).value
    return float(v[0]) if scalar else v


def lattice_series(coeffs, k):
    """Exact lattice value from the cosine coefficients (no quadrature)."""
    k = np.atleast_1d(np.asarray(k, dtype=np.int64))
    c = coeffs.coef
    out = np.empty(k.shape)
    for i, kk in enumerate(k):
        if kk == 0:
            out[i] = SQRT2 * c[0]
        else:
            a = c[kk] if kk < c.size else 0.0
            b = c[2 * kk] if 2 * kk < c.size else 0.0
            out[i] = ((-1.0) ** kk * a + 2.0 * b) / (3.0 * SQRT2)
    return out


def eval_lattice(model, k, check_tol=1e-9):
    """psi^M(1/2 + 3k) from the reduced integral over [-pi/3, pi/3].

    Cross-checked against :func:`lattice_series`; a disagreement beyond
    ``check_tol`` raises.
    """
    scalar = np.ndim(k) == 0
    kk = np.atleast_1d(np.asarray(k, dtype=np.int64))
    if np.any(kk < 0):
        raise ValueError("lattice index must be nonnegative")
    sign = (-1.0) ** kk

    def integrand(x):
        h = model.h(x)
        return (sign[:, None] * np.cos(3 * np.outer(kk, x))
                + 2 * np.cos(6 * np.outer(kk, x))) * h[None, :]

    r = integrate(integrand, (-np.pi / 3, np.pi / 3), model.spec, breakpoints=(0.0,))
    val = r.value / (np.pi * SQRT2)
    exact = lattice_series(model.coeffs, kk)
    worst = float(np.max(np.abs(val - exact)))
    if worst > check_tol:
        raise ArithmeticError(
            f"lattice quadrature disagrees with the exact series by {worst:.3e}"
        )
    return float(val[0]) if scalar else val


def project_feasible(desired, free_indices, tol=1e-12):
    """Adjust two entries of ``desired`` so conditions 1 and 2 hold exactly.

    Condition 3 is only checked; a failure emits :class:`Gam3Warning`.
    """
    if not desired.is_finite:
        raise ValueError("project_feasible needs finite data")
    i, j = (int(v) for v in free_indices)
    if i == j or i < 0 or j < 0:
        raise ValueError("free indices must be two distinct nonnegative integers")
    g = np.zeros(max(desired.values.size, i + 1, j + 1))
    g[: desired.values.size] = desired.values
    w1, w2 = condition_weights(g.size - 1)
    M = np.array([[w1[i], w1[j]], [w2[i], w2[j]]])
    det = np.linalg.det(M)
    if abs(det) <= 1e-12 * np.abs(M).max() ** 2:
        raise SingularSystemError(
            f"free indices ({i}, {j}) give a singular system; pick indices with "
            "different 2-adic valuations, or include index 0"
        )
    rest = g.copy()
    rest[[i, j]] = 0.0
    rhs = np.array([1.0 - w1 @ rest, HALF_SQRT2 - w2 @ rest])
    sol = np.linalg.solve(M, rhs)
    # one step of iterative refinement keeps fixed points fixed to rounding
    g[[i, j]] = sol
    r = np.array([1.0 - w1 @ g, HALF_SQRT2 - w2 @ g])
    g[[i, j]] += np.linalg.solve(M, r)
    out = MeyerTargetSequence(g)
    rep = check_admissibility(out, tol)
    if not rep.pass3:
        warnings.warn(
            f"sum |h^(n)| = {rep.lhs3:.6g} > 1: the sufficient bound fails"
            + (" (dense grid still has |h| <= 1)" if rep.pass_grid else ""),
            Gam3Warning,
            stacklevel=2,
        )
    return out
