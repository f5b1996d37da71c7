"""Hot numeric kernels, each in a numba and a pure-numpy flavour.

The numba versions are used when numba imports cleanly and the environment
variable ``MATCHLET_DISABLE_NUMBA`` is unset (or ``0``).  Both flavours are
kept importable so they can be cross-checked and benchmarked side by side.
"""
import math
import os

import numpy as np

SQRT2 = math.sqrt(2.0)


def _numba_requested():
    flag = os.environ.get("MATCHLET_DISABLE_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


# --------------------------------------------------------------------------
# numpy flavour
# --------------------------------------------------------------------------

def fourier_sum_numpy(nodes, wvals, t):
    """sum_j wvals[j] * exp(i * nodes[j] * t[m]) for every m."""
    phase = np.exp(1j * np.outer(t, nodes))
    return phase @ wvals


def cos_transform_numpy(nodes, wvals, tau):
    """sum_j wvals[j] * cos(nodes[j] * tau[m]) for every m (real weights)."""
    return np.cos(np.outer(tau, nodes)) @ wvals


def trig_poly_numpy(coeffs, offset, xi):
    """sum_k coeffs[k] * exp(i (k + offset) xi), Horner in z = exp(i xi)."""
    z = np.exp(1j * xi)
    acc = np.zeros(xi.shape, dtype=np.complex128)
    for k in range(coeffs.shape[0] - 1, -1, -1):
        acc = acc * z + coeffs[k]
    return acc * np.exp(1j * offset * xi)


def cos_series_numpy(coef, freq, xi):
    """Clenshaw evaluation of sum_n coef[n] cos(freq * n * xi)."""
    x = np.cos(freq * xi)
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    for n in range(coef.shape[0] - 1, 0, -1):
        b1, b2 = coef[n] + 2.0 * x * b1 - b2, b1
    if coef.shape[0] == 0:
        return np.zeros_like(x)
    return coef[0] + x * b1 - b2


def cos_series_deriv_numpy(coef, freq, xi):
    """d/dxi of sum_n coef[n] cos(freq n xi), term by term."""
    n = np.arange(coef.shape[0], dtype=np.float64)
    return -freq * (np.sin(freq * np.outer(xi, n)) @ (n * coef))


def dyadic_coefficients_numpy(gamma, n_max):
    """Cosine coefficients h^(0..n_max) of the Meyer bell from lattice data.

    gamma[j] is the target value at 1/2 + 3j; entries beyond len(gamma)
    are taken as zero.
    """
    L = gamma.shape[0]
    out = np.zeros(n_max + 1)
    if L == 0:
        return out
    out[0] = gamma[0] / SQRT2
    if n_max == 0:
        return out
    n = np.arange(1, n_max + 1)
    # n = 2^p * m with m odd
    p = np.zeros(n.shape, dtype=np.int64)
    m = n.copy()
    while True:
        even = (m % 2) == 0
        if not even.any():
            break
        m[even] //= 2
        p[even] += 1
    acc = np.zeros(n.shape)
    q = 0
    while True:
        idx = n * (1 << q)
        live = idx < L
        if not live.any():
            break
        acc[live] += ((-1.0) ** q) * (2.0 ** q) * gamma[idx[live]]
        q += 1
    # odd indices carry the opposite sign (free choice for h^(2k+1))
    acc[p == 0] *= -1.0
    out[1:] = 3.0 * SQRT2 * acc
    return out


# --------------------------------------------------------------------------
# numba flavour
# --------------------------------------------------------------------------

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover - numba ships in the dev env
    numba = None

if numba is not None:

    @njit(cache=True)
    def fourier_sum_numba(nodes, wvals, t):
        out = np.empty(t.shape[0], dtype=np.complex128)
        for m in range(t.shape[0]):
            re = 0.0
            im = 0.0
            for j in range(nodes.shape[0]):
                a = nodes[j] * t[m]
                c = math.cos(a)
                s = math.sin(a)
                w = wvals[j]
                re += w.real * c - w.imag * s
                im += w.real * s + w.imag * c
            out[m] = re + 1j * im
        return out

    @njit(cache=True)
    def cos_transform_numba(nodes, wvals, tau):
        out = np.empty(tau.shape[0])
        for m in range(tau.shape[0]):
            acc = 0.0
            for j in range(nodes.shape[0]):
                acc += wvals[j] * math.cos(nodes[j] * tau[m])
            out[m] = acc
        return out

    @njit(cache=True)
    def trig_poly_numba(coeffs, offset, xi):
        out = np.empty(xi.shape[0], dtype=np.complex128)
        for i in range(xi.shape[0]):
            z = complex(math.cos(xi[i]), math.sin(xi[i]))
            acc = 0j
            for k in range(coeffs.shape[0] - 1, -1, -1):
                acc = acc * z + coeffs[k]
            a = offset * xi[i]
            out[i] = acc * complex(math.cos(a), math.sin(a))
        return out

    @njit(cache=True)
    def cos_series_numba(coef, freq, xi):
        out = np.empty(xi.shape[0])
        N = coef.shape[0]
        for i in range(xi.shape[0]):
            if N == 0:
                out[i] = 0.0
                continue
            x = math.cos(freq * xi[i])
            b1 = 0.0
            b2 = 0.0
            for n in range(N - 1, 0, -1):
                b0 = coef[n] + 2.0 * x * b1 - b2
                b2 = b1
                b1 = b0
            out[i] = coef[0] + x * b1 - b2
        return out

    @njit(cache=True)
    def cos_series_deriv_numba(coef, freq, xi):
        out = np.empty(xi.shape[0])
        for i in range(xi.shape[0]):
            acc = 0.0
            for n in range(1, coef.shape[0]):
                acc += n * coef[n] * math.sin(freq * n * xi[i])
            out[i] = -freq * acc
        return out

    @njit(cache=True)
    def dyadic_coefficients_numba(gamma, n_max):
        L = gamma.shape[0]
        out = np.zeros(n_max + 1)
        if L == 0:
            return out
        out[0] = gamma[0] / SQRT2
        for n in range(1, n_max + 1):
            m = n
            p = 0
            while m % 2 == 0:
                m //= 2
                p += 1
            acc = 0.0
            sign = 1.0
            scale = 1.0
            idx = n
            while idx < L:
                acc += sign * scale * gamma[idx]
                sign = -sign
                scale *= 2.0
                idx *= 2
            if p == 0:
                acc = -acc
            out[n] = 3.0 * SQRT2 * acc
        return out


NUMPY_KERNELS = {
    "fourier_sum": fourier_sum_numpy,
    "cos_transform": cos_transform_numpy,
    "trig_poly": trig_poly_numpy,
    "cos_series": cos_series_numpy,
    "cos_series_deriv": cos_series_deriv_numpy,
    "dyadic_coefficients": dyadic_coefficients_numpy,
}

if numba is not None:
    NUMBA_KERNELS = {
        "fourier_sum": fourier_sum_numba,
        "cos_transform": cos_transform_numba,
        "trig_poly": trig_poly_numba,
        "cos_series": cos_series_numba,
        "cos_series_deriv": cos_series_deriv_numba,
        "dyadic_coefficients": dyadic_coefficients_numba,
    }
else:  # pragma: no cover
    NUMBA_KERNELS = {}

if NUMBA_KERNELS and _numba_requested():
    BACKEND = "numba"
    _ACTIVE = NUMBA_KERNELS
else:
    BACKEND = "numpy"
    _ACTIVE = NUMPY_KERNELS


def fourier_sum(nodes, wvals, t):
    return _ACTIVE["fourier_sum"](
        np.ascontiguousarray(nodes, dtype=np.float64),
        np.ascontiguousarray(wvals, dtype=np.complex128),
        np.ascontiguousarray(t, dtype=np.float64),
    )


def cos_transform(nodes, wvals, tau):
    return _ACTIVE["cos_transform"](
        np.ascontiguousarray(nodes, dtype=np.float64),
        np.ascontiguousarray(wvals, dtype=np.float64),
        np.ascontiguousarray(tau, dtype=np.float64),
    )


def trig_poly(coeffs, offset, xi):
    return _ACTIVE["trig_poly"](
        np.ascontiguousarray(coeffs, dtype=np.complex128),
        int(offset),
        np.ascontiguousarray(xi, dtype=np.float64),
    )


def cos_series(coef, freq, xi):
    return _ACTIVE["cos_series"](
        np.ascontiguousarray(coef, dtype=np.float64),
        float(freq),
        np.ascontiguousarray(xi, dtype=np.float64),
    )


def cos_series_deriv(coef, freq, xi):
    return _ACTIVE["cos_series_deriv"](
        np.ascontiguousarray(coef, dtype=np.float64),
        float(freq),
        np.ascontiguousarray(xi, dtype=np.float64),
    )


def dyadic_coefficients(gamma, n_max):
    return _ACTIVE["dyadic_coefficients"](
        np.ascontiguousarray(gamma, dtype=np.float64), int(n_max)
    )
