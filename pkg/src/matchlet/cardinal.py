"""Cardinal (interpolating) orthonormal wavelet system: the Shannon pair.

phi(t) = sin(pi t)/(pi t) satisfies phi(k) = delta_{k,0}; its wavelet
psi(t) = (sin 2 pi tau - sin pi tau)/(pi tau), tau = t - 1/2, satisfies
psi(n + 1/2) = delta_{n,0}.  Spectra are indicator functions, so every
orthonormality identity holds in closed form.
"""
import numpy as np

SERIES_CUTOFF = 1e-4


def _sinc(x):
    """sin(pi x)/(pi x) with a Taylor branch near the removable singularity."""
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < SERIES_CUTOFF
    xs = x[~small]
    out[~small] = np.sin(np.pi * xs) / (np.pi * xs)
    z = (np.pi * x[small]) ** 2
    out[small] = 1.0 - z / 6.0 + z * z / 120.0
    return out


def eval_cardinal_scaling(t):
    t = np.asarray(t, dtype=float)
    out = _sinc(t)
    return out.item() if out.ndim == 0 else out


def eval_cardinal_wavelet(t):
    tau = np.asarray(t, dtype=float) - 0.5
    out = 2.0 * _sinc(2.0 * tau) - _sinc(tau)
    return out.item() if out.ndim == 0 else out


def _in_band(xi, lo, hi):
    # half-open [lo, hi) on the positive side, [-hi, -lo) on the negative
    # side: 2pi-translates then tile the line exactly once
    return ((xi >= lo) & (xi < hi)) | ((xi >= -hi) & (xi < -lo))


def cardinal_wavelet_hat(xi):
    """exp(-i xi/2) on pi <= |xi| <= 2pi (half-open, see _in_band), else 0."""
    xi = np.asarray(xi, dtype=float)
    out = np.where(_in_band(xi, np.pi, 2 * np.pi), np.exp(-0.5j * xi), 0.0)
    return out.item() if out.ndim == 0 else out


def cardinal_scaling_hat(xi):
    xi = np.asarray(xi, dtype=float)
    out = np.where((xi >= -np.pi) & (xi < np.pi), 1.0, 0.0)
    return out.item() if out.ndim == 0 else out


class ShannonCardinal:
    """Default cardinal model.  Any object with the same attributes plugs in."""

    name = "shannon"
    breakpoints = (np.pi, 2 * np.pi)
    scaling_breakpoints = (0.0, np.pi)

    scaling = staticmethod(eval_cardinal_scaling)
    wavelet = staticmethod(eval_cardinal_wavelet)
    scaling_hat = staticmethod(cardinal_scaling_hat)
    wavelet_hat = staticmethod(cardinal_wavelet_hat)

    def hat(self, xi):
        return np.asarray(cardinal_wavelet_hat(xi))

    def __repr__(self):
        return "ShannonCardinal()"


SHANNON = ShannonCardinal()
CardinalModel = ShannonCardinal
