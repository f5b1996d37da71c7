"""Gram matrices and periodization sweeps in the frequency domain.

Conventions: f^(xi) = int f(t) exp(-i xi t) dt, <f, g> = (1/2pi) int f^ conj(g^),
and f_{j,k}(x) = 2^{j/2} f(2^j x + k), so that
f_{j,k}^(xi) = 2^{-j/2} exp(i xi k / 2^j) f^(xi / 2^j).

A "frequency model" is any object with ``hat(xi)`` (vectorized) and
``breakpoints``: the increasing positive band edges, first and last entries
bounding the support in |xi|.
"""
import numpy as np

from .quadrature import QuadResult, _refine_loop, default_spec, symmetric_rule


def _scaled_support(breakpoints, j):
    return np.asarray(breakpoints, dtype=float) * 2.0 ** j


def gram_matrix(model, K, scales=(0, 0), other=None, spec=None):
    """Inner products <f_{j,k}, g_{j',k'}> for k, k' in [-K, K].

    ``other`` defaults to ``model``.  Returns a QuadResult whose value is a
    (2K+1, 2K+1) complex matrix; rows index k, columns k'.
    """
    spec = spec or default_spec()
    other = model if other is None else other
    j1, j2 = scales
    b1 = _scaled_support(model.breakpoints, j1)
    b2 = _scaled_support(other.breakpoints, j2)
    lo, hi = max(b1[0], b2[0]), min(b1[-1], b2[-1])
    shifts = np.arange(-K, K + 1, dtype=float)
    n = shifts.size
    if hi <= lo:
        return QuadResult(np.zeros((n, n), dtype=complex), 0.0)
    inner = [b for b in np.concatenate([b1, b2]) if lo < b < hi]
    bp = sorted({lo, hi, *inner})

    def evaluate(panels):
        x, w = symmetric_rule(bp, panels, spec.nodes)
        f = 2.0 ** (-j1 / 2) * model.hat(x / 2.0 ** j1)
        g = 2.0 ** (-j2 / 2) * other.hat(x / 2.0 ** j2)
        dens = w * f * np.conj(g) / (2.0 * np.pi)
        A = np.exp(1j * np.outer(shifts / 2.0 ** j1, x))
        B = np.exp(1j * np.outer(shifts / 2.0 ** j2, x))
        G = (A * dens) @ B.conj().T
        return G, np.full(G.shape, np.abs(dens).sum())

    return _refine_loop(evaluate, spec)


def periodization(hat, xi, power=2, reach=None, breakpoints=None):
    """sum_k |hat(xi + 2 pi k)|^power over all translates meeting the support."""
    xi = np.asarray(xi, dtype=float)
    if reach is None:
        top = breakpoints[-1] if breakpoints is not None else 4 * np.pi
        reach = int(np.ceil((np.max(np.abs(xi), initial=0.0) + top) / (2 * np.pi))) + 1
    total = np.zeros(xi.shape)
    for k in range(-reach, reach + 1):
        total += np.abs(hat(xi + 2 * np.pi * k)) ** power
    return total


def uniform_grid(a, b, n, endpoint=False):
    return np.linspace(a, b, n, endpoint=endpoint)


def is_toeplitz(G, tol):
    n = G.shape[0]
    worst = 0.0
    for d in range(-n + 1, n):
        diag = np.diagonal(G, offset=d)
        worst = max(worst, float(np.max(np.abs(diag - diag[0]))))
    return worst <= tol, worst


def hermitian_defect(G):
    return float(np.max(np.abs(G - G.conj().T), initial=0.0))
