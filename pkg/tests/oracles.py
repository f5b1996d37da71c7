"""Reference values computed without the library's own code paths."""
import math

import numpy as np

SQRT2 = math.sqrt(2.0)

# consistent two-point Meyer data and its bell coefficients
GAMMA0 = (1 + SQRT2) / 2
GAMMA1 = (1 - SQRT2) / 12
H0 = (2 + SQRT2) / 4
H1 = (2 - SQRT2) / 4

# the same bell coefficients quoted against a gamma_0 half as large
GAMMA0_QUOTED = (1 + SQRT2) / 4


def bell_by_back_substitution(gamma):
    """Bell coefficients from the lattice equations solved top-down.

    Unknowns c_0..c_N (N = len(gamma) - 1, c_n = 0 beyond); row k >= 1 reads
    (-1)^k c_k + 2 c_{2k} = 3 sqrt2 gamma_k, row 0 reads c_0 = gamma_0 / sqrt2.
    """
    g = np.asarray(gamma, dtype=float)
    N = max(g.size - 1, 1)
    c = np.zeros(N + 1)
    for k in range(N, 0, -1):
        gk = g[k] if k < g.size else 0.0
        c2k = c[2 * k] if 2 * k <= N else 0.0
        c[k] = (-1) ** k * (3 * SQRT2 * gk - 2 * c2k)
    c[0] = g[0] / SQRT2 if g.size else 0.0
    return c


def meyer_weights(n):
    """Coefficients of gamma_n in the two linear conditions, by hand."""
    if n == 0:
        return 1 / SQRT2, 1 / SQRT2
    q = 0
    while n % 2 == 0:
        n //= 2
        q += 1
    s = (-1) ** (q - 1) * 2 ** q
    return SQRT2 * (1 + 4 * s), SQRT2 * (1 - 2 * s)


def symbol_power_grid(gamma, offset, xi):
    """|sum gamma_k e^{i k xi}|^2 by a plain double loop."""
    out = np.zeros_like(xi, dtype=float)
    for j, x in enumerate(xi):
        z = sum(g * complex(math.cos((offset + k) * x), math.sin((offset + k) * x))
                for k, g in enumerate(gamma))
        out[j] = abs(z) ** 2
    return out


def autocorrelation(gamma, lag):
    """sum_k gamma_k conj(gamma_{k+lag}); Gram entries of shifted matched wavelets."""
    g = np.asarray(gamma, dtype=complex)
    return sum(g[k] * np.conj(g[k + lag]) for k in range(g.size) if 0 <= k + lag < g.size)
