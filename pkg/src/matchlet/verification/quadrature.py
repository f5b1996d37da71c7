"""Composite Gauss-Legendre quadrature with a panel-doubling self-check.

Every integrand in this package is smooth between known breakpoints and
compactly supported in frequency, so a fixed high-order rule on uniform
panels is accurate to rounding; the doubling check guards the cases where it
is not (high oscillation, kinks from inadmissible data).
"""
import functools
import os
from dataclasses import dataclass, replace

import numpy as np

from .. import _kernels

_EPS = np.finfo(float).eps


class QuadratureError(RuntimeError):
    """Raised when refinement does not settle below the target tolerance."""

    def __init__(self, message, coarse, fine):
        super().__init__(message)
        self.coarse = coarse
        self.fine = fine


@dataclass(frozen=True)
class QuadratureSpec:
    panels: int = 8
    nodes: int = 32
    refinement: int = 2
    tol: float = 1e-10
    max_refinements: int = 4

    def __post_init__(self):
        if (self.panels < 1 or self.nodes < 1 or self.refinement < 2
                or self.max_refinements < 1):
            raise ValueError(f"invalid quadrature spec {self}")
        if not self.tol > 0:
            raise ValueError("quadrature tolerance must be positive")

    def refined(self, times=1):
        return replace(self, panels=self.panels * self.refinement ** times)


def default_spec():
    """Default rule, overridable through ``MATCHLET_QUADRATURE=PANELSxNODES``."""
    raw = os.environ.get("MATCHLET_QUADRATURE", "").strip()
    if not raw:
        return QuadratureSpec()
    try:
        panels, nodes = (int(v) for v in raw.lower().split("x"))
    except ValueError as exc:
        raise ValueError(
            f"MATCHLET_QUADRATURE must look like '8x32', got {raw!r}"
        ) from exc
    return QuadratureSpec(panels=panels, nodes=nodes)


@dataclass(frozen=True)
class QuadResult:
    value: object
    error: float


@functools.lru_cache(maxsize=64)
def _leggauss(n):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def panel_rule(breakpoints, panels, nodes):
    """Nodes and weights of the composite rule over consecutive breakpoints.

    Each interval [b_i, b_{i+1}] receives ``panels`` equal panels carrying a
    ``nodes``-point Gauss-Legendre rule.
    """
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or bp.size < 2 or np.any(np.diff(bp) < 0):
        raise ValueError("breakpoints must be an increasing sequence")
    x0, w0 = _leggauss(nodes)
    xs, ws = [], []
    for a, b in zip(bp[:-1], bp[1:]):
        if b == a:
            continue
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        xs.append((mid[:, None] + half[:, None] * x0[None, :]).ravel())
        ws.append((half[:, None] * w0[None, :]).ravel())
    if not xs:
        return np.zeros(0), np.zeros(0)
    return np.concatenate(xs), np.concatenate(ws)


def symmetric_rule(breakpoints, panels, nodes):
    """Composite rule over [-b_n, -b_0] U [b_0, b_n] for positive breakpoints."""
    x, w = panel_rule(breakpoints, panels, nodes)
    return np.concatenate([-x[::-1], x]), np.concatenate([w[::-1], w])


def _refine_loop(evaluate, spec):
    """Run ``evaluate(panels)`` at successive refinements until it settles.

    ``evaluate`` returns ``(value, scale)`` where ``scale`` is the sum of
    absolute weighted integrand values (the rounding floor reference).
    """
    coarse, _ = evaluate(spec.panels)
    panels = spec.panels
    for _ in range(spec.max_refinements):
        panels *= spec.refinement
        fine, scale = evaluate(panels)
        diff = float(np.max(np.abs(np.asarray(fine) - np.asarray(coarse)), initial=0.0))
        floor = 64.0 * _EPS * float(np.max(scale, initial=0.0))
        if diff <= spec.tol * max(1.0, float(np.max(np.abs(fine), initial=0.0))):
            return QuadResult(fine, max(diff, floor))
        coarse = fine
    raise QuadratureError(
        f"quadrature did not settle to {spec.tol:g} after "
        f"{spec.max_refinements} refinements (last change {diff:.3e})",
        coarse,
        fine,
    )


def integrate(f, interval, spec=None, breakpoints=()):
    """Integrate ``f`` over ``interval`` with an error estimate.

    ``f`` maps a node array of shape (n,) to values of shape (n,) or (m, n);
    vector outputs are integrated componentwise.

    >>> r = integrate(np.cos, (0.0, 2 * np.pi))
    >>> abs(r.value) < 1e-14
    True
    """
    spec = spec or default_spec()
    a, b = float(interval[0]), float(interval[1])
    inner = sorted(float(c) for c in breakpoints if a < c < b)
    bp = [a, *inner, b]

    def evaluate(panels):
        x, w = panel_rule(bp, panels, spec.nodes)
        fx = np.asarray(f(x))
        if not np.all(np.isfinite(fx)):
            raise ValueError("integrand is not finite on the closed interval")
        return fx @ w, np.abs(fx) @ w

    return _refine_loop(evaluate, spec)


def fourier_inverse(hat, breakpoints, t, spec=None):
    """(1/2pi) * integral of hat(xi) exp(i xi t) over the symmetric support.

    ``breakpoints`` are the positive-side band edges (support is their mirror
    image union).  Returns a QuadResult with complex values, one per ``t``.
    """
    spec = spec or default_spec()
    t = np.atleast_1d(np.asarray(t, dtype=float))

    def evaluate(panels):
        x, w = symmetric_rule(breakpoints, panels, spec.nodes)
        g = hat(x) * w
        val = _kernels.fourier_sum(x, g, t) / (2.0 * np.pi)
        return val, np.full(t.shape, np.abs(g).sum() / (2.0 * np.pi))

    return _refine_loop(evaluate, spec)


def cosine_inverse(amplitude, breakpoints, tau, spec=None):
    """(1/pi) * integral over the positive band of cos(xi tau) amplitude(xi).

    The inverse transform of an even real spectrum, one value per ``tau``.
    """
    spec = spec or default_spec()
    tau = np.atleast_1d(np.asarray(tau, dtype=float))

    def evaluate(panels):
        x, w = panel_rule(breakpoints, panels, spec.nodes)
        g = amplitude(x) * w
        val = _kernels.cos_transform(x, g, tau) / np.pi
        return val, np.full(tau.shape, np.abs(g).sum() / np.pi)

    return _refine_loop(evaluate, spec)
