"""Shared numerical harness: quadrature, Gram assembly, reports.

Suites live in :mod:`matchlet.verification.suites` (imported lazily by the
package root to keep the designer modules free of import cycles).
"""
from .gram import gram_matrix, hermitian_defect, is_toeplitz, periodization
from .quadrature import (
    QuadratureError,
    QuadratureSpec,
    QuadResult,
    cosine_inverse,
    default_spec,
    fourier_inverse,
    integrate,
    panel_rule,
)
from .report import Check, VerificationReport, bound_check, deviation_check, flag_check

__all__ = [
    "Check",
    "QuadResult",
    "QuadratureError",
    "QuadratureSpec",
    "VerificationReport",
    "bound_check",
    "cosine_inverse",
    "default_spec",
    "deviation_check",
    "flag_check",
    "fourier_inverse",
    "gram_matrix",
    "hermitian_defect",
    "integrate",
    "is_toeplitz",
    "panel_rule",
    "periodization",
]
