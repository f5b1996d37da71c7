"""Wavelets that interpolate prescribed data on uniform lattices."""
from ._kernels import BACKEND
from .cardinal import (
    SHANNON,
    ShannonCardinal,
    cardinal_scaling_hat,
    cardinal_wavelet_hat,
    eval_cardinal_scaling,
    eval_cardinal_wavelet,
)
from .matched import (
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
from .meyer import (
    AdmissibilityReport,
    BellCoefficients,
    InadmissibleError,
    MeyerTargetSequence,
    MeyerWaveletModel,
    SingularSystemError,
    build_meyer,
    check_admissibility,
    design_meyer,
    eval_h,
    eval_h_deriv,
    eval_lattice,
    eval_psi_time,
    project_feasible,
    solve_h_coefficients,
)
from .sequence import (
    DataSequence,
    DecayCertificate,
    FrameBounds,
    NotRieszError,
    RootFindingError,
    RootSet,
    SymbolPolynomial,
    compute_frame_bounds,
    dual_symbol_coefficients,
    perturb_roots,
    polynomial_roots,
    symbol_from_sequence,
    symbol_polynomial_coeffs,
    unit_circle_check,
)
from .verification import QuadratureSpec, VerificationReport, gram_matrix, integrate
from .verification.suites import run_suite

__version__ = "0.1.0"
