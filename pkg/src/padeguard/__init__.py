"""SVD-based Pade approximation with conditioning diagnostics and certified
spurious-pole bounds."""

from .polyrat import (
    INDETERMINATE,
    POINT_AT_INFINITY,
    CoefficientVector,
    PoleAtOriginError,
    Polynomial,
    RationalFunction,
    TaylorCoefficients,
    eval_poly,
    eval_rational,
    taylor_of_rational,
)
from .numerics import RankDeficientError, SvdResult, cond, pinv_norm, poly_roots, spectral_norm, svd
from .structmat import (
    StructuredMatrices,
    build_C,
    build_Q,
    build_S,
    build_T,
    build_square_sylvester,
    structured_matrices,
)
from .pade import PadeResult, normalize, pade, pade_denominator, pade_numerator, robust_pade, scale_input
from .conditioning import Diagnostics, SandwichReport, diagnostics, verify_norm_sandwiches
from .metrics import DiskSampling, chordal, chordal_metric_disk, coefficient_distance, spherical_derivative
from .spurious import (
    Certificate,
    NeighborhoodReport,
    ObstructionMargins,
    SpuriousReport,
    certify_froissart,
    certify_residuals,
    convergence_obstruction,
    is_numerically_degenerate,
    kappa_S,
    neighborhood_conditioning,
    spurious_report,
)
from .ngcd import (
    NgcdResult,
    epsilon_gcd,
    epsilon_gcd_bruteforce,
    kappa_BL,
    kappa_CM,
    ngcd_result,
    verify_lemma_CM,
    verify_ngcd_froissart,
)
from . import testfns

__version__ = "0.1.0"

__all__ = [
    "INDETERMINATE",
    "POINT_AT_INFINITY",
    "CoefficientVector",
    "PoleAtOriginError",
    "Polynomial",
    "RationalFunction",
    "TaylorCoefficients",
    "eval_poly",
    "eval_rational",
    "taylor_of_rational",
    "RankDeficientError",
    "SvdResult",
    "cond",
    "pinv_norm",
    "poly_roots",
    "spectral_norm",
    "svd",
    "StructuredMatrices",
    "build_C",
    "build_Q",
    "build_S",
    "build_T",
    "build_square_sylvester",
    "structured_matrices",
    "PadeResult",
    "normalize",
    "pade",
    "pade_denominator",
    "pade_numerator",
    "robust_pade",
    "scale_input",
    "Diagnostics",
    "SandwichReport",
    "diagnostics",
    "verify_norm_sandwiches",
    "DiskSampling",
    "chordal",
    "chordal_metric_disk",
    "coefficient_distance",
    "spherical_derivative",
    "Certificate",
    "NeighborhoodReport",
    "ObstructionMargins",
    "SpuriousReport",
    "certify_froissart",
    "certify_residuals",
    "convergence_obstruction",
    "is_numerically_degenerate",
    "kappa_S",
    "neighborhood_conditioning",
    "spurious_report",
    "NgcdResult",
    "epsilon_gcd",
    "epsilon_gcd_bruteforce",
    "kappa_BL",
    "kappa_CM",
    "ngcd_result",
    "verify_lemma_CM",
    "verify_ngcd_froissart",
    "testfns",
]
