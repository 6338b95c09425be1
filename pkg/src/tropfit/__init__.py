"""Best approximation of sampled functions by tropical Puiseux polynomials.

Fits ``P(x) = max_j theta_j x^{p_j}`` (max-algebra) or the piecewise-linear
``max_j(p_j x + theta_j)`` (max-plus), choosing both coefficients and real
exponents to minimize the tropical (Chebyshev-type) error.
"""
from ._backend import current as backend
from .errors import DomainError, GuardError, TagMismatchError, TropicalError, UnboundedError
from .fitter import FitConfig, FitResult, SampleSet, fit, fit_maxalgebra, predict, sweep
from .oracle import exact_fit, grid_minimize, residual_check
from .polyopt import MinResult, Monomial, TropPolynomial, minimize, normalize, poly_sum, select_point
from .semifield import MAX_PLUS, MAX_TIMES, Semifield, TropScalar
from .troplinalg import INFINITE, TropMatrix, TropVector, best_approx_solve, distance, matvec

__version__ = "0.1.0"

__all__ = [
    "backend",
    "DomainError",
    "GuardError",
    "TagMismatchError",
    "TropicalError",
    "UnboundedError",
    "FitConfig",
    "FitResult",
    "SampleSet",
    "fit",
    "fit_maxalgebra",
    "predict",
    "sweep",
    "exact_fit",
    "grid_minimize",
    "residual_check",
    "MinResult",
    "Monomial",
    "TropPolynomial",
    "minimize",
    "normalize",
    "poly_sum",
    "select_point",
    "MAX_PLUS",
    "MAX_TIMES",
    "Semifield",
    "TropScalar",
    "INFINITE",
    "TropMatrix",
    "TropVector",
    "best_approx_solve",
    "distance",
    "matvec",
]
