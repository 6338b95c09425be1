"""Tropical Puiseux polynomials in one variable and their closed-form minimization.

A polynomial ``P(x) = max_j a_j x^{p_j}`` (tropical notation) is stored as two
float arrays, coefficients and exponents, sorted by exponent with no two
exponents closer than the merge tolerance.  In max-plus it is the convex
piecewise-linear function ``max_j(p_j * x + a_j)``; in max-times the
piecewise power function ``max_j(a_j * x**p_j)``.

Minimization works in max-plus; max-times polynomials are carried over by
the logarithm and the results mapped back with the exponential.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

import numpy as np

from . import _backend
from .errors import DomainError, TagMismatchError, UnboundedError
from .semifield import MAX_PLUS, MAX_TIMES, Semifield

__all__ = [
    "EXPONENT_MERGE_TOL",
    "Monomial",
    "TropPolynomial",
    "MinResult",
    "normalize",
    "poly_sum",
    "evaluate",
    "minimize",
    "select_point",
]

EXPONENT_MERGE_TOL = 1e-9


class Monomial(NamedTuple):
    coeff: float
    exp: float


@dataclass(frozen=True, eq=False)
class TropPolynomial:
    """A normalized polynomial; build it with :func:`normalize`."""

    coeffs: np.ndarray
    exps: np.ndarray
    tag: Semifield = MAX_PLUS

    @classmethod
    def _trusted(cls, coeffs, exps, tag):
        coeffs.setflags(write=False)
        exps.setflags(write=False)
        return cls(coeffs, exps, tag)

    def __len__(self) -> int:
        return self.exps.shape[0]

    def __iter__(self):
        return (Monomial(float(c), float(e)) for c, e in zip(self.coeffs, self.exps))

    @property
    def monomials(self) -> list[Monomial]:
        return list(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TropPolynomial)
            and other.tag is self.tag
            and np.array_equal(self.coeffs, other.coeffs)
            and np.array_equal(self.exps, other.exps)
        )

    def __call__(self, x):
        return evaluate(self, x)

    def __repr__(self) -> str:
        terms = ", ".join(f"({c:g}, {e:g})" for c, e in self)
        return f"TropPolynomial([{terms}], {self.tag.value})"

    def to_maxplus(self) -> "TropPolynomial":
        if self.tag is MAX_PLUS:
            return self
        with np.errstate(divide="ignore"):
            return TropPolynomial._trusted(np.log(self.coeffs), self.exps.copy(), MAX_PLUS)


class MinResult(NamedTuple):
    """Minimum ``mu`` of a polynomial and the interval ``[lo, hi]`` where it is attained.

    Values are in the polynomial's carrier.  ``None`` marks an unbounded side.
    """

    mu: float
    lo: Optional[float]
    hi: Optional[float]
    tag: Semifield = MAX_PLUS
    pairs: int = 0


def normalize(
    terms: Iterable, tag: Semifield = MAX_PLUS, tol: float = EXPONENT_MERGE_TOL
) -> TropPolynomial:
    """Sort monomials by exponent and fuse those whose exponents are within ``tol``.

    ``terms`` holds ``(coeff, exp)`` pairs.  A run of exponents whose
    consecutive gaps are all <= ``tol`` becomes one monomial carrying the
    run's smallest exponent and the tropical sum (max) of its coefficients.
    """
    terms = list(terms)
    if not terms:
        raise DomainError("a polynomial needs at least one monomial")
    arr = np.asarray(terms, dtype=float).reshape(len(terms), 2)
    coeffs, exps = arr[:, 0], arr[:, 1]
    tag.check(coeffs)
    if tag.is_zero(coeffs).any():
        raise DomainError("monomial coefficients must be nonzero")
    if not np.isfinite(exps).all():
        raise DomainError("exponents must be finite reals")
    c, e = _backend.kernels.normalize_terms(coeffs, exps, tol)
    return TropPolynomial._trusted(c, e, tag)


def poly_sum(p: TropPolynomial, q: TropPolynomial, tol: float = EXPONENT_MERGE_TOL) -> TropPolynomial:
    if p.tag is not q.tag:
        raise TagMismatchError("cannot add polynomials over different semifields")
    c, e = _backend.kernels.merge_terms(p.coeffs, p.exps, q.coeffs, q.exps, tol)
    return TropPolynomial._trusted(c, e, p.tag)


def evaluate(p: TropPolynomial, x):
    """Evaluate at a scalar or array of points in the carrier (the zero excluded)."""
    xs = p.tag.check(x)
    if p.tag is MAX_PLUS:
        if np.isneginf(xs).any():
            raise DomainError("cannot evaluate at the semifield zero")
        out = _backend.kernels.evaluate(p.coeffs, p.exps, xs)
    else:
        if (xs == 0).any():
            raise DomainError("cannot evaluate at the semifield zero")
        out = np.exp(_backend.kernels.evaluate(np.log(p.coeffs), p.exps, np.log(xs)))
    return out[()] if np.ndim(out) == 0 else out


def _minimize_maxplus(coeffs, exps) -> MinResult:
    if exps.shape[0] == 0:
        raise DomainError("empty polynomial")
    mu, lo, hi, pairs = _backend.kernels.envelope_minimum(coeffs, exps)
    if mu == -math.inf:
        raise UnboundedError(
            "all exponents share one strict sign: the infimum is the semifield zero and is not attained"
        )
    lo_b = None if lo == -math.inf else lo
    hi_b = None if hi == math.inf else hi
    if lo_b is not None and hi_b is not None and lo_b > hi_b:
        # rounding in near-degenerate crossings; the true interval is a point
        lo_b = hi_b = 0.5 * (lo_b + hi_b)
    return MinResult(mu, lo_b, hi_b, MAX_PLUS, pairs)


def minimize(p: TropPolynomial) -> MinResult:
    """Closed-form minimum of a polynomial over its (nonzero) variable.

    The minimum is the largest value among the constant coefficients and
    the crossings of each decreasing monomial with each increasing one; the
    minimizers form the interval bounded by the points where the decreasing
    monomials fall to, and the increasing ones rise to, that value.  Cost
    is O(L^2) in the number of monomials.

    Raises
    ------
    UnboundedError
        If all exponents are strictly positive or all strictly negative.
    """
    if p.tag is MAX_PLUS:
        return _minimize_maxplus(p.coeffs, p.exps)
    r = _minimize_maxplus(np.log(p.coeffs), p.exps)
    return MinResult(
        math.exp(r.mu),
        None if r.lo is None else math.exp(r.lo),
        None if r.hi is None else math.exp(r.hi),
        MAX_TIMES,
        r.pairs,
    )


def select_point(r: MinResult) -> float:
    """Pick one minimizer from the solution interval.

    Midpoint when both ends are finite (geometric mean in max-times), the
    finite end when only one is, and the identity when neither is.
    """
    if r.lo is not None and r.hi is not None:
        if r.lo == r.hi:
            return r.lo
        if r.tag is MAX_TIMES:
            return math.sqrt(r.lo) * math.sqrt(r.hi)
        return 0.5 * (r.lo + r.hi)
    if r.hi is not None:
        return r.hi
    if r.lo is not None:
        return r.lo
    return r.tag.one
