"""Tropical vectors and matrices and the best approximate solution of ``A x = b``.

Storage is dense: a float numpy array plus the semifield tag.  All
operations are pure; arrays held by :class:`TropVector` and
:class:`TropMatrix` are made read-only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DimensionError, DomainError, TagMismatchError
from .semifield import MAX_PLUS, Semifield, TropScalar

__all__ = [
    "TropVector",
    "TropMatrix",
    "Infinite",
    "INFINITE",
    "BestApproxResult",
    "matvec",
    "conjugate",
    "distance",
    "residual_delta",
    "best_approx_solve",
]


class Infinite:
    """Distance between vectors with different supports; greater than every scalar."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("tropfit.INFINITE")

    def __gt__(self, other) -> bool:
        return other is not self

    def __ge__(self, other) -> bool:
        return True

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return other is self


INFINITE = Infinite()


def _frozen_array(values, tag: Semifield, ndim: int) -> np.ndarray:
    arr = np.array(tag.check(values), dtype=float)
    if arr.ndim != ndim:
        raise DimensionError(f"expected a {ndim}-d array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class TropVector:
    values: np.ndarray
    tag: Semifield = MAX_PLUS

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values, self.tag, 1))

    def __len__(self) -> int:
        return self.values.shape[0]

    def __getitem__(self, i) -> TropScalar:
        return TropScalar(self.values[i], self.tag)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TropVector)
            and other.tag is self.tag
            and np.array_equal(self.values, other.values)
        )

    @property
    def support(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(~self.tag.is_zero(self.values)).tolist())

    @property
    def is_regular(self) -> bool:
        return not self.tag.is_zero(self.values).any()

    @property
    def is_zero(self) -> bool:
        return bool(self.tag.is_zero(self.values).all())


@dataclass(frozen=True, eq=False)
class TropMatrix:
    values: np.ndarray
    tag: Semifield = MAX_PLUS

    def __post_init__(self):
        object.__setattr__(self, "values", _frozen_array(self.values, self.tag, 2))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @property
    def is_row_regular(self) -> bool:
        return not self.tag.is_zero(self.values).all(axis=1).any()

    @property
    def is_column_regular(self) -> bool:
        return not self.tag.is_zero(self.values).all(axis=0).any()

    @property
    def is_regular(self) -> bool:
        return self.is_row_regular and self.is_column_regular


Distance = Union[TropScalar, Infinite]


@dataclass(frozen=True)
class BestApproxResult:
    delta: TropScalar
    error: TropScalar
    solution: TropVector

    @property
    def exact(self) -> bool:
        return abs(self.delta.value - self.delta.tag.one) <= 1e-12


def _check_tags(*objs) -> Semifield:
    tag = objs[0].tag
    for obj in objs[1:]:
        if obj.tag is not tag:
            raise TagMismatchError(f"mixed semifields: {tag.value} and {obj.tag.value}")
    return tag


def _matvec_raw(tag: Semifield, a: np.ndarray, x: np.ndarray) -> np.ndarray:
    # max is exact, so the reduction order cannot change the result
    return tag.mul(a, x[np.newaxis, :]).max(axis=1)


def _conjugate_raw(tag: Semifield, x: np.ndarray) -> np.ndarray:
    zero = tag.is_zero(x)
    out = np.full_like(x, tag.zero)
    out[~zero] = tag.inverse(x[~zero])
    return out


def matvec(a: TropMatrix, x: TropVector) -> TropVector:
    """Tropical product ``A x``: entry i is the max over k of ``A[i,k] * x[k]``."""
    tag = _check_tags(a, x)
    if a.shape[1] != len(x):
        raise DimensionError(f"matrix with {a.shape[1]} columns times vector of length {len(x)}")
    return TropVector(_matvec_raw(tag, a.values, x.values), tag)


def conjugate(x: TropVector) -> TropVector:
    """Entrywise inverse of the nonzero components; zero components stay zero."""
    if x.is_zero:
        raise DomainError("the zero vector has no conjugate")
    return TropVector(_conjugate_raw(x.tag, x.values), x.tag)


def distance(x: TropVector, y: TropVector) -> Distance:
    """Tropical distance ``y^- x + x^- y``.

    Equals the Chebyshev metric in max-plus and the largest ratio in
    max-times.  Vectors with different supports are at :data:`INFINITE`
    distance; two zero vectors are at distance one.
    """
    tag = _check_tags(x, y)
    if len(x) != len(y):
        raise DimensionError("vectors of different length")
    if x.support != y.support:
        return INFINITE
    mask = ~tag.is_zero(x.values)
    if not mask.any():
        return TropScalar.one(tag)
    return TropScalar(float(tag.ratio_distance(x.values[mask], y.values[mask]).max()), tag)


def _require_regular(a: TropMatrix, b: TropVector) -> Semifield:
    tag = _check_tags(a, b)
    if a.shape[0] != len(b):
        raise DimensionError(f"matrix with {a.shape[0]} rows against vector of length {len(b)}")
    if not a.is_regular:
        raise DomainError("matrix must be regular (no zero rows or columns)")
    if not b.is_regular:
        raise DomainError("right-hand side must be a regular vector")
    return tag


def _delta_raw(tag: Semifield, a: np.ndarray, b: np.ndarray):
    # b^- A, as a row vector
    b_conj_a = tag.mul(tag.inverse(b)[:, np.newaxis], a).max(axis=0)
    x_max = tag.inverse(b_conj_a)
    ax = _matvec_raw(tag, a, x_max)
    delta = tag.mul(tag.inverse(ax), b).max()
    return float(delta), x_max


def residual_delta(a: TropMatrix, b: TropVector) -> TropScalar:
    """The scalar ``(A (b^- A)^-)^- b``; it is never below the identity."""
    tag = _require_regular(a, b)
    delta, _ = _delta_raw(tag, a.values, b.values)
    return TropScalar(delta, tag)


def best_approx_solve(a: TropMatrix, b: TropVector) -> BestApproxResult:
    """Best approximate solution of ``A x = b`` in the tropical distance.

    Returns ``x* = sqrt(delta) (b^- A)^-`` with error ``sqrt(delta)``.  When
    delta is the identity the system is consistent and ``x*`` is its maximal
    solution.
    """
    tag = _require_regular(a, b)
    delta, x_max = _delta_raw(tag, a.values, b.values)
    root = float(tag.power(delta, 0.5))
    solution = tag.mul(root, x_max)
    return BestApproxResult(
        delta=TropScalar(delta, tag),
        error=TropScalar(root, tag),
        solution=TropVector(solution, tag),
    )
