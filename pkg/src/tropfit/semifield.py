"""Scalar arithmetic in the max-plus and max-times semifields.

Two concrete idempotent semifields are supported:

* ``Semifield.MAX_PLUS``: carrier R u {-inf}, addition ``max``, multiplication
  ``+``, zero ``-inf``, identity ``0``.
* ``Semifield.MAX_TIMES``: carrier R>=0, addition ``max``, multiplication ``*``,
  zero ``0``, identity ``1``.

The :class:`Semifield` members expose the operations on raw floats and numpy
arrays (used by the vector and polynomial code); :class:`TropScalar` wraps a
single validated value together with its semifield for the scalar API.
"""
from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, TagMismatchError

__all__ = [
    "Semifield",
    "MAX_PLUS",
    "MAX_TIMES",
    "TropScalar",
    "oplus",
    "otimes",
    "inv",
    "tpow",
    "tmin",
    "to_maxplus",
    "to_maxtimes",
]


class Semifield(enum.Enum):
    MAX_PLUS = "max-plus"
    MAX_TIMES = "max-algebra"

    @property
    def zero(self) -> float:
        return -math.inf if self is Semifield.MAX_PLUS else 0.0

    @property
    def one(self) -> float:
        return 0.0 if self is Semifield.MAX_PLUS else 1.0

    @classmethod
    def parse(cls, name: "str | Semifield") -> "Semifield":
        """Accept the enum itself or one of the CLI spellings."""
        if isinstance(name, Semifield):
            return name
        key = str(name).strip().lower().replace("_", "-")
        aliases = {
            "max-plus": cls.MAX_PLUS,
            "maxplus": cls.MAX_PLUS,
            "max-algebra": cls.MAX_TIMES,
            "max-times": cls.MAX_TIMES,
            "maxtimes": cls.MAX_TIMES,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown semifield {name!r}") from None

    # -- raw operations on floats / arrays --------------------------------

    def check(self, values):
        """Validate carrier membership; returns a float array (or float)."""
        arr = np.asarray(values, dtype=float)
        if np.isnan(arr).any():
            raise DomainError("NaN is not an element of any semifield")
        if np.isposinf(arr).any():
            raise DomainError("+inf is not an element of the carrier")
        if self is Semifield.MAX_TIMES and (arr < 0).any():
            raise DomainError("max-times values must be nonnegative")
        return arr

    def is_zero(self, values):
        return np.asarray(values) == self.zero

    def add(self, a, b):
        return np.maximum(a, b)

    def mul(self, a, b):
        if self is Semifield.MAX_PLUS:
            return np.add(a, b)
        return np.multiply(a, b)

    def inverse(self, a):
        if np.any(self.is_zero(a)):
            raise DomainError("the semifield zero has no inverse")
        if self is Semifield.MAX_PLUS:
            return np.negative(a)
        return np.divide(1.0, a)

    def power(self, a, r):
        """Real power ``a^r``; ``zero^r`` is zero for r > 0 and undefined otherwise."""
        a = np.asarray(a, dtype=float)
        r = np.asarray(r, dtype=float)
        zero = self.is_zero(a)
        if np.any(zero & (r <= 0)):
            raise DomainError("zero raised to a nonpositive power is undefined")
        if self is Semifield.MAX_PLUS:
            out = np.multiply(r, a)
        else:
            out = np.power(a, r)
        # a^0 is exactly the identity (avoids -0.0 from 0 * negative)
        return np.where(r == 0, self.one, out)[()]

    def minimum(self, a, b):
        return np.minimum(a, b)

    def ratio_distance(self, a, b):
        """Entrywise ``a b^-1 + a^-1 b`` for nonzero a, b (absolute difference or max ratio)."""
        if self is Semifield.MAX_PLUS:
            return np.maximum(np.subtract(a, b), np.subtract(b, a))
        return np.maximum(np.divide(a, b), np.divide(b, a))


MAX_PLUS = Semifield.MAX_PLUS
MAX_TIMES = Semifield.MAX_TIMES


@functools.total_ordering
@dataclass(frozen=True, slots=True)
class TropScalar:
    """A value of one of the two semifields.

    Ordering follows the order induced by idempotent addition, which is the
    natural order of reals in both semifields.
    """

    value: float
    tag: Semifield = MAX_PLUS

    def __post_init__(self):
        v = float(self.value)
        self.tag.check(v)
        object.__setattr__(self, "value", v)

    @classmethod
    def zero(cls, tag: Semifield = MAX_PLUS) -> "TropScalar":
        return cls(tag.zero, tag)

    @classmethod
    def one(cls, tag: Semifield = MAX_PLUS) -> "TropScalar":
        return cls(tag.one, tag)

    @property
    def is_zero(self) -> bool:
        return self.value == self.tag.zero

    def __lt__(self, other: "TropScalar") -> bool:
        _same_tag(self, other)
        return self.value < other.value

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return f"TropScalar({self.value!r}, {self.tag.value})"


def _same_tag(a: TropScalar, b: TropScalar) -> Semifield:
    if not isinstance(b, TropScalar) or a.tag is not b.tag:
        raise TagMismatchError(f"cannot combine {a!r} with {b!r}")
    return a.tag


def oplus(a: TropScalar, b: TropScalar) -> TropScalar:
    """Tropical addition; idempotent and selective (the result is a or b)."""
    _same_tag(a, b)
    return a if a.value >= b.value else b


def otimes(a: TropScalar, b: TropScalar) -> TropScalar:
    tag = _same_tag(a, b)
    return TropScalar(float(tag.mul(a.value, b.value)), tag)


def inv(a: TropScalar) -> TropScalar:
    return TropScalar(float(a.tag.inverse(a.value)), a.tag)


def tpow(a: TropScalar, r: float) -> TropScalar:
    return TropScalar(float(a.tag.power(a.value, r)), a.tag)


def tmin(a: TropScalar, b: TropScalar) -> TropScalar:
    """Dual minimum; zero whenever either operand is zero."""
    tag = _same_tag(a, b)
    if a.is_zero or b.is_zero:
        return TropScalar.zero(tag)
    return a if a.value <= b.value else b


def to_maxplus(a: TropScalar) -> TropScalar:
    if a.tag is not MAX_TIMES:
        raise TagMismatchError("to_maxplus expects a max-times value")
    value = -math.inf if a.value == 0.0 else math.log(a.value)
    return TropScalar(value, MAX_PLUS)


def to_maxtimes(a: TropScalar) -> TropScalar:
    if a.tag is not MAX_PLUS:
        raise TagMismatchError("to_maxtimes expects a max-plus value")
    return TropScalar(math.exp(a.value), MAX_TIMES)
