import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tropfit import MAX_PLUS, MAX_TIMES, Semifield, TropScalar
from tropfit.errors import DomainError, TagMismatchError
from tropfit.semifield import inv, oplus, otimes, tmin, to_maxplus, to_maxtimes, tpow


def mp(v):
    return TropScalar(v, MAX_PLUS)


def mt(v):
    return TropScalar(v, MAX_TIMES)


finite = st.floats(-1e6, 1e6, allow_nan=False)
positive = st.floats(1e-6, 1e6)
mp_values = st.one_of(finite, st.just(-math.inf))
mt_values = st.one_of(positive, st.just(0.0))


@pytest.mark.parametrize(
    "op, a, b, expected",
    [
        (oplus, mp(3), mp(3), mp(3)),
        (oplus, mp(-math.inf), mp(5), mp(5)),
        (oplus, mt(0.5), mt(2.0), mt(2.0)),
        (otimes, mp(2), mp(3), mp(5)),
        (otimes, mp(-math.inf), mp(7), mp(-math.inf)),
        (otimes, mt(2), mt(3), mt(6)),
        (tmin, mp(2), mp(5), mp(2)),
        (tmin, mp(-math.inf), mp(5), mp(-math.inf)),
        (tmin, mt(3), mt(7), mt(3)),
    ],
)
def test_binary_examples(op, a, b, expected):
    assert op(a, b) == expected


def test_inverse_examples():
    assert inv(mp(4)) == mp(-4)
    assert inv(mt(2)) == mt(0.5)
    assert inv(mp(0)) == mp(0)


def test_power_examples():
    assert tpow(mp(3), 2) == mp(6)
    assert tpow(mt(4), 0.5) == mt(2)
    assert tpow(mp(5), 0) == mp(0)
    assert tpow(mp(-5), 0).value == 0.0 and math.copysign(1, tpow(mp(-5), 0).value) == 1
    assert tpow(mp(-math.inf), 2) == mp(-math.inf)
    assert tpow(mt(0.0), 3) == mt(0.0)


def test_transport_examples():
    assert to_maxplus(mt(1)) == mp(0)
    assert to_maxplus(mt(math.e)).value == pytest.approx(1.0, abs=1e-15)
    assert to_maxtimes(mp(-math.inf)) == mt(0)
    assert to_maxplus(mt(0)) == mp(-math.inf)


def test_domain_errors():
    with pytest.raises(DomainError):
        inv(mp(-math.inf))
    with pytest.raises(DomainError):
        inv(mt(0))
    with pytest.raises(DomainError):
        tpow(mp(-math.inf), 0)
    with pytest.raises(DomainError):
        tpow(mt(0), -1)
    for bad in (math.nan, math.inf):
        with pytest.raises(DomainError):
            mp(bad)
    with pytest.raises(DomainError):
        mt(-1.0)


def test_tags_do_not_mix():
    with pytest.raises(TagMismatchError):
        oplus(mp(1), mt(1))
    with pytest.raises(TagMismatchError):
        mp(1) < mt(2)
    with pytest.raises(TagMismatchError):
        to_maxplus(mp(1))
    with pytest.raises(TagMismatchError):
        to_maxtimes(mt(1))


def test_parse_aliases():
    assert Semifield.parse("max-plus") is MAX_PLUS
    assert Semifield.parse("MaxPlus") is MAX_PLUS
    assert Semifield.parse("max-algebra") is MAX_TIMES
    assert Semifield.parse("max_times") is MAX_TIMES
    assert Semifield.parse(MAX_TIMES) is MAX_TIMES
    with pytest.raises(ValueError):
        Semifield.parse("min-plus")


def test_zero_and_one():
    assert TropScalar.zero(MAX_PLUS).is_zero and TropScalar.zero(MAX_TIMES).is_zero
    assert TropScalar.one(MAX_PLUS).value == 0.0 and TropScalar.one(MAX_TIMES).value == 1.0


@given(mp_values, mp_values)
def test_maxplus_oplus_is_selective_and_commutative(a, b):
    x, y = mp(a), mp(b)
    assert oplus(x, y) in (x, y)
    assert oplus(x, y) == oplus(y, x)
    assert x <= oplus(x, y) and y <= oplus(x, y)


@given(mt_values, mt_values, mt_values)
def test_maxtimes_distributes(a, b, c):
    x, y, z = mt(a), mt(b), mt(c)
    left = otimes(x, oplus(y, z))
    right = oplus(otimes(x, y), otimes(x, z))
    assert left.value == pytest.approx(right.value, rel=1e-12)


@given(finite, finite)
def test_min_is_dual_of_max(a, b):
    x, y = mp(a), mp(b)
    assert tmin(x, y) == inv(oplus(inv(x), inv(y)))


@given(positive, st.floats(-3, 3))
def test_power_commutes_with_transport(a, r):
    x = mt(a)
    lhs = to_maxplus(tpow(x, r)).value
    rhs = tpow(to_maxplus(x), r).value
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-9)


@given(finite, finite, st.floats(-5, 5))
def test_power_is_monotone_in_the_base(a, b, r):
    x, y = sorted([mp(a), mp(b)])
    if r >= 0:
        assert tpow(x, r) <= tpow(y, r)
    else:
        assert tpow(x, r) >= tpow(y, r)


def test_raw_operations_vectorize():
    a = np.array([0.0, 1.0, -np.inf])
    np.testing.assert_array_equal(MAX_PLUS.add(a, 0.5), [0.5, 1.0, 0.5])
    np.testing.assert_array_equal(MAX_PLUS.mul(a, 2.0), [2.0, 3.0, -np.inf])
    np.testing.assert_array_equal(MAX_TIMES.ratio_distance([1.0, 4.0], [2.0, 1.0]), [2.0, 4.0])
    np.testing.assert_array_equal(MAX_PLUS.power([1.0, 2.0], [0.0, 0.5]), [0.0, 1.0])
