import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from tropfit import MAX_PLUS, MAX_TIMES, MinResult, grid_minimize, minimize, normalize, poly_sum, select_point
from tropfit.errors import DomainError, TagMismatchError, UnboundedError
from tropfit.polyopt import evaluate


def P(terms, tag=MAX_PLUS):
    return normalize(terms, tag)


def test_normalize_examples():
    assert P([(1, 0.5), (2, 0.5)]).monomials == [(2, 0.5)]
    assert P([(0, 1), (0, -1)]).monomials == [(0, -1), (0, 1)]
    assert P([(3, 0)]).monomials == [(3, 0)]


def test_normalize_fuses_close_exponents_to_the_smallest():
    p = P([(1.0, 2.0), (5.0, 2.0 + 5e-10), (0.0, 7.0)])
    assert p.monomials == [(5.0, 2.0), (0.0, 7.0)]
    # idempotent
    assert normalize(p.monomials) == p


def test_normalize_rejects_bad_terms():
    with pytest.raises(DomainError):
        P([])
    with pytest.raises(DomainError):
        P([(-math.inf, 1.0)])
    with pytest.raises(DomainError):
        P([(1.0, math.nan)])
    with pytest.raises(DomainError):
        P([(0.0, 1.0)], MAX_TIMES)


def test_poly_sum_examples():
    p = P([(0, -1), (1, 2)])
    assert poly_sum(p, p) == p
    assert poly_sum(P([(1, 0)]), P([(2, 1)])).monomials == [(1, 0), (2, 1)]
    assert poly_sum(P([(1, 0)]), P([(5, 0)])).monomials == [(5, 0)]
    with pytest.raises(TagMismatchError):
        poly_sum(P([(1, 0)]), P([(1, 0)], MAX_TIMES))


def test_evaluate_examples():
    p = P([(0, -1), (0, 1)])
    assert evaluate(p, 2.0) == 2.0
    assert evaluate(p, 0.0) == 0.0
    # max(2 * 2^-1, 0.5 * 2^2) = max(1, 2)
    assert evaluate(P([(2, -1), (0.5, 2)], MAX_TIMES), 2.0) == pytest.approx(2.0, rel=1e-15)
    np.testing.assert_array_equal(p(np.array([-3.0, 1.0])), [3.0, 1.0])
    with pytest.raises(DomainError):
        evaluate(p, -math.inf)
    with pytest.raises(DomainError):
        evaluate(P([(1, 1)], MAX_TIMES), 0.0)


def test_minimize_examples():
    # the lines 1 - p and p cross at p = 1/2
    r = minimize(P([(1, -1), (0, 1)]))
    assert (r.mu, r.lo, r.hi) == (0.5, 0.5, 0.5)
    assert grid_minimize(P([(1, -1), (0, 1)]), -10, 10, 1e-4)[1] == pytest.approx(0.5, abs=1e-4)
    r = minimize(P([(3, 0)]))
    assert (r.mu, r.lo, r.hi) == (3, None, None)
    r = minimize(P([(0, 0), (-2, 1)]))
    assert (r.mu, r.lo, r.hi) == (0, None, 2)


def test_minimize_unbounded():
    with pytest.raises(UnboundedError):
        minimize(P([(1, 1), (2, 3)]))
    with pytest.raises(UnboundedError):
        minimize(P([(1, -1)]))


def test_minimize_maxtimes_is_transported():
    # max(2/x, x^2 / 2) is smallest where 2/x = x^2/2, i.e. x = 4^(1/3)
    r = minimize(P([(2, -1), (0.5, 2)], MAX_TIMES))
    x = 4 ** (1 / 3)
    assert r.lo == pytest.approx(x, rel=1e-12) and r.hi == pytest.approx(x, rel=1e-12)
    assert r.mu == pytest.approx(2 / x, rel=1e-12)
    assert r.tag is MAX_TIMES


def test_select_point_rules():
    assert select_point(MinResult(0.0, 1.0, 3.0)) == 2.0
    assert select_point(MinResult(0.0, None, 2.0)) == 2.0
    assert select_point(MinResult(0.0, -1.5, None)) == -1.5
    assert select_point(MinResult(0.0, None, None)) == 0.0
    assert select_point(MinResult(1.0, 1.0, 4.0, MAX_TIMES)) == 2.0
    assert select_point(MinResult(1.0, None, None, MAX_TIMES)) == 1.0


def test_pair_count_is_quadratic():
    rng = np.random.default_rng(3)
    for size in (2, 5, 17, 64):
        exps = np.concatenate([-rng.uniform(0.1, 2, size // 2), rng.uniform(0.1, 2, size - size // 2)])
        r = minimize(P(zip(rng.normal(size=size), exps)))
        assert r.pairs <= size * size / 4 + 1


terms = st.lists(
    st.tuples(st.floats(-10, 10), st.floats(-4, 4).filter(lambda e: abs(e) > 0.05)),
    min_size=2,
    max_size=8,
)


@settings(max_examples=300, deadline=None)
@given(terms)
def test_minimum_matches_dense_grid(ts):
    """Grid evaluation never beats the closed form and gets within its resolution."""
    p = P(ts)
    assume((p.exps < 0).any() and (p.exps > 0).any())
    r = minimize(p)
    # every crossing lies within |da| / min|p| <= 20 / 0.1 of the origin
    _, value = grid_minimize(p, -210.0, 210.0, 1e-3)
    assert value >= r.mu - 1e-9
    assert value - r.mu <= 1e-3 * 4
    for end in (r.lo, r.hi):
        assert end is not None
        assert evaluate(p, end) == pytest.approx(r.mu, abs=1e-9)
    assert evaluate(p, select_point(r)) == pytest.approx(r.mu, abs=1e-9)


@settings(max_examples=200, deadline=None)
@given(terms, terms)
def test_sum_is_pointwise_max(a, b):
    p, q = P(a), P(b)
    x = np.linspace(-5, 5, 101)
    np.testing.assert_allclose(evaluate(poly_sum(p, q), x), np.maximum(evaluate(p, x), evaluate(q, x)), atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(terms)
def test_minimum_is_below_every_value(ts):
    p = P(ts)
    assume((p.exps < 0).any() and (p.exps > 0).any())
    r = minimize(p)
    x = np.linspace(-50, 50, 2001)
    assert (evaluate(p, x) >= r.mu - 1e-9).all()


def test_constant_polynomial_on_grid():
    arg, value = grid_minimize(P([(2.5, 0.0)]), -1.0, 1.0, 0.25)
    assert value == 2.5 and arg == -1.0


def test_grid_minimize_validation():
    p = P([(1, -1), (0, 1)])
    with pytest.raises(DomainError):
        grid_minimize(p, 1.0, 1.0, 0.1)
    with pytest.raises(DomainError):
        grid_minimize(p, 0.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        grid_minimize(P([(1, 1)], MAX_TIMES), 0.0, 1.0, 0.1)
