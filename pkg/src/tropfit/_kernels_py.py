"""Numpy implementation of the hot kernels (fallback for ``_kernels.pyx``).

All kernels work in max-plus on float64 arrays.  Polynomials are passed as a
pair ``(coeffs, exps)`` with ``exps`` sorted ascending.  The Cython module
implements the same arithmetic in the same order, so both backends return
bitwise identical results.
"""
import numpy as np

NAME = "python"


def fuse_sorted(coeffs, exps, tol):
    """Fuse runs of exponents separated by gaps <= tol.

    Each run keeps its first (smallest) exponent and the max of its
    coefficients.  ``exps`` must be sorted ascending.
    """
    coeffs = np.asarray(coeffs, dtype=np.float64)
    exps = np.asarray(exps, dtype=np.float64)
    n = exps.shape[0]
    if n <= 1:
        return coeffs.copy(), exps.copy()
    starts = np.empty(n, dtype=bool)
    starts[0] = True
    np.greater(np.diff(exps), tol, out=starts[1:])
    idx = np.flatnonzero(starts)
    if idx.shape[0] == n:
        return coeffs.copy(), exps.copy()
    return np.maximum.reduceat(coeffs, idx), exps[idx]


def normalize_terms(coeffs, exps, tol):
    """Sort by exponent (stable) and fuse; input order is otherwise arbitrary."""
    exps = np.asarray(exps, dtype=np.float64)
    order = np.argsort(exps, kind="stable")
    return fuse_sorted(np.asarray(coeffs, dtype=np.float64)[order], exps[order], tol)


def merge_terms(c1, e1, c2, e2, tol):
    """Sum of two normalized polynomials, normalized."""
    exps = np.concatenate((e1, e2))
    order = np.argsort(exps, kind="stable")
    return fuse_sorted(np.concatenate((c1, c2))[order], exps[order], tol)


def envelope_minimum(coeffs, exps):
    """Minimum of ``max_j(coeffs[j] + exps[j] * t)`` over t, with its solution interval.

    Returns ``(mu, lo, hi, pairs)``.  ``lo`` is ``-inf`` when no exponent is
    negative and ``hi`` is ``+inf`` when none is positive; ``mu`` is ``-inf``
    when the minimum is not attained.  ``pairs`` counts the (negative,
    positive) exponent pairs examined.
    """
    a = np.asarray(coeffs, dtype=np.float64)
    p = np.asarray(exps, dtype=np.float64)
    neg = p < 0.0
    pos = p > 0.0
    zer = p == 0.0
    mu = -np.inf
    if zer.any():
        mu = float(a[zer].max())
    aj, pj = a[neg], p[neg]
    ak, pk = a[pos], p[pos]
    pairs = aj.shape[0] * ak.shape[0]
    if pairs:
        pj_ = pj[:, np.newaxis]
        pk_ = pk[np.newaxis, :]
        d = pj_ - pk_
        terms = aj[:, np.newaxis] * (-pk_ / d) + ak[np.newaxis, :] * (pj_ / d)
        mu = max(mu, float(terms.max()))
    if mu == -np.inf:
        return mu, -np.inf, np.inf, pairs
    # tiny exponents may overflow to +-inf, which is what the C kernel yields too
    with np.errstate(over="ignore"):
        lo = float(((mu - aj) / pj).max()) if aj.shape[0] else -np.inf
        hi = float(((mu - ak) / pk).min()) if ak.shape[0] else np.inf
    return mu, lo, hi, pairs


def evaluate(coeffs, exps, t):
    """Max-plus evaluation at one point or an array of points."""
    t = np.asarray(t, dtype=np.float64)
    out = np.full(t.shape, -np.inf)
    for a, p in zip(coeffs, exps):
        np.maximum(out, a + p * t, out=out)
    return out
