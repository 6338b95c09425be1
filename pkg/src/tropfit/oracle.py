"""Brute-force references for small instances.

These deliberately avoid the greedy search: :func:`exact_fit` enumerates
every partition of the samples, and :func:`grid_minimize` evaluates a
polynomial on a dense grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GuardError
from .fitter import FitResult, SampleSet, _phi_terms
from .polyopt import EXPONENT_MERGE_TOL, TropPolynomial, minimize, normalize
from .semifield import MAX_PLUS, MAX_TIMES
from .troplinalg import TropMatrix, TropVector, distance, matvec

__all__ = ["MAX_ORACLE_SAMPLES", "OracleResult", "exact_fit", "grid_minimize", "residual_check"]

MAX_ORACLE_SAMPLES = 12


@dataclass(frozen=True)
class OracleResult:
    delta_exact: float
    best_partition: tuple[tuple[int, ...], ...]
    evaluations: int

    def to_dict(self, algebra: str) -> dict:
        return {
            "algebra": algebra,
            "delta_exact": self.delta_exact,
            "best_partition": [[i + 1 for i in part] for part in self.best_partition],
            "evaluations": self.evaluations,
        }


def _restricted_growth(m: int, k: int):
    """Restricted-growth strings of length m using at most k block labels."""
    labels = [0] * m

    def rec(i: int, used: int):
        if i == m:
            yield labels
            return
        for b in range(min(used + 1, k)):
            labels[i] = b
            yield from rec(i + 1, max(used, b + 1))

    if m:
        yield from rec(1, 1)


def exact_fit(samples: SampleSet, n_terms: int, max_samples: int = MAX_ORACLE_SAMPLES,
              tol: float = EXPONENT_MERGE_TOL) -> OracleResult:
    """Minimum over all partitions into at most ``n_terms`` parts of the max of part minima.

    Parts are reported as 0-based sample indices.  ``delta_exact`` is in the
    samples' carrier.
    """
    m = samples.m
    if m > max_samples:
        raise GuardError(f"exact search refused for {m} samples (limit {max_samples})")
    if not 1 <= n_terms <= m:
        raise DomainError(f"n_terms must be in 1..{m}")
    mp = samples.to_maxplus()
    phis = [list(zip(*_phi_terms(mp.xs, mp.ys, i))) for i in range(m)]
    part_min: dict[int, float] = {}

    def block_min(mask: int) -> float:
        v = part_min.get(mask)
        if v is None:
            terms = [t for i in range(m) if mask >> i & 1 for t in phis[i]]
            v = minimize(normalize(terms, MAX_PLUS, tol)).mu
            part_min[mask] = v
        return v

    best, best_labels, count = math.inf, None, 0
    for labels in _restricted_growth(m, n_terms):
        masks = [0] * n_terms
        for i, b in enumerate(labels):
            masks[b] |= 1 << i
        value = max(block_min(mk) for mk in masks if mk)
        count += 1
        if value < best:
            best, best_labels = value, list(labels)
    blocks: dict[int, list[int]] = {}
    for i, b in enumerate(best_labels):
        blocks.setdefault(b, []).append(i)
    partition = tuple(tuple(v) for _, v in sorted(blocks.items()))
    if samples.tag is MAX_TIMES:
        best = math.exp(best)
    return OracleResult(best, partition, count)


def grid_minimize(p: TropPolynomial, lo: float, hi: float, step: float) -> tuple[float, float]:
    """Smallest value of a polynomial on the grid ``lo, lo+step, ..., <= hi``.

    The grid lives in the polynomial's carrier (so max-times grids need lo > 0).
    Returns ``(argmin, value)``.
    """
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise DomainError("grid range must be finite with lo < hi")
    if not step > 0:
        raise DomainError("grid step must be positive")
    if p.tag is MAX_TIMES and lo <= 0:
        raise DomainError("max-times grids must stay in x > 0")
    n = int(math.floor((hi - lo) / step)) + 1
    grid = lo + step * np.arange(n)
    values = np.full(n, -np.inf)
    buf = np.empty(n)
    for a, e in zip(p.coeffs, p.exps):
        if p.tag is MAX_PLUS:
            np.multiply(grid, e, out=buf)
            buf += a
        else:
            np.power(grid, e, out=buf)
            buf *= a
        np.maximum(values, buf, out=values)
    k = int(np.argmin(values))
    return float(grid[k]), float(values[k])


def residual_check(result: FitResult, samples: SampleSet) -> float:
    """Distance between ``X(p*) theta*`` and ``y`` rebuilt from the matrix form.

    ``X[i, j] = x_i^{p_j}``; the result should equal ``result.error``.
    """
    tag = result.algebra
    x = np.asarray(samples.xs, dtype=float)
    p = np.asarray(result.exponents, dtype=float)
    X = tag.power(x[:, np.newaxis], p[np.newaxis, :])
    d = distance(
        matvec(TropMatrix(X, tag), TropVector(result.coefficients, tag)),
        TropVector(samples.ys, tag),
    )
    return float(d.value)
