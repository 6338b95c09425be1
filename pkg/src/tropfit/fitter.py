"""Fitting tropical Puiseux polynomials to samples by agglomerative exponent clustering.

Given samples ``(x_i, y_i)`` and a number of monomials N, the fit finds
exponents ``p_j`` and coefficients ``theta_j`` of ``P(x) = max_j theta_j x^{p_j}``
minimizing the tropical distance between ``P(x_i)`` and ``y_i``.

For fixed exponents the optimal coefficients and error have a closed form.
The remaining problem is a minimization over partitions of the samples,
where each part contributes the minimum of a one-variable max-plus
polynomial in the exponent.  The partition is built greedily: start from
singletons and repeatedly merge the pair of parts whose summed polynomial
has the smallest minimum, until N parts remain.

All work happens in max-plus.  Max-times (max-algebra) data is mapped there
by the natural logarithm and the results are mapped back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .errors import DomainError
from .polyopt import (
    EXPONENT_MERGE_TOL,
    MinResult,
    TropPolynomial,
    _minimize_maxplus,
    minimize,
    normalize,
    poly_sum,
    select_point,
)
from .semifield import MAX_PLUS, MAX_TIMES, Semifield

__all__ = [
    "SampleSet",
    "FitConfig",
    "Cluster",
    "MergeStep",
    "ClusterState",
    "FitResult",
    "build_phi",
    "initial_state",
    "merge_cost",
    "agglomerate",
    "finalize",
    "fit",
    "fit_maxalgebra",
    "predict",
    "sample_residuals",
    "sweep",
]

DUPLICATE_X_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class SampleSet:
    """Input/output samples; all values must be nonzero elements of the semifield."""

    xs: np.ndarray
    ys: np.ndarray
    tag: Semifield = MAX_PLUS

    def __post_init__(self):
        tag = Semifield.parse(self.tag)
        xs = np.array(self.xs, dtype=float).ravel()
        ys = np.array(self.ys, dtype=float).ravel()
        if xs.shape != ys.shape:
            raise DomainError(f"{xs.shape[0]} inputs but {ys.shape[0]} outputs")
        if xs.shape[0] == 0:
            raise DomainError("at least one sample is required")
        for name, v in (("x", xs), ("y", ys)):
            if not np.isfinite(v).all():
                raise DomainError(f"{name} samples must be finite")
            if tag is MAX_TIMES and (v <= 0).any():
                raise DomainError(f"max-algebra {name} samples must be strictly positive")
        srt = np.sort(xs)
        if xs.shape[0] > 1 and np.diff(srt).min() <= DUPLICATE_X_TOL:
            raise DomainError("duplicate abscissas")
        xs.setflags(write=False)
        ys.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "tag", tag)

    @property
    def m(self) -> int:
        return self.xs.shape[0]

    def __len__(self) -> int:
        return self.m

    def to_maxplus(self) -> "SampleSet":
        if self.tag is MAX_PLUS:
            return self
        return SampleSet(np.log(self.xs), np.log(self.ys), MAX_PLUS)


@dataclass(frozen=True)
class FitConfig:
    n_terms: int
    tie_tolerance: float = 1e-12
    exponent_merge_tol: float = EXPONENT_MERGE_TOL

    def __post_init__(self):
        if int(self.n_terms) != self.n_terms or self.n_terms < 1:
            raise DomainError(f"n_terms must be a positive integer, got {self.n_terms!r}")
        object.__setattr__(self, "n_terms", int(self.n_terms))
        if self.tie_tolerance < 0 or self.exponent_merge_tol < 0:
            raise DomainError("tolerances must be nonnegative")


@dataclass
class Cluster:
    members: tuple[int, ...]
    poly: TropPolynomial
    minimum: MinResult


@dataclass(frozen=True)
class MergeStep:
    step: int
    u: int
    v: int
    cost: float
    delta: float  # max of cluster minima after the merge


@dataclass
class ClusterState:
    """Working state of the agglomeration.

    Samples are held sorted by abscissa; cluster keys and members are
    positions in that order, and a cluster's key is its smallest member.
    ``costs[u, v]`` (u < v, both live keys) caches the minimum of the summed
    polynomial of clusters u and v; every other entry is +inf.
    """

    samples: SampleSet
    order: np.ndarray
    config: FitConfig
    clusters: dict[int, Cluster]
    costs: np.ndarray
    step: int = 0
    history: list[MergeStep] = field(default_factory=list)

    @property
    def n_clusters(self) -> int:
        return len(self.clusters)

    @property
    def delta(self) -> float:
        return max(c.minimum.mu for c in self.clusters.values())

    def cost(self, u: int, v: int) -> float:
        if u > v:
            u, v = v, u
        return float(self.costs[u, v])

    def partition(self) -> list[tuple[int, ...]]:
        """Clusters as tuples of original sample indices."""
        return [
            tuple(sorted(int(self.order[i]) for i in c.members))
            for _, c in sorted(self.clusters.items())
        ]


@dataclass(frozen=True, eq=False)
class FitResult:
    """Fitted polynomial with its error and the partition that produced it.

    Monomials are listed by increasing exponent.  ``coefficients``,
    ``delta_star``, ``error``, ``per_cluster_minima`` and ``residuals`` are in
    the semifield's carrier (conventional values).  ``per_cluster_intervals``
    bound the exponent of each monomial (``None`` = unbounded) and
    ``partition`` holds 0-based original sample indices.
    """

    algebra: Semifield
    n_terms: int
    exponents: np.ndarray
    coefficients: np.ndarray
    delta_star: float
    error: float
    partition: tuple[tuple[int, ...], ...]
    per_cluster_minima: np.ndarray
    per_cluster_intervals: tuple[tuple[Optional[float], Optional[float]], ...]
    residuals: np.ndarray

    def predict(self, x):
        return predict(self, x)

    def polynomial(self, tol: float = EXPONENT_MERGE_TOL) -> TropPolynomial:
        """The fitted polynomial with coinciding monomials fused."""
        return normalize(zip(self.coefficients, self.exponents), self.algebra, tol)

    def to_dict(self) -> dict:
        return {
            "algebra": self.algebra.value,
            "n_terms": self.n_terms,
            "delta_star": float(self.delta_star),
            "error": float(self.error),
            "exponents": [float(p) for p in self.exponents],
            "coefficients": [float(c) for c in self.coefficients],
            "partition": [[i + 1 for i in part] for part in self.partition],
            "residuals": [float(r) for r in self.residuals],
            "intervals": [[lo, hi] for lo, hi in self.per_cluster_intervals],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FitResult":
        tag = Semifield.parse(data["algebra"])
        try:
            exps = np.asarray(data["exponents"], dtype=float)
            coeffs = np.asarray(data["coefficients"], dtype=float)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"malformed model: {exc}") from None
        if exps.ndim != 1 or exps.shape != coeffs.shape or exps.shape[0] == 0:
            raise ValueError("model needs matching nonempty exponent and coefficient lists")
        parts = tuple(tuple(int(i) - 1 for i in part) for part in data.get("partition", []))
        intervals = tuple(
            (None if lo is None else float(lo), None if hi is None else float(hi))
            for lo, hi in data.get("intervals", [])
        )
        delta = float(data.get("delta_star", math.nan))
        return cls(
            algebra=tag,
            n_terms=int(data.get("n_terms", exps.shape[0])),
            exponents=exps,
            coefficients=coeffs,
            delta_star=delta,
            error=float(data.get("error", math.nan)),
            partition=parts,
            per_cluster_minima=np.asarray([], dtype=float),
            per_cluster_intervals=intervals,
            residuals=np.asarray(data.get("residuals", []), dtype=float),
        )


def _phi_terms(xs: np.ndarray, ys: np.ndarray, i: int):
    # phi_i(p) = max_j (y_i - y_j) + (x_j - x_i) p
    return ys[i] - ys, xs - xs[i]


def build_phi(samples: SampleSet, i: int, tol: float = EXPONENT_MERGE_TOL) -> TropPolynomial:
    """Polynomial in the exponent whose minimum measures how well sample i is served.

    Always contains the monomial ``(0, 0)`` contributed by ``j == i``.
    """
    if samples.tag is not MAX_PLUS:
        raise DomainError("build_phi works on max-plus samples; transform max-algebra data first")
    if not 0 <= i < samples.m:
        raise IndexError(f"sample index {i} out of range for {samples.m} samples")
    c, e = _phi_terms(samples.xs, samples.ys, i)
    return normalize(zip(c, e), MAX_PLUS, tol)


def _sorted_maxplus(samples: SampleSet, tol: float) -> tuple[SampleSet, np.ndarray]:
    mp = samples.to_maxplus()
    order = np.argsort(mp.xs, kind="stable")
    xs = mp.xs[order]
    if xs.shape[0] > 1 and np.diff(xs).min() <= tol:
        raise DomainError(
            f"abscissas closer than the exponent merge tolerance {tol:g} "
            "(after the log transform for max-algebra data)"
        )
    return SampleSet(xs, mp.ys[order], MAX_PLUS), order


def initial_state(samples: SampleSet, config: FitConfig) -> ClusterState:
    """Singleton clusters with all pairwise merge costs cached."""
    tol = config.exponent_merge_tol
    srt, order = _sorted_maxplus(samples, tol)
    if config.n_terms > srt.m:
        raise DomainError(f"n_terms={config.n_terms} exceeds the number of samples {srt.m}")
    k = _backend.kernels
    clusters = {}
    for i in range(srt.m):
        c, e = _phi_terms(srt.xs, srt.ys, i)
        c, e = k.normalize_terms(c, e, tol)
        poly = TropPolynomial._trusted(c, e, MAX_PLUS)
        clusters[i] = Cluster((i,), poly, _minimize_maxplus(c, e))
    costs = np.full((srt.m, srt.m), np.inf)
    return ClusterState(srt, order, config, clusters, costs)


def _pair_cost(a: Cluster, b: Cluster, tol: float) -> float:
    k = _backend.kernels
    c, e = k.merge_terms(a.poly.coeffs, a.poly.exps, b.poly.coeffs, b.poly.exps, tol)
    return k.envelope_minimum(c, e)[0]


def _fill_costs(state: ClusterState) -> None:
    tol = state.config.exponent_merge_tol
    keys = sorted(state.clusters)
    for n, u in enumerate(keys):
        cu = state.clusters[u]
        for v in keys[n + 1 :]:
            state.costs[u, v] = _pair_cost(cu, state.clusters[v], tol)


def merge_cost(state: ClusterState, u: int, v: int) -> float:
    """Minimum of the summed polynomial of clusters u and v (computed afresh)."""
    if u == v:
        raise ValueError("a cluster cannot be merged with itself")
    try:
        cu, cv = state.clusters[u], state.clusters[v]
    except KeyError as exc:
        raise KeyError(f"unknown cluster {exc.args[0]}") from None
    return minimize(poly_sum(cu.poly, cv.poly, state.config.exponent_merge_tol)).mu


def _select_pair(state: ClusterState) -> tuple[int, int, float]:
    costs = state.costs
    best = costs.min()
    # argwhere is row-major, so the first hit is the lexicographically least (u, v)
    u, v = np.argwhere(costs <= best + state.config.tie_tolerance)[0]
    return int(u), int(v), float(costs[u, v])


def _merge(state: ClusterState, u: int, v: int, cost: float) -> None:
    tol = state.config.exponent_merge_tol
    cu, cv = state.clusters[u], state.clusters.pop(v)
    poly = poly_sum(cu.poly, cv.poly, tol)
    merged = Cluster(tuple(sorted(cu.members + cv.members)), poly, _minimize_maxplus(poly.coeffs, poly.exps))
    state.clusters[u] = merged
    state.costs[v, :] = np.inf
    state.costs[:, v] = np.inf
    for w, cw in state.clusters.items():
        if w == u:
            continue
        a, b = (u, w) if u < w else (w, u)
        state.costs[a, b] = _pair_cost(merged, cw, tol)
    state.step += 1
    state.history.append(MergeStep(state.step, u, v, cost, state.delta))


def _agglomerate_to(state: ClusterState, n_terms: int) -> ClusterState:
    if state.n_clusters > n_terms:
        _fill_costs(state)
    while state.n_clusters > n_terms:
        u, v, cost = _select_pair(state)
        _merge(state, u, v, cost)
    return state


def agglomerate(samples: SampleSet, config: FitConfig) -> ClusterState:
    """Greedy merging from singletons down to ``config.n_terms`` clusters.

    Ties (costs within ``tie_tolerance`` of the minimum) go to the pair of
    cluster keys that is lexicographically least, keys being the smallest
    member position in abscissa order; the result therefore does not depend
    on the order in which samples are given.
    """
    state = initial_state(samples, config)
    n = config.n_terms
    if n == state.n_clusters:
        return state
    if n == 1:
        tol = config.exponent_merge_tol
        keys = sorted(state.clusters)
        poly = state.clusters[keys[0]].poly
        for key in keys[1:]:
            poly = poly_sum(poly, state.clusters[key].poly, tol)
        members = tuple(range(state.samples.m))
        state.clusters = {0: Cluster(members, poly, _minimize_maxplus(poly.coeffs, poly.exps))}
        state.step = state.samples.m - 1
        return state
    return _agglomerate_to(state, n)


def sample_residuals(tag: Semifield, exponents, coefficients, xs, ys) -> np.ndarray:
    """Per-sample tropical distance between ``P(x_i)`` and ``y_i``.

    Absolute difference in max-plus, ``max(P/y, y/P)`` in max-algebra.
    """
    values = _predict_raw(tag, exponents, coefficients, xs)
    return tag.ratio_distance(values, np.asarray(ys, dtype=float))


def finalize(state: ClusterState, samples: SampleSet) -> FitResult:
    """Exponents, coefficients and error from the final partition."""
    srt = state.samples
    clusters = list(state.clusters.values())
    points = [select_point(c.minimum) for c in clusters]
    ranked = sorted(range(len(clusters)), key=lambda j: (points[j], clusters[j].members[0]))
    clusters = [clusters[j] for j in ranked]
    exps = np.array([points[j] for j in ranked], dtype=float)
    minima = np.array([c.minimum.mu for c in clusters], dtype=float)
    delta = float(minima.max())
    # theta_j = sqrt(delta) / phi(p_j) with phi(p) = max_i (p x_i - y_i)
    phi = _backend.kernels.evaluate(-srt.ys, srt.xs, exps)
    coeffs = MAX_PLUS.mul(MAX_PLUS.power(delta, 0.5), -phi)
    partition = tuple(tuple(sorted(int(state.order[i]) for i in c.members)) for c in clusters)
    intervals = tuple((c.minimum.lo, c.minimum.hi) for c in clusters)
    residuals = sample_residuals(MAX_PLUS, exps, coeffs, srt.xs, srt.ys)
    # back to the caller's sample order
    residuals_orig = np.empty_like(residuals)
    residuals_orig[state.order] = residuals
    result = FitResult(
        algebra=MAX_PLUS,
        n_terms=state.config.n_terms,
        exponents=exps,
        coefficients=np.asarray(coeffs, dtype=float),
        delta_star=delta,
        error=float(MAX_PLUS.power(delta, 0.5)),
        partition=partition,
        per_cluster_minima=minima,
        per_cluster_intervals=intervals,
        residuals=residuals_orig,
    )
    if samples.tag is MAX_TIMES:
        result = _to_maxtimes(result, samples)
    return result


def _to_maxtimes(r: FitResult, samples: SampleSet) -> FitResult:
    coeffs = np.exp(r.coefficients)
    return FitResult(
        algebra=MAX_TIMES,
        n_terms=r.n_terms,
        exponents=r.exponents,
        coefficients=coeffs,
        delta_star=math.exp(r.delta_star),
        error=math.exp(r.error),
        partition=r.partition,
        per_cluster_minima=np.exp(r.per_cluster_minima),
        per_cluster_intervals=r.per_cluster_intervals,
        residuals=sample_residuals(MAX_TIMES, r.exponents, coeffs, samples.xs, samples.ys),
    )


def fit(samples: SampleSet, config: FitConfig | int) -> FitResult:
    """Best-approximating polynomial with ``config.n_terms`` monomials.

    Max-algebra samples are dispatched to :func:`fit_maxalgebra`.
    """
    if not isinstance(config, FitConfig):
        config = FitConfig(config)
    return finalize(agglomerate(samples, config), samples)


def fit_maxalgebra(samples: SampleSet, config: FitConfig | int) -> FitResult:
    """Fit a max-algebra polynomial ``max_j theta_j x^{p_j}`` to positive samples.

    The samples are log-transformed, fitted in max-plus, and the error and
    coefficients exponentiated; exponents are unchanged by the transform.
    """
    if samples.tag is not MAX_TIMES:
        samples = SampleSet(samples.xs, samples.ys, MAX_TIMES)
    return fit(samples, config)


def _predict_raw(tag: Semifield, exponents, coefficients, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    p = np.asarray(exponents, dtype=float)
    t = np.asarray(coefficients, dtype=float)
    if tag is MAX_PLUS:
        if not np.isfinite(x).all():
            raise DomainError("max-plus polynomials are evaluated at finite reals")
        return _backend.kernels.evaluate(t, p, x)
    if (x <= 0).any() or not np.isfinite(x).all():
        raise DomainError("max-algebra polynomials are evaluated at positive reals")
    return (t * x[..., np.newaxis] ** p).max(axis=-1)


def predict(result: FitResult, x, tag: Semifield | None = None):
    """Evaluate the fitted polynomial at x (scalar or array)."""
    tag = result.algebra if tag is None else Semifield.parse(tag)
    out = _predict_raw(tag, result.exponents, result.coefficients, x)
    return out[()] if np.ndim(out) == 0 else out


def sweep(samples: SampleSet, n_min: int, n_max: int, config: FitConfig | None = None) -> list[tuple[int, float]]:
    """Squared error for every number of monomials in ``[n_min, n_max]`` from one merge path.

    The greedy path does not depend on where it stops, so each entry equals
    ``fit(samples, N).delta_star``.
    """
    if not 1 <= n_min <= n_max <= samples.m:
        raise DomainError(f"need 1 <= n_min <= n_max <= {samples.m}, got {n_min}..{n_max}")
    base = config or FitConfig(n_min)
    cfg = FitConfig(n_min, base.tie_tolerance, base.exponent_merge_tol)
    state = initial_state(samples, cfg)
    deltas = {state.n_clusters: state.delta}
    _agglomerate_to(state, n_min)
    for h in state.history:
        deltas[state.samples.m - h.step] = h.delta
    out = []
    for n in range(n_min, n_max + 1):
        d = deltas[n]
        out.append((n, math.exp(d) if samples.tag is MAX_TIMES else d))
    return out
