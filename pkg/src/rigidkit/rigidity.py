"""Overlap rigidity laws and the hyperplane-rounding witness cut.

Two laws drive this module.  d-regular graphs on a shared vertex set whose
Laplacians eps-approximate each other spectrally must share at least
(dn/2)(1 - eps^2 d/2) edges.  Bipartite d-regular graphs on the same
bipartition whose cuts eps-approximate each other must share at least
(dn/2)(1 - 3 sqrt(d) eps) edges.  Either bound may go negative, in which
case the law says nothing.

The constructive side certifies the contrapositive: when the edge sets
differ on a delta fraction, rounding the columns of I + (A_H - A_G)/sqrt(d)
against random hyperplanes yields sign vectors x whose gap x'(L_G - L_H)x
is large in expectation, so no small eps can satisfy the cut sandwich.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import _cut_scan, spectral_approx_factor
from .errors import NumericError, ParameterError, ScaleError
from .graphs import BipartiteRegularGraph, RegularGraph, edge_overlap, is_connected
from .linalg import DEFAULT_KERNEL_TOL
from .rng import spawn

RIGIDITY_SLACK = 1e-9
ARCSIN_CLAMP_TOL = 1e-12
ZNORM_TOL = 1e-12

_KINDS = ("spectral", "cut")


@dataclass(frozen=True)
class RigidityReport:
    """One overlap-law check: observed shared edges against the bound."""

    kind: str
    epsilon_used: float
    overlap_observed: int
    overlap_bound: float
    satisfied: bool

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise ParameterError(f"unknown rigidity kind {self.kind!r}")


@dataclass(frozen=True)
class RoundingDiagnostics:
    """Closed-form companions of the rounded gap.

    gram_value is sum_ij M_ij <y_i, y_j> over ordered pairs; arcsin_value is
    (2/pi) sum_ij M_ij arcsin <y_i, y_j>, the exact expectation of the gap
    of a single rounding.
    """

    gram_value: float
    arcsin_value: float


@dataclass(frozen=True)
class WitnessCut:
    """Best sign vector found by hyperplane rounding, with its certificates."""

    x: np.ndarray
    gap: int
    lhs_form: int
    trials_used: int
    success: bool
    expectation_2eps: RoundingDiagnostics


def spectral_overlap_bound(n: int, d: int, epsilon: float) -> float:
    """(dn/2)(1 - eps^2 d/2); negative means the law is vacuous."""
    _check_bound_args(n, d, epsilon)
    return (d * n / 2) * (1.0 - epsilon * epsilon * d / 2.0)


def cut_overlap_bound(n: int, d: int, epsilon: float) -> float:
    """(dn/2)(1 - 3 sqrt(d) eps); negative means the law is vacuous."""
    _check_bound_args(n, d, epsilon)
    return (d * n / 2) * (1.0 - 3.0 * math.sqrt(d) * epsilon)


def _check_bound_args(n, d, epsilon) -> None:
    if not (isinstance(n, (int, np.integer)) and n >= 1):
        raise ParameterError(f"vertex count must be a positive integer, got {n!r}")
    if not (isinstance(d, (int, np.integer)) and 0 <= d < n):
        raise ParameterError(f"degree must be an integer in [0, n), got {d!r}")
    if not epsilon >= 0.0:
        raise ParameterError(f"epsilon must be nonnegative, got {epsilon!r}")


def check_spectral_rigidity(
    g: RegularGraph, h: RegularGraph, kernel_tol: float = DEFAULT_KERNEL_TOL
) -> RigidityReport:
    """Measure eps both ways by dense eigensolve; compare overlap to the law.

    satisfied should hold for every valid input pair: a False here means a
    bug in the factor or overlap computation, not a property of the data.
    """
    _check_regular_pair(g, h)
    eps = max(
        spectral_approx_factor(g, h, kernel_tol=kernel_tol).epsilon,
        spectral_approx_factor(h, g, kernel_tol=kernel_tol).epsilon,
    )
    return _overlap_report("spectral", g, h, eps, spectral_overlap_bound)


def check_cut_rigidity_exact(
    g: BipartiteRegularGraph, h: BipartiteRegularGraph
) -> RigidityReport:
    """Exact-eps variant of the cut law, n <= 24, via full cut enumeration."""
    _check_bipartite_pair(g, h)
    _check_regular_pair(g, h)
    if g.n > 24:
        raise ScaleError(f"exact cut rigidity capped at n = 24, got {g.n}")
    eps_gh, _, eps_hg, _ = _cut_scan(g, h)
    return _overlap_report("cut", g, h, max(eps_gh, eps_hg), cut_overlap_bound)


def _overlap_report(kind, g, h, eps, bound_fn) -> RigidityReport:
    shared = edge_overlap(g, h).shared
    bound = bound_fn(g.n, g.d, eps)
    return RigidityReport(
        kind=kind,
        epsilon_used=eps,
        overlap_observed=shared,
        overlap_bound=bound,
        satisfied=shared >= bound - RIGIDITY_SLACK,
    )


def _check_regular_pair(g: RegularGraph, h: RegularGraph) -> None:
    if g.n != h.n:
        raise ParameterError(f"vertex counts differ: {g.n} vs {h.n}")
    if g.d != h.d:
        raise ParameterError(f"degrees differ: {g.d} vs {h.d}")
    if not is_connected(g) or not is_connected(h):
        raise ParameterError("rigidity checks require connected graphs")


def _check_bipartite_pair(g, h) -> None:
    # Same n forces the same canonical bipartition {0..n/2-1 | n/2..n-1}.
    for name, graph in (("first", g), ("second", h)):
        if not isinstance(graph, BipartiteRegularGraph):
            raise ParameterError(f"{name} graph is not bipartite-typed")
    if g.n != h.n:
        raise ParameterError(f"vertex counts differ: {g.n} vs {h.n}")
    if g.d != h.d:
        raise ParameterError(f"degrees differ: {g.d} vs {h.d}")
    if g.d < 1:
        raise ParameterError("difference structure needs degree at least 1")


class GramVectors:
    """Unit vectors y_i = z_i/|z_i|, z_i the columns of I + (A_H - A_G)/sqrt(d).

    Columns are sparse maps with at most 2d + 1 entries, so pairwise sums
    over the difference edges cost O(n d^2) and no dense Gram matrix is ever
    formed.  |z_i|^2 = 1 + (difference degree)/d is asserted to sit in
    [1, 3]; anything else signals a non-simple or mismatched-bipartition
    input and raises a numeric error.
    """

    __slots__ = ("n", "d", "pairs", "znorm_sq", "_columns")

    def __init__(self, n, d, pairs, znorm_sq, columns):
        self.n = n
        self.d = d
        self.pairs = pairs
        self.znorm_sq = znorm_sq
        self._columns = columns

    def column(self, i: int) -> np.ndarray:
        """Dense y_i."""
        if not 0 <= i < self.n:
            raise ParameterError(f"column index {i} out of range")
        y = np.zeros(self.n)
        for k, val in self._columns[i].items():
            y[k] = val
        return y / math.sqrt(self.znorm_sq[i])

    def dense(self) -> np.ndarray:
        """n x n matrix whose i-th column is y_i; for small-instance tests."""
        return np.stack([self.column(i) for i in range(self.n)], axis=1)

    def _pair_value(self, u: int, v: int) -> float:
        # <z_u, z_v> via the sparse columns, normalized to <y_u, y_v>.
        cu, cv = self._columns[u], self._columns[v]
        if len(cv) < len(cu):
            cu, cv = cv, cu
        dot = sum(val * cv.get(k, 0.0) for k, val in cu.items())
        return dot / math.sqrt(self.znorm_sq[u] * self.znorm_sq[v])


def gram_vectors(g: BipartiteRegularGraph, h: BipartiteRegularGraph) -> GramVectors:
    """Build the rounding vectors for the pair; identical inputs give e_i."""
    _check_bipartite_pair(g, h)
    inv_sqrt_d = 1.0 / math.sqrt(g.d)
    pairs = []
    for u, v in sorted(g.edge_set - h.edge_set):
        pairs.append((u, v, -1))
    for u, v in sorted(h.edge_set - g.edge_set):
        pairs.append((u, v, 1))
    columns = [{i: 1.0} for i in range(g.n)]
    for u, v, sign in pairs:
        columns[u][v] = sign * inv_sqrt_d
        columns[v][u] = sign * inv_sqrt_d
    znorm_sq = np.array(
        [sum(val * val for val in col.values()) for col in columns]
    )
    if znorm_sq.min() < 1.0 - ZNORM_TOL or znorm_sq.max() > 3.0 + ZNORM_TOL:
        raise NumericError(
            "a rounding column has |z|^2 outside [1, 3]; the inputs are not a "
            "simple same-bipartition pair"
        )
    return GramVectors(g.n, g.d, tuple(pairs), znorm_sq, columns)


def gram_lower_bound(g: BipartiteRegularGraph, h: BipartiteRegularGraph) -> float:
    """Exact sum_ij M_ij <y_i, y_j> over ordered pairs.

    Every difference pair contributes positively, and the sum provably
    dominates (2 delta d n)(2 / 3 sqrt(d)) for delta the fraction of base
    edges lost; that floor is re-checked here on every call.
    """
    gv = gram_vectors(g, h)
    total = 2.0 * sum(sign * gv._pair_value(u, v) for u, v, sign in gv.pairs)
    delta = (len(gv.pairs) / 2) / (g.d * g.n / 2)
    floor = (2.0 * delta * g.d * g.n) * (2.0 / (3.0 * math.sqrt(g.d)))
    if total < floor - RIGIDITY_SLACK:
        raise NumericError(
            f"gram sum {total} fell below its structural floor {floor}"
        )
    return total


def rounding_expectation(g: BipartiteRegularGraph, h: BipartiteRegularGraph) -> float:
    """(2/pi) sum_ij M_ij arcsin <y_i, y_j>: exact mean gap of one rounding."""
    gv = gram_vectors(g, h)
    total = 0.0
    for u, v, sign in gv.pairs:
        total += sign * math.asin(_clamped(gv._pair_value(u, v)))
    return (2.0 / math.pi) * 2.0 * total


def _clamped(t: float) -> float:
    if abs(t) > 1.0 + ARCSIN_CLAMP_TOL:
        raise NumericError(f"inner product {t} is outside [-1, 1] beyond tolerance")
    return max(-1.0, min(1.0, t))


class _DifferenceArrays:
    """Endpoint arrays of E(G)-only and E(H)-only edges, for vector kernels."""

    __slots__ = ("g_u", "g_v", "h_u", "h_v")

    def __init__(self, g: RegularGraph, h: RegularGraph):
        g_only = sorted(g.edge_set - h.edge_set)
        h_only = sorted(h.edge_set - g.edge_set)
        self.g_u = np.array([u for u, _ in g_only], dtype=np.int64)
        self.g_v = np.array([v for _, v in g_only], dtype=np.int64)
        self.h_u = np.array([u for u, _ in h_only], dtype=np.int64)
        self.h_v = np.array([v for _, v in h_only], dtype=np.int64)


def _round_once(gen, n: int, diff: _DifferenceArrays, inv_sqrt_d: float) -> np.ndarray:
    # x_i = sign <y_i, w> = sign of (w + Mw/sqrt(d))_i; ties round to +1.
    w = gen.standard_normal(n)
    norm = float(np.linalg.norm(w))
    if norm == 0.0:
        w[0] = 1.0
    else:
        w /= norm
    mw = (
        np.bincount(diff.h_u, weights=w[diff.h_v], minlength=n)
        + np.bincount(diff.h_v, weights=w[diff.h_u], minlength=n)
        - np.bincount(diff.g_u, weights=w[diff.g_v], minlength=n)
        - np.bincount(diff.g_v, weights=w[diff.g_u], minlength=n)
    )
    return np.where(w + mw * inv_sqrt_d >= 0.0, 1, -1).astype(np.int64)


def _gap_of(x: np.ndarray, diff: _DifferenceArrays) -> int:
    # x'(L_G - L_H)x = x'(A_H - A_G)x for equal degrees; integer exact.
    h_side = int((x[diff.h_u] * x[diff.h_v]).sum())
    g_side = int((x[diff.g_u] * x[diff.g_v]).sum())
    return 2 * (h_side - g_side)


def witness_cut(
    g: BipartiteRegularGraph,
    h: BipartiteRegularGraph,
    epsilon_target: float,
    trials: int = 1000,
    seed: int = 0,
) -> WitnessCut:
    """Best-of-trials hyperplane rounding; success when gap > target * x'L_Gx.

    Each trial draws its own generator from (seed, trial index), so any
    parallel split reproduces the sequential result; ties keep the earliest
    trial.  All trials always run: failure is an outcome, not an error, and
    the report carries the best gap seen.
    """
    _check_bipartite_pair(g, h)
    if not epsilon_target >= 0.0:
        raise ParameterError(f"epsilon_target must be nonnegative, got {epsilon_target!r}")
    if not (isinstance(trials, (int, np.integer)) and trials >= 1):
        raise ParameterError(f"trials must be a positive integer, got {trials!r}")
    diff = _DifferenceArrays(g, h)
    inv_sqrt_d = 1.0 / math.sqrt(g.d)
    best_gap = None
    best_x = None
    for trial in range(trials):
        x = _round_once(spawn(seed, trial), g.n, diff, inv_sqrt_d)
        gap = _gap_of(x, diff)
        if best_gap is None or gap > best_gap:
            best_gap = gap
            best_x = x
    edges = g.edge_array()
    lhs_form = 4 * int((best_x[edges[:, 0]] != best_x[edges[:, 1]]).sum())
    return WitnessCut(
        x=best_x,
        gap=best_gap,
        lhs_form=lhs_form,
        trials_used=trials,
        success=best_gap > epsilon_target * lhs_form,
        expectation_2eps=RoundingDiagnostics(
            gram_value=gram_lower_bound(g, h),
            arcsin_value=rounding_expectation(g, h),
        ),
    )


def rounding_gaps(
    g: BipartiteRegularGraph,
    h: BipartiteRegularGraph,
    trials: int,
    seed: int = 0,
) -> np.ndarray:
    """Gap of every single-trial rounding, for comparison with the closed form.

    Trial t uses the same generator witness_cut would, so the two agree
    trial by trial.
    """
    _check_bipartite_pair(g, h)
    if not (isinstance(trials, (int, np.integer)) and trials >= 1):
        raise ParameterError(f"trials must be a positive integer, got {trials!r}")
    diff = _DifferenceArrays(g, h)
    inv_sqrt_d = 1.0 / math.sqrt(g.d)
    out = np.empty(trials, dtype=np.int64)
    for trial in range(trials):
        x = _round_once(spawn(seed, trial), g.n, diff, inv_sqrt_d)
        out[trial] = _gap_of(x, diff)
    return out
