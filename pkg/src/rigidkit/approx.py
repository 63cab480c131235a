"""Spectral and cut approximation factors between graphs on a shared vertex set.

The factor reported throughout is the smallest eps with

    (1 - eps) x'L_G x <= x'L_H x <= (1 + eps) x'L_G x

over the admissible x for the method: all of R^n off the kernel for the
spectral factor, sign vectors for the exact cut factor.  The definition is
one-sided in g: g supplies the base quadratic form, and swapping the
arguments changes the answer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoFiniteEpsilonError, ParameterError, ScaleError
from .graphs import RegularGraph, is_connected
from .linalg import (
    DEFAULT_KERNEL_TOL,
    SymmetricMatrix,
    laplacian,
    pinv_sqrt,
    sym_eigen,
)

CUT_EXHAUSTIVE_MAX_N = 24

_METHODS = ("spectral-eigen", "cut-exhaustive")


@dataclass(frozen=True)
class ApproxReport:
    """Smallest eps for one ordered pair, with the vector that attains it."""

    epsilon: float
    method: str
    argmax_vector: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ParameterError(f"unknown method {self.method!r}")
        if not (self.epsilon >= 0.0):
            raise ParameterError(f"epsilon must be nonnegative, got {self.epsilon}")


def quadratic_form(m: SymmetricMatrix, x) -> float:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (m.n,):
        raise ParameterError(f"vector of shape {x.shape} against a {m.n}x{m.n} matrix")
    return float(x @ m.array @ x)


def cut_value(g: RegularGraph, subset) -> int:
    """Number of edges of g crossing (subset, complement).

    Equals quadratic_form(laplacian(g), chi)/4 for the +-1 indicator chi.
    """
    side = frozenset(subset)
    for v in side:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < g.n):
            raise ParameterError(f"subset member {v!r} is not a vertex of the graph")
    return sum((u in side) != (v in side) for u, v in g.edges)


def spectral_approx_factor(
    g: RegularGraph, h: RegularGraph, kernel_tol: float = DEFAULT_KERNEL_TOL
) -> ApproxReport:
    """Exact smallest eps over all of R^n, via a dense eigensolve.

    Requires ker(L_G) contained in ker(L_H) up to kernel_tol; otherwise some
    direction has zero base form but positive target form and no finite eps
    exists.  For connected inputs the shared kernel is the constant vector.
    """
    if g.n != h.n:
        raise ParameterError(f"vertex counts differ: {g.n} vs {h.n}")
    lap_g = laplacian(g)
    lap_h = laplacian(h)
    spec_g = sym_eigen(lap_g)
    w_g, v_g = spec_g.eigenvalues, spec_g.eigenvectors
    scale_g = float(w_g[-1])
    scale_h = float(np.abs(sym_eigen(lap_h, want_vectors=False).eigenvalues).max())
    # Kernel inclusion: every numerically-null direction of L_G must be
    # null for L_H as well, at the same relative tolerance.
    kernel_cols = v_g[:, w_g <= kernel_tol * scale_g]
    residual = np.einsum("ij,ik,kj->j", kernel_cols, lap_h.array, kernel_cols)
    if residual.size and residual.max() > kernel_tol * max(scale_h, 1.0):
        raise NoFiniteEpsilonError(
            "kernel mismatch: a null direction of the base graph has positive "
            f"form {residual.max():.3e} in the other graph"
        )
    proj = pinv_sqrt(lap_g, kernel_tol=kernel_tol)
    delta = lap_h.array - lap_g.array
    middle = SymmetricMatrix(proj.array @ delta @ proj.array)
    spec_m = sym_eigen(middle)
    w_m, v_m = spec_m.eigenvalues, spec_m.eigenvectors
    pick = int(np.abs(w_m).argmax())
    epsilon = float(abs(w_m[pick]))
    argmax = proj.array @ v_m[:, pick]
    norm = float(np.linalg.norm(argmax))
    if norm < 1e-12:
        # eps == 0 makes every admissible x extremal; report the top
        # eigendirection of L_G instead of the kernel image.
        argmax = v_g[:, -1]
        norm = 1.0
    return ApproxReport(
        epsilon=epsilon, method="spectral-eigen", argmax_vector=argmax / norm
    )


def _gray_flip_vertex(step: int) -> int:
    # Position of the lone bit flipped at this step of the reflected Gray
    # code, shifted by one because vertex 0 stays fixed at +1.
    return (step & -step).bit_length()


def _cut_scan(g: RegularGraph, h: RegularGraph):
    """Sweep all nonconstant sign patterns once; track both directed maxima.

    Returns (eps_gh, x_gh, eps_hg, x_hg) where eps_gh maximises
    |cut_h - cut_g| / cut_g and eps_hg the reverse.  Both graphs must be
    connected so every nonconstant pattern has a positive cut on each side.
    """
    n = g.n
    nbrs_g = g.neighbors
    nbrs_h = h.neighbors
    x = [1] * n
    cut_g = 0
    cut_h = 0
    best_gh = -1.0
    best_hg = -1.0
    x_gh = x_hg = None
    for step in range(1, 1 << (n - 1)):
        v = _gray_flip_vertex(step)
        xv = x[v]
        delta = 0
        for u in nbrs_g[v]:
            delta += 1 if x[u] == xv else -1
        cut_g += delta
        delta = 0
        for u in nbrs_h[v]:
            delta += 1 if x[u] == xv else -1
        cut_h += delta
        x[v] = -xv
        diff = cut_h - cut_g if cut_h >= cut_g else cut_g - cut_h
        ratio = diff / cut_g
        if ratio > best_gh:
            best_gh = ratio
            x_gh = tuple(x)
        ratio = diff / cut_h
        if ratio > best_hg:
            best_hg = ratio
            x_hg = tuple(x)
    return best_gh, x_gh, best_hg, x_hg


def cut_approx_factor_exact(g: RegularGraph, h: RegularGraph) -> ApproxReport:
    """Exhaustive smallest eps over sign vectors, n <= 24.

    Enumerates the 2^(n-1) - 1 nonconstant patterns with vertex 0 pinned to
    +1, updating both cut sizes incrementally along a Gray code.
    """
    if g.n != h.n:
        raise ParameterError(f"vertex counts differ: {g.n} vs {h.n}")
    if g.n > CUT_EXHAUSTIVE_MAX_N:
        raise ScaleError(
            f"exhaustive cut enumeration capped at n = {CUT_EXHAUSTIVE_MAX_N}, got {g.n}"
        )
    if not is_connected(g):
        raise NoFiniteEpsilonError(
            "base graph is disconnected: a nonconstant pattern has zero cut"
        )
    if not is_connected(h):
        raise ParameterError("second graph is disconnected")
    best, pattern, _, _ = _cut_scan(g, h)
    return ApproxReport(
        epsilon=best,
        method="cut-exhaustive",
        argmax_vector=np.array(pattern, dtype=np.float64),
    )


def friedman_factor(g: RegularGraph, scale: float | None = None) -> float:
    """Approximation factor of g against a scaled complete graph.

    The reference (c/n) K_n has quadratic form c |x|^2 on the complement of
    the constant vector, so the factor is max |lam/c - 1| over the
    Laplacian spectrum with the constant direction removed.  scale defaults
    to d, matching a degree-d graph against (d/n) K_n; passing scale = n
    makes the complete graph its own reference, with factor 0.  Only the
    single shared kernel direction is dropped: for a disconnected graph the
    surviving zero eigenvalues count, each contributing factor 1.
    """
    if scale is None:
        scale = float(g.d)
    if not scale > 0.0:
        raise ParameterError(f"reference scale must be positive, got {scale!r}")
    w = sym_eigen(laplacian(g), want_vectors=False).eigenvalues
    return float(np.abs(w[1:] / scale - 1.0).max())
