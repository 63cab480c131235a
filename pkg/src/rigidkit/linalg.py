"""Dense symmetric matrix helpers for graph spectra.

Everything here is dense and O(n^3), sized for n up to a few thousand.
The eigensolver is LAPACK's symmetric driver (Householder reduction plus
divide and conquer) behind a small contract: ascending eigenvalues, a
reconstruction residual below 1e-9 * n * frobenius_norm(M), and a
NumericError instead of a library-specific exception on non-convergence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericError, ParameterError
from .graphs import RegularGraph

__all__ = [
    "SymmetricMatrix",
    "Spectrum",
    "laplacian",
    "adjacency",
    "adjacency_int",
    "adjacency_diff_frobenius_sq",
    "sym_eigen",
    "operator_norm",
    "frobenius_norm",
    "pinv_sqrt",
]

DEFAULT_KERNEL_TOL = 1e-8


class SymmetricMatrix:
    """Square matrix that is symmetric by construction.

    Only the upper triangle of the input is read; the lower triangle is
    its mirror, so symmetry is exact rather than approximate. The wrapped
    array is frozen against writes.
    """

    __slots__ = ("array",)

    def __init__(self, a: np.ndarray) -> None:
        a = np.asarray(a, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ParameterError(f"expected a square matrix, got shape {a.shape}")
        if not np.isfinite(a).all():
            raise ParameterError("matrix entries must be finite")
        full = np.triu(a) + np.triu(a, 1).T
        full.setflags(write=False)
        self.array = full

    @property
    def n(self) -> int:
        return self.array.shape[0]

    def __repr__(self) -> str:  # pragma: no cover
        return f"SymmetricMatrix(n={self.n})"


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues ascending; eigenvectors (columns) when requested."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None


def laplacian(g: RegularGraph) -> SymmetricMatrix:
    """Combinatorial Laplacian D - A; for d-regular graphs D = d*I."""
    a = np.zeros((g.n, g.n), dtype=np.float64)
    e = g.edge_array()
    a[e[:, 0], e[:, 1]] = -1.0
    np.fill_diagonal(a, float(g.d))
    return SymmetricMatrix(a)


def adjacency(g: RegularGraph) -> SymmetricMatrix:
    a = np.zeros((g.n, g.n), dtype=np.float64)
    e = g.edge_array()
    a[e[:, 0], e[:, 1]] = 1.0
    return SymmetricMatrix(a)


def adjacency_int(g: RegularGraph) -> np.ndarray:
    """Full adjacency matrix in int64, for exact integer identities."""
    a = np.zeros((g.n, g.n), dtype=np.int64)
    e = g.edge_array()
    a[e[:, 0], e[:, 1]] = 1
    a[e[:, 1], e[:, 0]] = 1
    return a


def adjacency_diff_frobenius_sq(g: RegularGraph, h: RegularGraph) -> int:
    """||A_G - A_H||_F^2 on the exact integer path.

    Equals 2 * |E(G) symdiff E(H)| because the adjacency difference has
    exactly two nonzero entries, each of square 1, per symmetric
    difference edge.
    """
    if g.n != h.n:
        raise ParameterError(f"vertex counts differ: {g.n} vs {h.n}")
    diff = adjacency_int(g) - adjacency_int(h)
    return int((diff * diff).sum())


def sym_eigen(m: SymmetricMatrix, want_vectors: bool = True) -> Spectrum:
    """Full symmetric eigendecomposition, ascending eigenvalues."""
    try:
        if want_vectors:
            w, v = np.linalg.eigh(m.array)
            return Spectrum(eigenvalues=w, eigenvectors=v)
        w = np.linalg.eigvalsh(m.array)
        return Spectrum(eigenvalues=w, eigenvectors=None)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolver failed to converge: {exc}") from exc


def operator_norm(m: SymmetricMatrix) -> float:
    """Largest absolute eigenvalue."""
    w = sym_eigen(m, want_vectors=False).eigenvalues
    return float(np.abs(w).max()) if w.size else 0.0


def frobenius_norm(m: SymmetricMatrix) -> float:
    return float(np.sqrt((m.array * m.array).sum()))


def pinv_sqrt(m: SymmetricMatrix, kernel_tol: float = DEFAULT_KERNEL_TOL) -> SymmetricMatrix:
    """Pseudoinverse square root of a positive semidefinite matrix.

    Eigenvalues within kernel_tol * operator_norm of zero are treated as
    kernel and inverted to zero; an eigenvalue below the negative of that
    threshold means the input is not PSD and raises NumericError.
    """
    spec = sym_eigen(m, want_vectors=True)
    w, v = spec.eigenvalues, spec.eigenvectors
    scale = float(np.abs(w).max()) if w.size else 0.0
    cut = kernel_tol * scale
    if w.size and float(w.min()) < -cut:
        raise NumericError(
            f"matrix is not positive semidefinite within tolerance: "
            f"min eigenvalue {w.min():.3e}, threshold {-cut:.3e}"
        )
    keep = w > cut
    inv = np.zeros_like(w)
    inv[keep] = 1.0 / np.sqrt(w[keep])
    b = (v * inv) @ v.T
    return SymmetricMatrix(b)
