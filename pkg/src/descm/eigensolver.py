"""Eigendecomposition of dense real symmetric matrices.

Thin contract layer over LAPACK's symmetric drivers (via numpy): input
symmetry is validated, eigenvalues come back sorted ascending, and results
are deterministic for identical input. Eigenvalues-only mode skips the
eigenvector accumulation and is the default for convergence sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SYMMETRY_RTOL = 1e-12


class EigenSolveError(RuntimeError):
    """The iterative eigenvalue phase failed to converge."""


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues, optionally with the orthonormal eigenvectors.

    When vectors are present, column i pairs with eigenvalue i.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None

    def __post_init__(self):
        self.eigenvalues.setflags(write=False)
        if self.eigenvectors is not None:
            self.eigenvectors.setflags(write=False)


def eigen_symmetric(matrix, want_vectors: bool = False) -> EigenDecomposition:
    """Full spectrum of a dense symmetric real matrix, sorted ascending."""
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = np.abs(a).max()
    asymmetry = np.abs(a - a.T).max()
    if asymmetry > _SYMMETRY_RTOL * max(1.0, scale):
        raise ValueError(
            f"matrix is not symmetric: max |A - A^T| = {asymmetry:.3e} "
            f"exceeds {_SYMMETRY_RTOL:.0e} * max |A| = {_SYMMETRY_RTOL * max(1.0, scale):.3e}"
        )
    try:
        if want_vectors:
            values, vectors = np.linalg.eigh(a)
            return EigenDecomposition(eigenvalues=values, eigenvectors=vectors)
        values = np.linalg.eigvalsh(a)
        return EigenDecomposition(eigenvalues=values)
    except np.linalg.LinAlgError as exc:
        raise EigenSolveError(f"symmetric eigensolver did not converge: {exc}") from exc
