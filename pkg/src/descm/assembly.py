"""Assembly of the dense symmetric collocation matrices.

The reduced matrix acting on z = cosh(kh) v(kh) has entries

    A[j,k] = -delta2(k-j) / (h^2 cosh(jh) cosh(kh))          for j != k,
    A[k,k] = (pi^2/3) / (h^2 cosh(kh)^2) + W(kh)/cosh(kh)^2,

with W the transformed potential. The generalized pair (stiffness matrix,
diagonal weight) it was reduced from is assembled separately as a test
oracle only; solving goes through the reduced matrix directly, which is
exactly symmetric by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .de_map import transformed_potential, transformed_potential_scaled
from .potential import EvenPolynomialPotential
from .sinc_basis import SincWeights

# cosh(x) overflows double precision just above this argument.
_COSH_OVERFLOW = 710.0


class CollocationOverflowError(OverflowError):
    """A collocation point produced a non-finite matrix entry."""


@dataclass(frozen=True)
class CollocationMatrix:
    """Dense symmetric collocation matrix over points kh, k in [-N, N]."""

    half_width: int
    mesh: float
    entries: np.ndarray

    def __post_init__(self):
        self.entries.setflags(write=False)

    @property
    def size(self) -> int:
        return 2 * self.half_width + 1

    def entry(self, j: int, k: int) -> float:
        """Entry addressed by signed collocation indices j, k in [-N, N]."""
        return float(self.entries[j + self.half_width, k + self.half_width])

    def trace(self) -> float:
        return float(np.trace(self.entries))

    def dump(self) -> str:
        """Plain-text dump, one row per line, 17 significant digits."""
        return "\n".join(
            " ".join(format(v, ".16e") for v in row) for row in self.entries
        )


def _collocation_points(half_width: int, h: float) -> np.ndarray:
    if half_width < 1:
        raise ValueError(f"truncation half-width must be >= 1, got {half_width}")
    if h <= 0.0:
        raise ValueError(f"mesh size must be positive, got {h}")
    if half_width * h > _COSH_OVERFLOW:
        raise CollocationOverflowError(
            f"cosh overflows at collocation point x = {half_width * h:.6g} "
            f"(k = {half_width}, h = {h:.6g})"
        )
    return np.arange(-half_width, half_width + 1) * h


def assemble_collocation_matrix(
    potential: EvenPolynomialPotential, half_width: int, h: float
) -> CollocationMatrix:
    """Build the reduced symmetric matrix directly from its closed-form entries."""
    points = _collocation_points(half_width, h)
    c = np.cosh(points)
    weights = SincWeights.second_derivative(half_width)
    entries = -weights.offset_matrix(half_width) / (h * h * np.outer(c, c))
    idx = np.arange(2 * half_width + 1)
    entries[idx, idx] += transformed_potential_scaled(potential, points)
    if not np.isfinite(entries).all():
        k = int(np.argmax(~np.isfinite(np.diagonal(entries)))) - half_width
        raise CollocationOverflowError(
            f"non-finite matrix entry at collocation point x = {k * h:.6g} (k = {k}, h = {h:.6g})"
        )
    return CollocationMatrix(half_width=half_width, mesh=h, entries=entries)


def assemble_generalized_pair(
    potential: EvenPolynomialPotential, half_width: int, h: float
) -> tuple[np.ndarray, np.ndarray]:
    """The unreduced pair: symmetric stiffness matrix and diagonal weights.

    Returns (H, d) where H[j,k] = -delta2(k-j)/h^2 + W(kh) delta0(k-j) and
    d[k] = cosh(kh)^2 > 0 is the diagonal of the weight matrix. Conjugating
    H by d^(-1/2) reproduces the reduced matrix; kept as an oracle for that
    identity, not used on the solve path.
    """
    points = _collocation_points(half_width, h)
    weights = SincWeights.second_derivative(half_width)
    stiffness = -weights.offset_matrix(half_width) / (h * h)
    idx = np.arange(2 * half_width + 1)
    stiffness[idx, idx] += transformed_potential(potential, points)
    diagonal = np.cosh(points) ** 2
    return stiffness, diagonal
