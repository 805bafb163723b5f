from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class EffectiveHamiltonian:
    """Complex symmetric H_eff(E) evaluated at one probe energy."""

    energy: float
    matrix: np.ndarray  # shape (N, N), complex

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    @property
    def scale(self) -> float:
        """Spectral-norm scale used to turn relative tolerances into absolute ones."""
        return float(np.linalg.norm(self.matrix, 2)) if self.size else 0.0

    def anti_hermitian_part(self) -> np.ndarray:
        """(M - M^dagger) / 2i, a Hermitian matrix that is negative semidefinite."""
        return (self.matrix - self.matrix.conj().T) / 2j

    def symmetry_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T))) if self.size else 0.0
