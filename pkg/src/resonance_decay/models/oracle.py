from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class FullSpaceModel:
    """Hermitian model of the whole function space: discrete block plus binned continua."""

    hamiltonian: np.ndarray  # real symmetric, dimension N + sum(M_c)
    discrete_size: int
    bins_per_channel: list[int]
    bin_widths: list[float]
    hbar: float = 1.0

    @property
    def dimension(self) -> int:
        return self.hamiltonian.shape[0]

    @property
    def horizon(self) -> float:
        """Recurrence time 2*pi*hbar / dE of the coarsest channel discretization."""
        if not self.bin_widths:
            return float("inf")
        return 2 * np.pi * self.hbar / max(self.bin_widths)


@dataclass(eq=False)
class SurvivalCurve:
    times: np.ndarray
    probability: np.ndarray
    horizon: float

    def to_rows(self) -> list[dict]:
        return [{"t": float(t), "p_full": float(p)} for t, p in zip(self.times, self.probability)]


@dataclass
class WidthFit:
    gamma: float
    residual: float
    points: int
