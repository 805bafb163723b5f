from dataclasses import dataclass, field, replace

import numpy as np

from resonance_decay.models.channel import Channel


@dataclass(frozen=True, eq=False)
class DiscreteSystem:
    """Closed system H_B: level energies on the diagonal plus the internal coupling u."""

    levels: np.ndarray  # shape (N,), real
    internal_coupling: np.ndarray  # shape (N, N), real symmetric, zero diagonal

    @property
    def size(self) -> int:
        return len(self.levels)

    @property
    def hamiltonian(self) -> np.ndarray:
        return np.diag(self.levels) + self.internal_coupling


@dataclass(frozen=True, eq=False)
class CouplingMatrix:
    """Real coupling W between discrete states (rows) and channels (columns), scaled by alpha."""

    matrix: np.ndarray  # shape (N, K)
    alpha: float = 1.0

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"Coupling scale alpha must be non-negative, got {self.alpha}")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("Coupling matrix contains non-finite entries")

    @property
    def scaled(self) -> np.ndarray:
        return self.alpha * self.matrix

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape  # type: ignore[return-value]

    def with_alpha(self, alpha: float) -> "CouplingMatrix":
        return replace(self, alpha=alpha)


@dataclass(frozen=True, eq=False)
class OpenSystem:
    """A closed system coupled to a list of channels; the unit every analysis operates on."""

    system: DiscreteSystem
    coupling: CouplingMatrix
    channels: list[Channel] = field(default_factory=list)
    hbar: float = 1.0

    @property
    def size(self) -> int:
        return self.system.size

    def with_alpha(self, alpha: float) -> "OpenSystem":
        return replace(self, coupling=self.coupling.with_alpha(alpha))

    def with_system(self, system: DiscreteSystem) -> "OpenSystem":
        return replace(self, system=system)

    def open_channels(self, energy: float) -> list[int]:
        """Indices of the channels with non-zero density at ``energy``."""
        return [c for c, channel in enumerate(self.channels) if channel.is_open(energy)]
