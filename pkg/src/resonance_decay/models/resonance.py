import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class ResonanceState:
    """One eigenpair of H_eff with c-product normalization phi^T phi = 1."""

    z: complex
    phi: np.ndarray  # shape (N,), complex
    a_norm: float  # A = phi^H phi >= 1
    rigidity: float  # 1 / A

    @property
    def energy(self) -> float:
        return self.z.real

    @property
    def width(self) -> float:
        return -2.0 * self.z.imag

    def lifetime(self, hbar: float = 1.0) -> float:
        """tau = hbar / Gamma; infinite for a bound (zero-width) state."""
        return hbar / self.width if self.width > 0 else math.inf

    def to_dict(self) -> dict:
        return {
            "re_z": self.z.real,
            "im_z": self.z.imag,
            "gamma": self.width,
            "a_norm": self.a_norm,
            "rigidity": self.rigidity,
        }


@dataclass(frozen=True, eq=False)
class PhaseRigidityReport:
    a_norms: list[float]
    overlaps: np.ndarray  # B, diagonal carries A

    @property
    def antisymmetry_residual(self) -> float:
        """max |B_ll' + B_l'l| over off-diagonal pairs."""
        off = self.overlaps - np.diag(np.diag(self.overlaps))
        return float(np.max(np.abs(off + off.T))) if off.size else 0.0


@dataclass
class FixedPointResult:
    e_star: float
    gamma_star: float
    iterations: int
    converged: bool

    def to_dict(self) -> dict:
        return {
            "e_star": self.e_star,
            "gamma_star": self.gamma_star,
            "iterations": self.iterations,
            "converged": self.converged,
        }


@dataclass(eq=False)
class Trajectory:
    """Eigenvalue trajectories over a swept parameter, index-aligned step to step."""

    parameters: list[float]
    states: list[list[ResonanceState]]
    lost_steps: list[int] = field(default_factory=list)

    @property
    def eigenvalues(self) -> np.ndarray:
        """Array of shape (steps, N)."""
        return np.array([[s.z for s in step] for step in self.states])

    @property
    def widths(self) -> np.ndarray:
        return -2.0 * self.eigenvalues.imag

    def to_rows(self) -> list[dict]:
        rows = []
        for n, (parameter, step) in enumerate(zip(self.parameters, self.states)):
            for index, state in enumerate(step):
                rows.append(
                    {
                        "alpha": parameter,
                        "index": index,
                        **state.to_dict(),
                        "lost": int(n in self.lost_steps),
                    }
                )
        return rows


@dataclass
class ExceptionalPoint:
    parameters: dict[str, float]
    z: complex
    residual: float
    self_orthogonality: float
    converged: bool

    def to_dict(self) -> dict:
        return {
            **self.parameters,
            "re_z": self.z.real,
            "im_z": self.z.imag,
            "residual": self.residual,
            "self_orthogonality": self.self_orthogonality,
            "converged": self.converged,
        }
