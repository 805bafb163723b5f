from dataclasses import dataclass, field

import numpy as np

from resonance_decay.models.resonance import ResonanceState


@dataclass(frozen=True)
class ScatteringExcitation:
    """Excitation through the incoming channel ``channel`` (the F = 0 case)."""

    channel: int


@dataclass(frozen=True, eq=False)
class SourceExcitation:
    """Excitation by a source term F switched on as a step at t0 = 0."""

    source: np.ndarray  # shape (N,), complex

    def __post_init__(self):
        if not np.all(np.isfinite(self.source)):
            raise ValueError("Source vector contains non-finite entries")


Excitation = ScatteringExcitation | SourceExcitation


@dataclass(frozen=True, eq=False)
class ExcitationCoefficients:
    """c_l0 and d_l = conj(c_l0) of every state at energy E; weights w_l = c_l0 * d_l >= 0."""

    energy: float
    states: list[ResonanceState]
    c0: np.ndarray
    d: np.ndarray

    @property
    def weights(self) -> np.ndarray:
        return (self.c0 * self.d).real

    @property
    def widths(self) -> np.ndarray:
        return np.array([s.width for s in self.states])


@dataclass(eq=False)
class DecayTrace:
    energy: float
    times: np.ndarray
    population: np.ndarray
    rates: np.ndarray
    truncated: bool = False

    def to_rows(self) -> list[dict]:
        return [
            {"t": float(t), "population": float(p), "k_gr": float(k)}
            for t, p, k in zip(self.times, self.population, self.rates)
        ]


@dataclass(eq=False)
class TrappingReport:
    """Width bifurcation along a coupling sweep: K broad states, N - K trapped ones."""

    alphas: list[float]
    widths: np.ndarray  # shape (steps, N), sorted by descending width at each step
    broad_count: int
    gamma_av: np.ndarray  # mean trapped width per step
    k_av: np.ndarray  # gamma_av / hbar
    saturation_onset: float | None = None
    hbar: float = 1.0
    lost_steps: list[int] = field(default_factory=list)

    @property
    def trapped_widths(self) -> np.ndarray:
        return self.widths[:, self.broad_count :]

    @property
    def broad_fraction(self) -> np.ndarray:
        """Share of the total width carried by the broad states at each step."""
        totals = self.widths.sum(axis=1)
        broad = self.widths[:, : self.broad_count].sum(axis=1)
        return np.divide(broad, totals, out=np.zeros_like(broad), where=totals > 0)

    @property
    def tau_av(self) -> np.ndarray:
        with np.errstate(divide="ignore"):
            return np.where(self.k_av > 0, 1.0 / self.k_av, np.inf)

    def to_rows(self) -> list[dict]:
        rows = []
        for n, alpha in enumerate(self.alphas):
            row = {
                "alpha": alpha,
                "gamma_av": float(self.gamma_av[n]),
                "k_av": float(self.k_av[n]),
                "broad_fraction": float(self.broad_fraction[n]),
            }
            row.update({f"width_{i}": float(w) for i, w in enumerate(self.widths[n])})
            rows.append(row)
        return rows
