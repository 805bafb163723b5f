"""
Hermitian reference model of the whole function space.

Every channel band is cut into M uniform bins. Bin m of channel c sits at its center energy E_m
and couples to discrete state i with (alpha W)_ic * sqrt(rho_c(E_m) * dE_c), which reproduces
the channel self-energy as M grows. Time evolution is exact through the eigendecomposition of
the resulting real symmetric matrix, valid up to the recurrence time 2 pi hbar / dE.
"""

import logging
import math
from collections.abc import Sequence

import numpy as np
import scipy.linalg

from resonance_decay.constants import MIN_BINS
from resonance_decay.exceptions import HorizonExceeded, WindowEmpty, WindowRequired
from resonance_decay.models.oracle import FullSpaceModel, SurvivalCurve, WidthFit
from resonance_decay.models.resonance import ResonanceState
from resonance_decay.models.system import OpenSystem

logger = logging.getLogger(__name__)


def discretize_full(open_system: OpenSystem, bins: int) -> FullSpaceModel:
    """
    Raises:
        ValueError: if ``bins`` < 100.
        WindowRequired: for a wideband channel without an energy window.
    """
    if bins < MIN_BINS:
        raise ValueError(f"At least {MIN_BINS} bins per channel are required, got {bins}")

    n = open_system.size
    scaled = open_system.coupling.scaled
    blocks = []
    bin_energies = []
    bin_widths = []
    for c, channel in enumerate(open_system.channels):
        band = channel.band()
        if band is None:
            raise WindowRequired(f"Channel {c} ({channel.kind}) has no energy window to discretize")
        lo, hi = band
        width = (hi - lo) / bins
        energies = lo + (np.arange(bins) + 0.5) * width
        densities = np.array([channel.density(e) for e in energies])
        blocks.append(np.outer(scaled[:, c], np.sqrt(densities * width)))
        bin_energies.append(energies)
        bin_widths.append(width)

    dimension = n + bins * len(open_system.channels)
    hamiltonian = np.zeros((dimension, dimension))
    hamiltonian[:n, :n] = open_system.system.hamiltonian
    if blocks:
        coupling = np.hstack(blocks)
        hamiltonian[:n, n:] = coupling
        hamiltonian[n:, :n] = coupling.T
        hamiltonian[n:, n:] = np.diag(np.concatenate(bin_energies))
    logger.info("Discretized full space: dimension %d, bin widths %s", dimension, bin_widths)

    return FullSpaceModel(
        hamiltonian=hamiltonian,
        discrete_size=n,
        bins_per_channel=[bins] * len(open_system.channels),
        bin_widths=bin_widths,
        hbar=open_system.hbar,
    )


def default_initial_state(states: list[ResonanceState], tracker: int = 0) -> np.ndarray:
    """Normalized real part of the tracked eigenvector, supported on the discrete block."""
    vector = states[tracker].phi.real
    return vector / np.linalg.norm(vector)


def _embed(model: FullSpaceModel, psi0: Sequence[complex] | np.ndarray) -> np.ndarray:
    psi = np.asarray(psi0, dtype=complex).reshape(-1)
    if psi.size == model.discrete_size:
        psi = np.concatenate([psi, np.zeros(model.dimension - model.discrete_size)])
    if psi.size != model.dimension:
        raise ValueError(f"Initial state has {psi.size} entries, model has {model.dimension}")
    norm = np.linalg.norm(psi)
    if norm == 0:
        raise ValueError("Initial state is the zero vector")
    return psi / norm


def spectral_weights(
    model: FullSpaceModel, psi0: Sequence[complex] | np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenenergies of the full model and the strengths |<v|psi0>|^2, which sum to 1."""
    energies, vectors = scipy.linalg.eigh(model.hamiltonian)
    amplitudes = vectors.T @ _embed(model, psi0)
    return energies, np.abs(amplitudes) ** 2


def evolve_full(
    model: FullSpaceModel, psi0: Sequence[complex] | np.ndarray, t: float
) -> np.ndarray:
    """exp(-i H_full t / hbar) psi0 in the full space."""
    energies, vectors = scipy.linalg.eigh(model.hamiltonian)
    amplitudes = vectors.T @ _embed(model, psi0)
    return vectors @ (np.exp(-1j * energies * t / model.hbar) * amplitudes)


def survival_probability_full(
    model: FullSpaceModel,
    psi0: Sequence[complex] | np.ndarray,
    times: Sequence[float] | np.ndarray,
) -> SurvivalCurve:
    """
    P_full(t) = |<psi0| exp(-i H_full t / hbar) |psi0>|^2 with psi0 normalized.

    Raises:
        HorizonExceeded: if any time lies beyond the recurrence horizon of the model.
    """
    values = np.asarray(times, dtype=float).reshape(-1)
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ValueError("Times must be finite and non-negative")
    horizon = model.horizon
    if values.size and values.max() > horizon:
        raise HorizonExceeded(
            f"Time {values.max():.6g} exceeds the recurrence horizon {horizon:.6g}"
        )

    energies, weights = spectral_weights(model, psi0)
    amplitude = np.exp(-1j * np.outer(values, energies) / model.hbar) @ weights
    return SurvivalCurve(times=values, probability=np.abs(amplitude) ** 2, horizon=horizon)


def extract_width(
    curve: SurvivalCurve, window: tuple[float, float], hbar: float = 1.0
) -> WidthFit:
    """
    Least-squares slope of ln P against t inside ``window``; Gamma_fit = -hbar * slope.

    Raises:
        WindowEmpty: if fewer than two positive samples fall inside the window.
    """
    lo, hi = window
    mask = (curve.times >= lo) & (curve.times <= hi) & (curve.probability > 0)
    points = int(np.count_nonzero(mask))
    if points < 2:
        raise WindowEmpty(f"Only {points} usable samples in the fit window [{lo}, {hi}]")

    t = curve.times[mask]
    log_p = np.log(curve.probability[mask])
    slope, intercept = np.polyfit(t, log_p, 1)
    residual = float(math.sqrt(np.mean((log_p - (slope * t + intercept)) ** 2)))
    return WidthFit(gamma=float(-hbar * slope), residual=residual, points=points)
