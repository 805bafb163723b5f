import logging
import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from resonance_decay.config import settings
from resonance_decay.constants import SINGULAR_CONDITION
from resonance_decay.exceptions import SingularResolvent
from resonance_decay.hamiltonians.builder import effective_hamiltonian
from resonance_decay.models.resonance import ResonanceState
from resonance_decay.models.scattering import SMatrixSample
from resonance_decay.models.system import OpenSystem
from resonance_decay.spectra.eigen import eigendecompose

logger = logging.getLogger(__name__)


def channel_densities(open_system: OpenSystem, energy: float) -> np.ndarray:
    return np.array([channel.density(energy) for channel in open_system.channels])


def channel_amplitudes(
    open_system: OpenSystem, states: list[ResonanceState], energy: float
) -> np.ndarray:
    """a_lc = sqrt(2 pi rho_c(E)) ((alpha W)^T phi_l)_c, shape (states, channels)."""
    if not states:
        return np.zeros((0, len(open_system.channels)), dtype=complex)
    phi = np.column_stack([s.phi for s in states])
    projections = phi.T @ open_system.coupling.scaled
    return np.sqrt(2 * math.pi * channel_densities(open_system, energy)) * projections


def resonance_amplitude(open_system: OpenSystem, energy: float) -> np.ndarray:
    """
    Resonance part of the S-matrix as a sum over resonance states,
    S_res_cc' = -i sum_l a_lc a_lc' / (E - z_l), with z_l and phi_l taken at E.

    Raises EPDegenerate at an exceptional point; ``smatrix`` stays valid there.
    """
    states = eigendecompose(effective_hamiltonian(open_system, energy))
    amplitudes = channel_amplitudes(open_system, states, energy)
    z = np.array([s.z for s in states])
    return -1j * (amplitudes.T / (energy - z)) @ amplitudes


def resolvent_amplitude(open_system: OpenSystem, energy: float) -> np.ndarray:
    """-2 pi i V^T (E - H_eff)^-1 V with V_ic = sqrt(rho_c(E)) (alpha W)_ic."""
    hamiltonian = effective_hamiltonian(open_system, energy)
    coupled = open_system.coupling.scaled * np.sqrt(channel_densities(open_system, energy))
    shifted = energy * np.eye(hamiltonian.size) - hamiltonian.matrix
    condition = np.linalg.cond(shifted)
    if not condition < SINGULAR_CONDITION:
        raise SingularResolvent(
            f"E - H_eff is singular at E = {energy:.12g} (condition {condition:.3g}); "
            "the probe energy sits on a bound-state pole"
        )
    return -2j * math.pi * coupled.T @ np.linalg.solve(shifted, coupled)


def smatrix(open_system: OpenSystem, energy: float) -> SMatrixSample:
    """
    S(E) = I - 2 pi i V^T (E - H_eff)^-1 V.

    Closed channels (zero density at E) have identity rows and columns and are left out of the
    unitarity check.
    """
    if not math.isfinite(energy):
        raise ValueError(f"Energy must be finite, got {energy}")
    k = len(open_system.channels)
    matrix = np.eye(k, dtype=complex) + resolvent_amplitude(open_system, energy)
    return SMatrixSample(
        energy=energy, matrix=matrix, open_channels=open_system.open_channels(energy)
    )


def smatrix_grid(
    open_system: OpenSystem, energies: Sequence[float] | np.ndarray
) -> list[SMatrixSample]:
    """S-matrix samples in grid order, evaluated concurrently."""
    with ThreadPoolExecutor(max_workers=settings.max_workers) as executor:
        return list(executor.map(lambda e: smatrix(open_system, float(e)), energies))


def cross_section(
    open_system: OpenSystem,
    channel_out: int,
    channel_in: int,
    energies: Sequence[float] | np.ndarray,
) -> list[tuple[float, float]]:
    """Dimensionless line shape sigma_cc'(E) = |delta_cc' - S_cc'(E)|^2."""
    k = len(open_system.channels)
    if not (0 <= channel_out < k and 0 <= channel_in < k):
        raise ValueError(f"Channel indices ({channel_out}, {channel_in}) out of range for {k}")
    delta = 1.0 if channel_out == channel_in else 0.0
    return [
        (sample.energy, float(abs(delta - sample.matrix[channel_out, channel_in]) ** 2))
        for sample in smatrix_grid(open_system, energies)
    ]
