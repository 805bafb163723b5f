import logging

import numpy as np

from resonance_decay.exceptions import AllZero, DimensionMismatch
from resonance_decay.hamiltonians.builder import effective_hamiltonian
from resonance_decay.models.dynamics import (
    Excitation,
    ExcitationCoefficients,
    ScatteringExcitation,
    SourceExcitation,
)
from resonance_decay.models.system import OpenSystem
from resonance_decay.spectra.eigen import eigendecompose

logger = logging.getLogger(__name__)


def validate_excitation(open_system: OpenSystem, excitation: Excitation) -> None:
    if isinstance(excitation, ScatteringExcitation):
        if not 0 <= excitation.channel < len(open_system.channels):
            raise DimensionMismatch(
                f"Excitation channel {excitation.channel} out of range for "
                f"{len(open_system.channels)} channels"
            )
    elif isinstance(excitation, SourceExcitation):
        if excitation.source.shape != (open_system.size,):
            raise DimensionMismatch(
                f"Source has shape {excitation.source.shape}, expected ({open_system.size},)"
            )
    else:
        raise TypeError(f"Unsupported excitation {type(excitation).__name__}")


def excitation_coefficients(
    open_system: OpenSystem, energy: float, excitation: Excitation
) -> ExcitationCoefficients:
    """
    Population amplitudes c_l0 = n_l / (E - z_l) and d_l = conj(c_l0) at energy E.

    The numerator is n_l = sqrt(rho_c(E)) ((alpha W)^T phi_l)_c for scattering through channel c
    and n_l = phi_l^T F for a source F (c-product, so F = phi_m excites state m only).

    Raises:
        AllZero: if no state receives a positive weight.
    """
    validate_excitation(open_system, excitation)
    states = eigendecompose(effective_hamiltonian(open_system, energy))
    phi = np.column_stack([s.phi for s in states])

    if isinstance(excitation, ScatteringExcitation):
        c = excitation.channel
        density = open_system.channels[c].density(energy)
        numerators = np.sqrt(density) * (phi.T @ open_system.coupling.scaled[:, c])
    else:
        numerators = phi.T @ excitation.source

    z = np.array([s.z for s in states])
    c0 = numerators / (energy - z)
    coefficients = ExcitationCoefficients(energy=energy, states=states, c0=c0, d=c0.conj())
    if not np.any(coefficients.weights > 0):
        raise AllZero(f"Excitation populates no resonance state at E = {energy:.12g}")
    return coefficients
