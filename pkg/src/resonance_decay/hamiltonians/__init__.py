from resonance_decay.hamiltonians.builder import (
    build_discrete_hamiltonian,
    build_effective_hamiltonian,
    channel_self_energy,
    effective_hamiltonian,
    validate_dimensions,
)

__all__ = [
    "build_discrete_hamiltonian",
    "build_effective_hamiltonian",
    "channel_self_energy",
    "effective_hamiltonian",
    "validate_dimensions",
]
