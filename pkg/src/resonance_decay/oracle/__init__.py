from resonance_decay.oracle.full_space import (
    default_initial_state,
    discretize_full,
    evolve_full,
    extract_width,
    spectral_weights,
    survival_probability_full,
)
from resonance_decay.oracle.propagation import propagate_direct, propagate_spectral

__all__ = [
    "default_initial_state",
    "discretize_full",
    "evolve_full",
    "extract_width",
    "spectral_weights",
    "survival_probability_full",
    "propagate_direct",
    "propagate_spectral",
]
