from resonance_decay.dynamics.decay import (
    decay_rate_group,
    decay_rate_individual,
    decay_trace,
    individual_norm,
    population_probability,
)
from resonance_decay.dynamics.excitation import excitation_coefficients, validate_excitation
from resonance_decay.dynamics.trapping import open_channels, trapping_analysis

__all__ = [
    "decay_rate_group",
    "decay_rate_individual",
    "decay_trace",
    "individual_norm",
    "population_probability",
    "excitation_coefficients",
    "validate_excitation",
    "open_channels",
    "trapping_analysis",
]
