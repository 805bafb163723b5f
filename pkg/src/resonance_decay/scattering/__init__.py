from resonance_decay.scattering.smatrix import (
    channel_amplitudes,
    cross_section,
    resonance_amplitude,
    smatrix,
    smatrix_grid,
)

__all__ = [
    "channel_amplitudes",
    "cross_section",
    "resonance_amplitude",
    "smatrix",
    "smatrix_grid",
]
