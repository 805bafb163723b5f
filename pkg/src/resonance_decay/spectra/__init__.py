from resonance_decay.spectra.eigen import eigendecompose, phase_rigidity_report
from resonance_decay.spectra.exceptional_point import locate_exceptional_point
from resonance_decay.spectra.fixed_point import solve_fixed_point
from resonance_decay.spectra.trajectory import sweep_eigenvalues

__all__ = [
    "eigendecompose",
    "phase_rigidity_report",
    "locate_exceptional_point",
    "solve_fixed_point",
    "sweep_eigenvalues",
]
