import logging
import math
from collections.abc import Sequence

import numpy as np

from resonance_decay.constants import RK4_STEP_FACTOR
from resonance_decay.exceptions import StepTooLarge
from resonance_decay.models.hamiltonian import EffectiveHamiltonian
from resonance_decay.models.resonance import ResonanceState

logger = logging.getLogger(__name__)


def _check_output_times(times: Sequence[float] | np.ndarray) -> np.ndarray:
    values = np.asarray(times, dtype=float).reshape(-1)
    if not np.all(np.isfinite(values)) or np.any(values < 0):
        raise ValueError("Output times must be finite and non-negative")
    if np.any(np.diff(values) < 0):
        raise ValueError("Output times must be non-decreasing")
    return values


def propagate_direct(
    hamiltonian: EffectiveHamiltonian,
    psi0: Sequence[complex] | np.ndarray,
    times: Sequence[float] | np.ndarray,
    hbar: float = 1.0,
    step: float | None = None,
) -> np.ndarray:
    """
    Integrate i hbar dpsi/dt = H_eff psi with classical fixed-step RK4.

    The step never exceeds 0.01 * hbar / ||H_eff||_2; intervals between output times are split
    into equal steps below that bound. Returns an array of shape (len(times), N).

    Raises:
        StepTooLarge: if an explicit ``step`` exceeds the stability bound.
    """
    values = _check_output_times(times)
    matrix = hamiltonian.matrix
    psi = np.asarray(psi0, dtype=complex).copy()
    if psi.shape != (hamiltonian.size,):
        raise ValueError(f"Initial state has shape {psi.shape}, expected ({hamiltonian.size},)")

    scale = hamiltonian.scale
    bound = RK4_STEP_FACTOR * hbar / scale if scale > 0 else math.inf
    if step is not None and step > bound:
        raise StepTooLarge(f"Step {step:.3g} exceeds the RK4 bound {bound:.3g}")
    max_step = step if step is not None else bound
    generator = -1j / hbar * matrix

    out = np.empty((len(values), hamiltonian.size), dtype=complex)
    current = 0.0
    for n, target in enumerate(values):
        span = target - current
        if span > 0:
            count = max(1, math.ceil(span / max_step)) if math.isfinite(max_step) else 1
            h = span / count
            for _ in range(count):
                k1 = generator @ psi
                k2 = generator @ (psi + 0.5 * h * k1)
                k3 = generator @ (psi + 0.5 * h * k2)
                k4 = generator @ (psi + h * k3)
                psi = psi + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            current = target
        out[n] = psi
    return out


def propagate_spectral(
    states: list[ResonanceState],
    psi0: Sequence[complex] | np.ndarray,
    times: Sequence[float] | np.ndarray,
    hbar: float = 1.0,
) -> np.ndarray:
    """psi(t) = sum_l exp(-i z_l t / hbar) phi_l (phi_l^T psi0); shape (len(times), N)."""
    values = _check_output_times(times)
    phi = np.column_stack([s.phi for s in states])
    z = np.array([s.z for s in states])
    projections = phi.T @ np.asarray(psi0, dtype=complex)
    phases = np.exp(-1j * np.outer(values, z) / hbar)
    return (phases * projections) @ phi.T
