import logging
import math

import numpy as np

from resonance_decay.config import settings
from resonance_decay.constants import BRANCH_OVERLAP_MIN, FIXED_POINT_RTOL
from resonance_decay.exceptions import BranchLost, NotConverged
from resonance_decay.hamiltonians.builder import effective_hamiltonian
from resonance_decay.models.resonance import FixedPointResult, ResonanceState
from resonance_decay.models.system import OpenSystem
from resonance_decay.spectra.eigen import eigendecompose, overlap_matrix

logger = logging.getLogger(__name__)


def solve_fixed_point(
    open_system: OpenSystem,
    energy: float,
    tracker: int | np.ndarray = 0,
    damping: float | None = None,
    max_iterations: int | None = None,
) -> FixedPointResult:
    """
    Solve E = Re z_l(E) for the branch selected by ``tracker``.

    ``tracker`` is either the index of a state of H_eff(energy) (states sorted by Re z) or a
    reference vector; the branch is re-identified at every step by maximal |phi_ref^T phi|.
    The iteration is damped, E <- (1 - beta) E + beta Re z_l(E).

    Scenarios without energy-dependent channels return after a single decomposition.

    Raises:
        ValueError: if ``energy`` is not finite or lies outside a chain band.
        BranchLost: if the best overlap with the tracked branch drops below 0.5.
        NotConverged: after ``max_iterations`` or when the iterate leaves every chain band.
            The best iterate is attached as ``result``.
    """
    beta = settings.fixed_point_damping if damping is None else damping
    limit = settings.fixed_point_max_iterations if max_iterations is None else max_iterations
    if not math.isfinite(energy):
        raise ValueError(f"Starting energy must be finite, got {energy}")

    bands = [c.band() for c in open_system.channels if c.energy_dependent]
    for band in bands:
        if band is not None and not band[0] < energy < band[1]:
            raise ValueError(f"Starting energy {energy} lies outside the channel band {band}")

    states = eigendecompose(effective_hamiltonian(open_system, energy))
    if isinstance(tracker, (int, np.integer)):
        if not 0 <= tracker < len(states):
            raise ValueError(f"Tracker index {tracker} out of range for {len(states)} states")
        reference = states[tracker].phi
    else:
        reference = np.asarray(tracker, dtype=complex)
        if reference.shape != (open_system.size,):
            raise ValueError(f"Tracker vector has shape {reference.shape}")
        reference = reference / np.linalg.norm(reference)

    if not bands:
        state = _follow(reference, states)
        return FixedPointResult(
            e_star=state.energy, gamma_star=state.width, iterations=1, converged=True
        )

    best: FixedPointResult | None = None
    for iteration in range(1, limit + 1):
        if iteration > 1:
            states = eigendecompose(effective_hamiltonian(open_system, energy))
        state = _follow(reference, states)
        reference = state.phi
        step = state.energy - energy
        logger.debug("Fixed point step %d: E = %.15g, Re z - E = %.3g", iteration, energy, step)

        best = FixedPointResult(
            e_star=energy, gamma_star=state.width, iterations=iteration, converged=False
        )
        if abs(step) <= FIXED_POINT_RTOL * max(1.0, abs(energy)):
            best.converged = True
            return best

        energy = energy + beta * step
        if not any(band is None or band[0] < energy < band[1] for band in bands):
            raise NotConverged(
                f"Iterate E = {energy:.12g} left every channel band: bound state, not a resonance",
                result=best,
            )

    raise NotConverged(f"No fixed point after {limit} iterations", result=best)


def _follow(reference: np.ndarray, states: list[ResonanceState]) -> ResonanceState:
    overlaps = overlap_matrix(reference, states)[0]
    j = int(np.argmax(overlaps))
    if overlaps[j] < BRANCH_OVERLAP_MIN:
        raise BranchLost(
            f"Tracked branch lost: best eigenvector overlap {overlaps[j]:.3g}",
            overlap=float(overlaps[j]),
        )
    return states[j]
