import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from resonance_decay.config import settings
from resonance_decay.constants import BRANCH_OVERLAP_MIN
from resonance_decay.exceptions import EPDegenerate
from resonance_decay.hamiltonians.builder import effective_hamiltonian
from resonance_decay.models.resonance import ResonanceState, Trajectory
from resonance_decay.models.system import OpenSystem
from resonance_decay.spectra.eigen import eigendecompose, overlap_matrix, raw_eigenpairs

logger = logging.getLogger(__name__)


def sweep_eigenvalues(
    open_system: OpenSystem, energy: float, grid: Sequence[float] | np.ndarray
) -> Trajectory:
    """
    Eigenvalue trajectories of H_eff(energy) over a grid of coupling scales alpha.

    Grid points are decomposed concurrently, then aligned in grid order: state l at step n is
    the state of step n with the largest |phi_prev^T phi_new| among those not yet matched
    (greedy over descending overlap). A step whose weakest match falls below 0.5 is recorded
    in ``lost_steps``.

    A grid point at an exceptional point keeps the unnormalized eigenpairs of
    ``raw_eigenpairs``, is recorded in ``lost_steps`` and is skipped as a matching reference.
    """
    alphas = _validate_grid(grid)

    def decompose(alpha: float) -> tuple[list[ResonanceState], bool]:
        hamiltonian = effective_hamiltonian(open_system.with_alpha(alpha), energy)
        try:
            return eigendecompose(hamiltonian), False
        except EPDegenerate as e:
            logger.warning("Exceptional point at alpha = %.6g: %s", alpha, e)
            return raw_eigenpairs(hamiltonian), True

    with ThreadPoolExecutor(max_workers=settings.max_workers) as executor:
        steps = list(executor.map(decompose, alphas))

    aligned = [steps[0][0]]
    lost_steps = [0] if steps[0][1] else []
    reference = aligned[0]
    for n in range(1, len(steps)):
        states, degenerate = steps[n]
        ordered, weakest = align_states(reference, states)
        if degenerate:
            lost_steps.append(n)
        elif weakest < BRANCH_OVERLAP_MIN:
            logger.warning(
                "Branch matching ambiguous at alpha = %.6g (overlap %.3g)", alphas[n], weakest
            )
            lost_steps.append(n)
        if not degenerate:
            reference = ordered
        aligned.append(ordered)

    return Trajectory(parameters=[float(a) for a in alphas], states=aligned, lost_steps=lost_steps)


def align_states(
    previous: list[ResonanceState], current: list[ResonanceState]
) -> tuple[list[ResonanceState], float]:
    """Reorder ``current`` to continue ``previous``; also returns the weakest matched overlap."""
    if not previous:
        return current, 1.0
    reference = np.column_stack([s.phi for s in previous])
    overlaps = overlap_matrix(reference, current)

    assignment: dict[int, int] = {}
    taken: set[int] = set()
    weakest = np.inf
    for flat in np.argsort(-overlaps, axis=None, kind="stable"):
        i, j = np.unravel_index(flat, overlaps.shape)
        if i in assignment or j in taken:
            continue
        assignment[int(i)] = int(j)
        taken.add(int(j))
        weakest = min(weakest, float(overlaps[i, j]))
        if len(assignment) == len(previous):
            break
    return [current[assignment[i]] for i in range(len(previous))], weakest


def _validate_grid(grid: Sequence[float] | np.ndarray) -> np.ndarray:
    alphas = np.asarray(grid, dtype=float).reshape(-1)
    if alphas.size == 0:
        raise ValueError("Coupling grid is empty")
    if not np.all(np.isfinite(alphas)) or np.any(alphas < 0):
        raise ValueError("Coupling grid values must be finite and non-negative")
    if np.any(np.diff(alphas) <= 0):
        raise ValueError("Coupling grid must be strictly increasing")
    return alphas
