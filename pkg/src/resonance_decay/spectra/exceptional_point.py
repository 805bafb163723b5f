import itertools
import logging
import math
from collections.abc import Sequence

import numpy as np
import scipy.linalg
import scipy.optimize

from resonance_decay.config import settings
from resonance_decay.constants import EP_RESIDUAL_RTOL
from resonance_decay.exceptions import NotFound
from resonance_decay.hamiltonians.builder import effective_hamiltonian
from resonance_decay.models.resonance import ExceptionalPoint
from resonance_decay.models.scenario import AxisSpec
from resonance_decay.models.system import DiscreteSystem, OpenSystem

logger = logging.getLogger(__name__)


def apply_axes(
    open_system: OpenSystem, axes: Sequence[AxisSpec], values: Sequence[float]
) -> OpenSystem:
    """Return a copy of ``open_system`` with each axis parameter set to its value."""
    result = open_system
    for axis, value in zip(axes, values):
        if axis.kind == "alpha":
            result = result.with_alpha(value)
        elif axis.kind == "alpha_sq":
            result = result.with_alpha(math.sqrt(max(value, 0.0)))
        elif axis.kind == "level":
            levels = result.system.levels.copy()
            levels[axis.index[0]] = value
            result = result.with_system(
                DiscreteSystem(levels=levels, internal_coupling=result.system.internal_coupling)
            )
        else:
            i, j = axis.index
            internal = result.system.internal_coupling.copy()
            internal[i, j] = internal[j, i] = value
            result = result.with_system(
                DiscreteSystem(levels=result.system.levels, internal_coupling=internal)
            )
    return result


def minimal_gap(open_system: OpenSystem, energy: float) -> tuple[float, complex]:
    """min |z_l - z_m|^2 over pairs, and the midpoint of the closest pair."""
    z = scipy.linalg.eigvals(effective_hamiltonian(open_system, energy).matrix)
    distances = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(distances, np.inf)
    i, j = np.unravel_index(int(np.argmin(distances)), distances.shape)
    return float(distances[i, j] ** 2), complex((z[i] + z[j]) / 2)


def locate_exceptional_point(
    open_system: OpenSystem,
    axes: Sequence[AxisSpec],
    energy: float,
    grid_points: int | None = None,
) -> ExceptionalPoint:
    """
    Find the parameters inside the axes box where two eigenvalues of H_eff coalesce.

    The minimal squared eigenvalue gap is scanned on a regular grid and the best grid point is
    refined with a bounded Nelder-Mead simplex. Success means
    sqrt(gap) <= 1e-6 * max(1, ||H_eff||).

    Raises:
        NotFound: if the refined residual is above the threshold; the best candidate is attached.
    """
    points = grid_points or settings.ep_grid_points
    if open_system.size < 2:
        raise ValueError("An exceptional point needs at least two states")
    if not axes:
        raise ValueError("At least one parameter axis is required")
    for axis in axes:
        _check_axis(open_system, axis)

    def gap(values: Sequence[float]) -> float:
        return minimal_gap(apply_axes(open_system, axes, values), energy)[0]

    grids = [np.linspace(axis.min, axis.max, points) for axis in axes]
    best_values = np.array([grid[0] for grid in grids])
    best_gap = np.inf
    for values in itertools.product(*grids):
        value = gap(values)
        if value < best_gap:
            best_gap, best_values = value, np.array(values)
    logger.debug("Grid scan minimum gap^2 %.3g at %s", best_gap, best_values)

    free = [k for k, axis in enumerate(axes) if axis.max > axis.min]
    if free and best_gap > 0:

        def objective(y: np.ndarray) -> float:
            values = best_values.copy()
            values[free] = y
            return gap(values)

        refined = scipy.optimize.minimize(
            objective,
            x0=best_values[free],
            method="Nelder-Mead",
            bounds=[(axes[k].min, axes[k].max) for k in free],
            options={"xatol": 1e-14, "fatol": 1e-32, "maxiter": 1000 * len(free)},
        )
        if refined.fun < best_gap:
            best_gap = float(refined.fun)
            lower = [axes[k].min for k in free]
            upper = [axes[k].max for k in free]
            best_values[free] = np.clip(refined.x, lower, upper)
        logger.debug("Simplex refinement: gap^2 %.3g after %d steps", refined.fun, refined.nfev)

    candidate_system = apply_axes(open_system, axes, best_values)
    best_gap, z_ep = minimal_gap(candidate_system, energy)
    hamiltonian = effective_hamiltonian(candidate_system, energy)
    residual = math.sqrt(best_gap)
    scale = max(1.0, hamiltonian.scale)

    _, vectors = scipy.linalg.eig(hamiltonian.matrix)
    self_orthogonality = float(
        np.min(
            np.abs(np.einsum("ij,ij->j", vectors, vectors))
            / np.einsum("ij,ij->j", vectors.conj(), vectors).real
        )
    )

    result = ExceptionalPoint(
        parameters={axis.label: float(v) for axis, v in zip(axes, best_values)},
        z=z_ep,
        residual=residual,
        self_orthogonality=self_orthogonality,
        converged=residual <= EP_RESIDUAL_RTOL * scale,
    )
    if not result.converged:
        raise NotFound(
            f"No exceptional point in the box: smallest eigenvalue gap {residual:.3g} "
            f"at {result.parameters}",
            candidate=result,
        )
    return result


def _check_axis(open_system: OpenSystem, axis: AxisSpec) -> None:
    n = open_system.size
    if any(not 0 <= i < n for i in axis.index):
        raise ValueError(f"Axis {axis.label!r} index {axis.index} out of range for {n} levels")
    if axis.kind == "internal" and axis.index[0] == axis.index[1]:
        raise ValueError(f"Axis {axis.label!r} must address an off-diagonal coupling")
    if axis.kind == "alpha" and axis.min < 0:
        raise ValueError(f"Axis {axis.label!r}: alpha must be non-negative")
