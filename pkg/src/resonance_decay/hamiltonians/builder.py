import logging
import math
from collections.abc import Sequence

import numpy as np

from resonance_decay.constants import SYMMETRY_RTOL
from resonance_decay.exceptions import AsymmetryError, DimensionMismatch
from resonance_decay.models.channel import Channel
from resonance_decay.models.hamiltonian import EffectiveHamiltonian
from resonance_decay.models.system import CouplingMatrix, DiscreteSystem, OpenSystem

logger = logging.getLogger(__name__)


def build_discrete_hamiltonian(
    levels: Sequence[float] | np.ndarray, internal: Sequence[Sequence[float]] | np.ndarray
) -> DiscreteSystem:
    """
    Assemble the closed system H_B = diag(levels) + u.

    The internal coupling is symmetrized as (u + u^T) / 2 and its diagonal is zeroed, since
    diagonal energies live in ``levels``.

    Raises:
        DimensionMismatch: if ``internal`` is not N x N for N = len(levels).
        AsymmetryError: if max|u_ij - u_ji| exceeds 1e-12 * max|u|.
    """
    levels_arr = np.asarray(levels, dtype=float).reshape(-1)
    try:
        u = np.asarray(internal, dtype=float)
    except ValueError as exc:
        raise DimensionMismatch(f"Internal coupling is not a rectangular matrix: {exc}") from exc

    n = levels_arr.size
    if n < 1:
        raise DimensionMismatch("A discrete system needs at least one level")
    if u.shape != (n, n):
        raise DimensionMismatch(f"Internal coupling has shape {u.shape}, expected ({n}, {n})")
    if not (np.all(np.isfinite(levels_arr)) and np.all(np.isfinite(u))):
        raise ValueError("Levels and internal coupling must be finite")

    asymmetry = float(np.max(np.abs(u - u.T)))
    if asymmetry > SYMMETRY_RTOL * float(np.max(np.abs(u))):
        raise AsymmetryError(f"Internal coupling is not symmetric: max|u_ij - u_ji| = {asymmetry}")

    u = (u + u.T) / 2
    np.fill_diagonal(u, 0.0)
    return DiscreteSystem(levels=levels_arr, internal_coupling=u)


def channel_self_energy(channel: Channel, energy: float) -> complex:
    """Scalar self-energy g_c(E) of one channel, with Im g_c(E) <= 0."""
    if not math.isfinite(energy):
        raise ValueError(f"Energy must be finite, got {energy}")
    return channel.self_energy(energy)


def validate_dimensions(open_system: OpenSystem) -> None:
    """Check that W has one row per level and one column per channel."""
    _check_dimensions(open_system.system, open_system.coupling, open_system.channels)


def _check_dimensions(
    system: DiscreteSystem, coupling: CouplingMatrix, channels: Sequence[Channel]
) -> None:
    if coupling.matrix.ndim != 2:
        raise DimensionMismatch(f"Coupling must be a matrix, got {coupling.matrix.ndim} dims")
    rows, cols = coupling.shape
    if rows != system.size or cols != len(channels):
        raise DimensionMismatch(
            f"Coupling has shape ({rows}, {cols}), expected ({system.size}, {len(channels)})"
        )


def build_effective_hamiltonian(
    system: DiscreteSystem,
    coupling: CouplingMatrix,
    channels: Sequence[Channel],
    energy: float,
) -> EffectiveHamiltonian:
    """
    H_eff(E) = H_B + sum_c g_c(E) (alpha W)_c (alpha W)_c^T.

    Every channel term is a rank-one outer product, so the result is exactly complex symmetric
    and its anti-Hermitian part is negative semidefinite.
    """
    _check_dimensions(system, coupling, channels)
    matrix = system.hamiltonian.astype(complex)
    scaled = coupling.scaled
    for c, channel in enumerate(channels):
        column = scaled[:, c]
        matrix = matrix + channel_self_energy(channel, energy) * np.outer(column, column)
    return EffectiveHamiltonian(energy=energy, matrix=matrix)


def effective_hamiltonian(open_system: OpenSystem, energy: float) -> EffectiveHamiltonian:
    return build_effective_hamiltonian(
        open_system.system, open_system.coupling, open_system.channels, energy
    )
