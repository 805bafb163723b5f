import logging
from collections.abc import Sequence

import numpy as np

from resonance_decay.exceptions import NoTrappingPartition
from resonance_decay.models.channel import Channel
from resonance_decay.models.dynamics import TrappingReport
from resonance_decay.models.system import OpenSystem
from resonance_decay.spectra.trajectory import sweep_eigenvalues

logger = logging.getLogger(__name__)


def open_channels(channels: Sequence[Channel], energy: float) -> int:
    """Number of channels with non-zero density at ``energy``."""
    return sum(1 for channel in channels if channel.is_open(energy))


def trapping_analysis(
    open_system: OpenSystem, grid: Sequence[float] | np.ndarray, energy: float
) -> TrappingReport:
    """
    Width bifurcation along a coupling sweep.

    At every alpha the widths are ranked: the K largest (K = open channels at ``energy``) form
    the broad set, the remaining N - K are trapped. The saturation onset is the first alpha at
    which the mean trapped width decreases.

    Raises:
        NoTrappingPartition: if K >= N.
    """
    broad_count = open_channels(open_system.channels, energy)
    if broad_count >= open_system.size:
        raise NoTrappingPartition(
            f"{broad_count} open channels for {open_system.size} states: no trapped set"
        )

    trajectory = sweep_eigenvalues(open_system, energy, grid)
    widths = -np.sort(-trajectory.widths, axis=1)
    gamma_av = widths[:, broad_count:].mean(axis=1)
    k_av = gamma_av / open_system.hbar

    onset = None
    decreasing = np.flatnonzero(np.diff(gamma_av) < 0)
    if decreasing.size:
        onset = trajectory.parameters[int(decreasing[0]) + 1]
        logger.info("Trapped widths start to shrink at alpha = %.6g", onset)

    return TrappingReport(
        alphas=trajectory.parameters,
        widths=widths,
        broad_count=broad_count,
        gamma_av=gamma_av,
        k_av=k_av,
        saturation_onset=onset,
        hbar=open_system.hbar,
        lost_steps=trajectory.lost_steps,
    )
