import math

import numpy as np
import pytest

from resonance_decay.hamiltonians.builder import build_discrete_hamiltonian
from resonance_decay.models.channel import ChainChannel, WidebandChannel
from resonance_decay.models.system import CouplingMatrix, OpenSystem

# Two levels at +1 and -1 sharing one wideband channel (rho = 1) through W = (1, 1)^T / sqrt(pi).
# With alpha = sqrt(x): H_eff = [[1 - ix, u - ix], [u - ix, -1 - ix]],
# so z = -ix +- sqrt(1 + (u - ix)^2).
FIXTURE_COUPLING = 1 / math.sqrt(math.pi)


def make_two_level(x: float, u: float = 0.0, window=None) -> OpenSystem:
    return OpenSystem(
        system=build_discrete_hamiltonian([1.0, -1.0], [[0.0, u], [u, 0.0]]),
        coupling=CouplingMatrix(
            matrix=np.array([[FIXTURE_COUPLING], [FIXTURE_COUPLING]]), alpha=math.sqrt(x)
        ),
        channels=[WidebandChannel(density_of_states=1.0, window=window)],
    )


def make_single_level(gamma: float = 1.0, level: float = 0.0, hbar: float = 1.0) -> OpenSystem:
    """One level in one wideband channel with width Gamma = 2 pi rho w^2."""
    return OpenSystem(
        system=build_discrete_hamiltonian([level], [[0.0]]),
        coupling=CouplingMatrix(matrix=np.array([[math.sqrt(gamma / (2 * math.pi))]])),
        channels=[WidebandChannel(density_of_states=1.0)],
        hbar=hbar,
    )


def make_chain_level(level: float = 0.0, w: float = 0.1, hopping: float = 1.0) -> OpenSystem:
    return OpenSystem(
        system=build_discrete_hamiltonian([level], [[0.0]]),
        coupling=CouplingMatrix(matrix=np.array([[w]])),
        channels=[ChainChannel(hopping=hopping)],
    )


def make_random_wideband(rng: np.random.Generator, levels: int, channels: int) -> OpenSystem:
    u = rng.normal(scale=0.3, size=(levels, levels))
    u = (u + u.T) / 2
    np.fill_diagonal(u, 0.0)
    return OpenSystem(
        system=build_discrete_hamiltonian(rng.uniform(-1, 1, size=levels), u),
        coupling=CouplingMatrix(matrix=rng.normal(scale=0.5, size=(levels, channels))),
        channels=[
            WidebandChannel(density_of_states=float(rho))
            for rho in rng.uniform(0.5, 1.5, size=channels)
        ],
    )


@pytest.fixture
def two_level():
    return make_two_level


@pytest.fixture
def single_level():
    return make_single_level


@pytest.fixture
def chain_level():
    return make_chain_level


@pytest.fixture
def random_wideband():
    return make_random_wideband


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
