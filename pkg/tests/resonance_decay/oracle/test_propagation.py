import math

import numpy as np
import pytest

from resonance_decay.exceptions import StepTooLarge
from resonance_decay.hamiltonians.builder import effective_hamiltonian
from resonance_decay.models.hamiltonian import EffectiveHamiltonian
from resonance_decay.oracle.propagation import propagate_direct, propagate_spectral
from resonance_decay.spectra.eigen import eigendecompose


class TestPropagateDirect:
    def test_single_resonance(self):
        hamiltonian = EffectiveHamiltonian(energy=0.0, matrix=np.array([[-1j]]))
        psi = propagate_direct(hamiltonian, [1.0], [0.0, 1.0])
        assert psi.shape == (2, 1)
        assert psi[0, 0] == 1.0
        assert abs(psi[1, 0]) ** 2 == pytest.approx(math.exp(-2), rel=1e-9)

    def test_agrees_with_spectral_expansion(self, random_wideband, rng):
        for _ in range(5):
            open_system = random_wideband(rng, 4, 2)
            hamiltonian = effective_hamiltonian(open_system, 0.0)
            psi0 = rng.normal(size=4) + 1j * rng.normal(size=4)
            psi0 /= np.linalg.norm(psi0)
            times = [0.0, 0.5, 1.0, 2.0]
            direct = propagate_direct(hamiltonian, psi0, times)
            spectral = propagate_spectral(eigendecompose(hamiltonian), psi0, times)
            assert np.abs(direct - spectral).max() <= 1e-8

    def test_exceptional_point_polynomial_prefactor(self, two_level):
        # H_eff = -i I + N with N^2 = 0, so exp(-i H t) = exp(-t) (I - i t N).
        hamiltonian = effective_hamiltonian(two_level(1.0), 0.0)
        times = [0.5, 1.0, 2.0]
        psi = propagate_direct(hamiltonian, [1.0, 0.0], times)
        for row, t in zip(psi, times):
            expected = math.exp(-t) * np.array([1 - 1j * t, -t])
            assert np.abs(row - expected).max() <= 1e-8

    def test_explicit_step_bound(self):
        hamiltonian = EffectiveHamiltonian(energy=0.0, matrix=np.array([[-1j]]))
        with pytest.raises(StepTooLarge):
            propagate_direct(hamiltonian, [1.0], [1.0], step=1.0)
        psi = propagate_direct(hamiltonian, [1.0], [1.0], step=0.005)
        assert abs(psi[0, 0]) ** 2 == pytest.approx(math.exp(-2), rel=1e-9)

    def test_hbar(self):
        hamiltonian = EffectiveHamiltonian(energy=0.0, matrix=np.array([[-1j]]))
        psi = propagate_direct(hamiltonian, [1.0], [2.0], hbar=2.0)
        assert abs(psi[0, 0]) ** 2 == pytest.approx(math.exp(-2), rel=1e-9)

    def test_initial_state_shape(self):
        hamiltonian = EffectiveHamiltonian(energy=0.0, matrix=np.array([[-1j]]))
        with pytest.raises(ValueError, match="shape"):
            propagate_direct(hamiltonian, [1.0, 0.0], [1.0])

    @pytest.mark.parametrize("times", [[-1.0], [1.0, 0.5], [math.inf]])
    def test_invalid_times(self, times):
        hamiltonian = EffectiveHamiltonian(energy=0.0, matrix=np.array([[-1j]]))
        with pytest.raises(ValueError):
            propagate_direct(hamiltonian, [1.0], times)
