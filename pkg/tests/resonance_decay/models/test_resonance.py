import math

import numpy as np

from resonance_decay.models.dynamics import TrappingReport
from resonance_decay.models.resonance import ResonanceState, Trajectory


def _state(z: complex) -> ResonanceState:
    return ResonanceState(z=z, phi=np.array([1.0 + 0j]), a_norm=1.0, rigidity=1.0)


class TestResonanceState:
    def test_width_and_lifetime(self):
        state = _state(0.5 - 0.25j)
        assert state.energy == 0.5
        assert state.width == 0.5
        assert state.lifetime(hbar=2.0) == 4.0

    def test_bound_state_lives_forever(self):
        assert _state(1.0 + 0j).lifetime() == math.inf

    def test_to_dict(self):
        assert _state(1.0 - 0.5j).to_dict() == {
            "re_z": 1.0,
            "im_z": -0.5,
            "gamma": 1.0,
            "a_norm": 1.0,
            "rigidity": 1.0,
        }


class TestTrajectory:
    def test_rows_flag_lost_steps(self):
        trajectory = Trajectory(
            parameters=[0.0, 1.0],
            states=[[_state(0j)], [_state(-0.1j)]],
            lost_steps=[1],
        )
        rows = trajectory.to_rows()
        assert [row["lost"] for row in rows] == [0, 1]
        np.testing.assert_allclose(trajectory.widths[:, 0], [0.0, 0.2])


class TestTrappingReport:
    def test_derived_quantities(self):
        report = TrappingReport(
            alphas=[1.0, 2.0],
            widths=np.array([[3.0, 1.0], [9.0, 0.0]]),
            broad_count=1,
            gamma_av=np.array([1.0, 0.0]),
            k_av=np.array([1.0, 0.0]),
        )
        np.testing.assert_allclose(report.broad_fraction, [0.75, 1.0])
        assert report.tau_av[0] == 1.0
        assert report.tau_av[1] == math.inf
        assert report.to_rows()[0]["width_1"] == 1.0
