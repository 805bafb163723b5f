import math

import numpy as np
import pytest

from resonance_decay.dynamics.trapping import open_channels, trapping_analysis
from resonance_decay.exceptions import NoTrappingPartition
from resonance_decay.models.channel import ChainChannel, WidebandChannel


class TestOpenChannels:
    def test_counts_channels_with_density(self):
        channels = [WidebandChannel(density_of_states=1.0), ChainChannel(hopping=1.0)]
        assert open_channels(channels, 0.0) == 2
        assert open_channels(channels, 3.0) == 1


class TestTrappingAnalysis:
    def test_fixture_trapped_width(self, two_level):
        report = trapping_analysis(two_level(1.0), [math.sqrt(2.0)], 0.0)
        assert report.broad_count == 1
        assert report.gamma_av[0] == pytest.approx(2 * (2 - math.sqrt(3)), abs=1e-8)
        assert report.widths[0, 0] == pytest.approx(2 * (2 + math.sqrt(3)), abs=1e-8)

    def test_saturation_onset_after_exceptional_point(self, two_level):
        grid = np.sqrt(np.linspace(0.05, 2.95, 30))
        report = trapping_analysis(two_level(1.0), grid, 0.0)
        assert report.saturation_onset == pytest.approx(math.sqrt(1.05), rel=1e-9)
        assert report.k_av == pytest.approx(report.gamma_av)

    def test_no_onset_below_exceptional_point(self, two_level):
        report = trapping_analysis(two_level(1.0), np.sqrt(np.linspace(0.1, 0.9, 9)), 0.0)
        assert report.saturation_onset is None

    def test_sweep_through_exceptional_point(self, two_level):
        report = trapping_analysis(two_level(1.0), np.linspace(0.0, 2.0, 5), 0.0)
        assert 2 in report.lost_steps
        assert report.gamma_av[2] == pytest.approx(2.0, abs=1e-6)
        assert report.saturation_onset == 1.5

    def test_no_partition(self, single_level):
        with pytest.raises(NoTrappingPartition):
            trapping_analysis(single_level(), [0.5, 1.0], 0.0)

    def test_strong_coupling_regime(self, random_wideband, rng):
        report = trapping_analysis(random_wideband(rng, 6, 1), np.logspace(1, 2, 10), 0.0)
        assert np.all(report.broad_fraction >= 0.95)
        assert np.all(np.diff(report.gamma_av) < 0)
        assert np.all(np.diff(report.trapped_widths, axis=0) < 0)
        assert report.trapped_widths.shape == (10, 5)

    def test_rows(self, two_level):
        rows = trapping_analysis(two_level(1.0), [math.sqrt(2.0)], 0.0).to_rows()
        assert set(rows[0]) == {"alpha", "gamma_av", "k_av", "broad_fraction", "width_0", "width_1"}
        assert rows[0]["broad_fraction"] == pytest.approx((2 + math.sqrt(3)) / 4)
