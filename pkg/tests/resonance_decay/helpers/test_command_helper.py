import math
from unittest.mock import patch

import pytest

from resonance_decay.exceptions import ScenarioError, Underflow, WindowEmpty
from resonance_decay.helpers.command_helper import (
    COMMANDS,
    handle_decay,
    handle_ep_locate,
    handle_oracle_compare,
    handle_rates,
    handle_smatrix,
    handle_spectrum,
    handle_sweep,
    handle_trap,
)
from resonance_decay.models.scenario import Scenario


@pytest.fixture
def fixture_scenario():
    w = 1 / math.sqrt(math.pi)

    def _build(**overrides) -> Scenario:
        data = {
            "levels": [1.0, -1.0],
            "channels": [{"kind": "wideband", "density_of_states": 1.0}],
            "coupling": [[w], [w]],
            "alpha": math.sqrt(0.5),
            "excitation": {"kind": "scattering", "channel": 0},
        }
        data.update(overrides)
        return Scenario.model_validate(data)

    return _build


class TestHandlers:
    def test_registered_commands(self):
        assert set(COMMANDS) == {
            "spectrum",
            "fixedpoint",
            "sweep",
            "ep-locate",
            "smatrix",
            "decay",
            "rates",
            "trap",
            "oracle-compare",
        }

    def test_spectrum(self, fixture_scenario):
        result = handle_spectrum(fixture_scenario())
        assert [r["index"] for r in result["rows"]] == [0, 1]
        assert [r["gamma"] for r in result["rows"]] == pytest.approx([1.0, 1.0])
        assert result["summary"]["antisymmetry_residual"] <= 1e-12

    @pytest.mark.parametrize("handler", [handle_sweep, handle_smatrix, handle_decay, handle_trap])
    def test_missing_grid(self, fixture_scenario, handler):
        with pytest.raises(ScenarioError, match="grid"):
            handler(fixture_scenario())

    def test_missing_excitation(self, fixture_scenario):
        scenario = fixture_scenario(excitation=None, time_grid={"min": 0, "max": 1, "count": 3})
        with pytest.raises(ScenarioError, match="excitation"):
            handle_decay(scenario)

    def test_missing_search_box(self, fixture_scenario):
        with pytest.raises(ScenarioError, match="exceptional_point"):
            handle_ep_locate(fixture_scenario())

    def test_smatrix_rows(self, fixture_scenario):
        scenario = fixture_scenario(energy_grid={"min": -1, "max": 1, "count": 3})
        rows = handle_smatrix(scenario)["rows"]
        assert len(rows) == 3
        assert all(r["unitarity_residual"] <= 1e-12 for r in rows)


class TestHandleRates:
    def test_columns(self, fixture_scenario):
        scenario = fixture_scenario(time_grid={"min": 0, "max": 2, "count": 5})
        rows = handle_rates(scenario)["rows"]
        assert list(rows[0]) == ["t", "k_gr", "k_0", "k_1"]
        assert [r["t"] for r in rows] == pytest.approx([0.0, 0.5, 1.0, 1.5, 2.0])

    def test_underflowed_cells_are_nan(self, fixture_scenario, caplog):
        scenario = fixture_scenario(time_grid={"min": 0, "max": 1, "count": 2})
        with patch(
            "resonance_decay.helpers.command_helper.individual_rate_from_terms",
            side_effect=Underflow("norm below limit"),
        ):
            rows = handle_rates(scenario)["rows"]
        assert all(math.isnan(r["k_0"]) and math.isnan(r["k_1"]) for r in rows)
        assert all(r["k_gr"] == pytest.approx(1.0) for r in rows)
        assert "norm below limit" in caplog.text


    def test_rows_end_at_underflow(self, fixture_scenario):
        scenario = fixture_scenario(time_grid={"min": 0, "max": 1000, "count": 3})
        result = handle_rates(scenario)
        assert [r["t"] for r in result["rows"]] == [0.0, 500.0]
        assert result["summary"]["truncated"] is True


class TestHandleDecay:
    def test_truncated_trace(self, fixture_scenario):
        scenario = fixture_scenario(time_grid={"min": 0, "max": 1000, "count": 3})
        result = handle_decay(scenario)
        assert len(result["rows"]) == 2
        assert result["summary"]["truncated"] is True

    def test_full_trace(self, fixture_scenario):
        scenario = fixture_scenario(time_grid={"min": 0, "max": 2, "count": 3})
        assert handle_decay(scenario)["summary"]["truncated"] is False

class TestHandleOracleCompare:
    def test_single_resonance(self):
        gamma = 0.2
        scenario = Scenario.model_validate(
            {
                "levels": [0.0],
                "channels": [
                    {"kind": "wideband", "density_of_states": 1.0, "window": [-10.0, 10.0]}
                ],
                "coupling": [[math.sqrt(gamma / (2 * math.pi))]],
                "oracle": {"bins": 800},
            }
        )
        row = handle_oracle_compare(scenario)["rows"][0]
        assert row["gamma_fixed_point"] == pytest.approx(gamma)
        assert row["relative_error"] <= 0.05
        assert row["horizon"] == pytest.approx(2 * math.pi / 0.025)

    def test_bound_state_has_no_window(self):
        scenario = Scenario.model_validate(
            {
                "levels": [0.0],
                "channels": [{"kind": "wideband", "density_of_states": 1.0, "window": [-1, 1]}],
                "coupling": [[0.3]],
                "alpha": 0.0,
            }
        )
        with pytest.raises(WindowEmpty):
            handle_oracle_compare(scenario)
