import csv
import json
import math

import pytest

from resonance_decay.cli import EXIT_NUMERICAL, EXIT_OK, EXIT_SCENARIO, build_parser, main


def _fixture_data(x: float) -> dict:
    w = 1 / math.sqrt(math.pi)
    return {
        "levels": [1.0, -1.0],
        "internal_coupling": [[0.0, 0.0], [0.0, 0.0]],
        "channels": [{"kind": "wideband", "density_of_states": 1.0}],
        "coupling": [[w], [w]],
        "alpha": math.sqrt(x),
        "excitation": {"kind": "scattering", "channel": 0},
    }


@pytest.fixture
def write_scenario(tmp_path):
    def _write(data: dict, name: str = "scenario.json") -> str:
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return _write


def _read_csv(path) -> list[dict]:
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


class TestParser:
    def test_defaults(self):
        args = build_parser().parse_args(["spectrum", "--scenario", "s.json"])
        assert args.command == "spectrum"
        assert args.format == "csv"
        assert args.out is None
        assert args.bins is None

    def test_scenario_is_required(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["spectrum"])

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["fit", "--scenario", "s.json"])


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


class TestCommands:
    def test_spectrum_csv(self, write_scenario, tmp_path):
        out = tmp_path / "spectrum.csv"
        scenario = write_scenario(_fixture_data(0.5))
        code = main(["spectrum", "--scenario", scenario, "--out", str(out)])
        assert code == EXIT_OK
        rows = _read_csv(out)
        assert list(rows[0]) == ["index", "re_z", "im_z", "gamma", "a_norm", "rigidity"]
        assert [float(r["re_z"]) for r in rows] == pytest.approx([-0.8660254, 0.8660254], abs=1e-7)
        assert [float(r["gamma"]) for r in rows] == pytest.approx([1.0, 1.0], abs=1e-12)

    def test_spectrum_stdout(self, write_scenario, capsys):
        assert main(["spectrum", "--scenario", write_scenario(_fixture_data(0.5))]) == EXIT_OK
        assert capsys.readouterr().out.startswith("index,re_z,im_z")

    def test_ep_locate_json(self, write_scenario, tmp_path):
        data = _fixture_data(1.0)
        data["exceptional_point"] = {
            "axes": [
                {"label": "u", "kind": "internal", "index": [0, 1], "min": -1.0, "max": 1.0},
                {"label": "x", "kind": "alpha_sq", "min": 0.0, "max": 2.0},
            ]
        }
        out = tmp_path / "ep.json"
        code = main(
            ["ep-locate", "--scenario", write_scenario(data), "--format", "json", "--out", str(out)]
        )
        assert code == EXIT_OK
        document = json.loads(out.read_text())
        assert document["command"] == "ep-locate"
        assert isinstance(document["scenario"], str)
        row = document["rows"][0]
        assert row["x"] == pytest.approx(1.0, abs=1e-6)
        assert row["u"] == pytest.approx(0.0, abs=1e-6)
        assert row["im_z"] == pytest.approx(-1.0, abs=1e-6)
        assert row["converged"] is True

    def test_grid_flags(self, write_scenario, tmp_path):
        out = tmp_path / "s.csv"
        scenario = write_scenario(_fixture_data(0.5))
        flags = ["--e-min", "-1", "--e-max", "1", "--e-count", "3", "--out", str(out)]
        assert main(["smatrix", "--scenario", scenario, *flags]) == EXIT_OK
        assert [float(r["energy"]) for r in _read_csv(out)] == [-1.0, 0.0, 1.0]

    def test_time_flags_start_at_zero(self, write_scenario, tmp_path):
        out = tmp_path / "decay.csv"
        scenario = write_scenario(_fixture_data(0.5))
        flags = ["--t-max", "2", "--t-count", "3", "--out", str(out)]
        assert main(["decay", "--scenario", scenario, *flags]) == EXIT_OK
        rows = _read_csv(out)
        assert [float(r["t"]) for r in rows] == [0.0, 1.0, 2.0]
        assert float(rows[0]["population"]) > float(rows[-1]["population"])

    def test_deterministic_output(self, write_scenario, tmp_path):
        data = _fixture_data(1.0)
        data["alpha_grid"] = {"min": 0.15, "max": 1.45, "count": 14}
        scenario = write_scenario(data)
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", "--scenario", scenario, "--out", str(first)]) == EXIT_OK
        assert main(["sweep", "--scenario", scenario, "--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()


# ---------------------------------------------------------------------------
# Exit codes
# ---------------------------------------------------------------------------


class TestExitCodes:
    def test_asymmetric_coupling(self, write_scenario, capsys):
        data = _fixture_data(0.5)
        data["internal_coupling"] = [[0.0, 1.0], [0.5, 0.0]]
        assert main(["spectrum", "--scenario", write_scenario(data)]) == EXIT_SCENARIO
        assert "AsymmetryError" in capsys.readouterr().err

    def test_schema_violation(self, write_scenario):
        data = _fixture_data(0.5)
        data["temperature"] = 300
        assert main(["spectrum", "--scenario", write_scenario(data)]) == EXIT_SCENARIO

    def test_missing_file(self, tmp_path):
        assert main(["spectrum", "--scenario", str(tmp_path / "nope.json")]) == EXIT_SCENARIO

    def test_not_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("levels: [1, 2]")
        assert main(["spectrum", "--scenario", str(path)]) == EXIT_SCENARIO

    def test_numerical_failure_leaves_no_file(self, write_scenario, tmp_path, capsys):
        out = tmp_path / "ep.csv"
        scenario = write_scenario(_fixture_data(1.0))
        code = main(["spectrum", "--scenario", scenario, "--out", str(out)])
        assert code == EXIT_NUMERICAL
        assert not out.exists()
        assert "EPDegenerate" in capsys.readouterr().err

    def test_fixed_point_not_converged(self, write_scenario):
        data = {
            "levels": [2.5],
            "channels": [{"kind": "chain", "hopping": 1.0}],
            "coupling": [[0.1]],
            "fixed_point": {"energy": 1.5},
        }
        assert main(["fixedpoint", "--scenario", write_scenario(data)]) == EXIT_NUMERICAL
