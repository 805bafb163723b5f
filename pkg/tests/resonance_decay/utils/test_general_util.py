import csv
import io
import json
import math
from unittest.mock import patch

import numpy as np
import pytest

from resonance_decay.utils.general_util import (
    format_value,
    publish_data,
    render_csv,
    render_json,
)


class TestFormatValue:
    @pytest.mark.parametrize("value", [0.1, 1 / 3, -2.5e-300, 6.02214076e23, math.pi])
    def test_float_round_trip(self, value):
        assert float(format_value(value)) == value

    def test_numpy_float(self):
        assert float(format_value(np.float64(0.1))) == 0.1

    def test_bool_and_none(self):
        assert format_value(True) == "1"
        assert format_value(np.bool_(False)) == "0"
        assert format_value(None) == ""

    def test_int(self):
        assert format_value(7) == "7"


class TestRenderCsv:
    def test_header_and_rows(self):
        text = render_csv([{"t": 0.0, "p": 1.0}, {"t": 0.5, "p": 0.25}])
        rows = list(csv.DictReader(io.StringIO(text)))
        assert list(rows[0].keys()) == ["t", "p"]
        assert [float(r["p"]) for r in rows] == [1.0, 0.25]

    def test_empty(self):
        assert render_csv([]) == ""


class TestRenderJson:
    def test_non_finite_values(self):
        document = json.loads(render_json({"a": math.nan, "b": [math.inf, -math.inf]}))
        assert document == {"a": None, "b": ["inf", "-inf"]}

    def test_numpy_and_complex(self):
        document = json.loads(render_json({"v": np.arange(3), "z": 1 - 2j, "n": np.int64(4)}))
        assert document == {"v": [0, 1, 2], "z": {"re": 1.0, "im": -2.0}, "n": 4}


class TestPublishData:
    def test_stdout(self, capsys):
        assert publish_data("a,b\n", None) == "-"
        assert capsys.readouterr().out == "a,b\n"

    def test_writes_file(self, tmp_path):
        target = tmp_path / "nested" / "out.csv"
        path = publish_data("a,b\n1,2\n", str(target))
        assert path == str(target.resolve())
        assert target.read_text() == "a,b\n1,2\n"
        assert [p.name for p in target.parent.iterdir()] == ["out.csv"]

    def test_failed_rename_leaves_nothing(self, tmp_path):
        target = tmp_path / "out.csv"
        with patch("resonance_decay.utils.general_util.os.replace", side_effect=OSError("disk")):
            with pytest.raises(OSError):
                publish_data("a\n", str(target))
        assert list(tmp_path.iterdir()) == []
