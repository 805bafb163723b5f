import csv
import io
import json
import math
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from resonance_decay.constants import CSV_FLOAT_FORMAT


def format_value(value) -> str:
    """CSV cell text; floats carry 17 significant digits so they parse back bit-exact."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), CSV_FLOAT_FORMAT)
    if value is None:
        return ""
    return str(value)


def _json_default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    raise TypeError(f"Cannot serialize {type(value).__name__}")


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    if isinstance(value, dict):
        return {k: _json_safe(v) for k, v in value.items()}
    if isinstance(value, list):
        return [_json_safe(v) for v in value]
    return value


def render_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(rows[0].keys()))
    writer.writeheader()
    writer.writerows({k: format_value(v) for k, v in row.items()} for row in rows)
    return buffer.getvalue()


def render_json(document: dict) -> str:
    return json.dumps(_json_safe(document), indent=2, default=_json_default) + "\n"


def publish_data(text: str, local_path: str | None) -> str:
    """
    Write ``text`` to ``local_path`` (stdout when None). Returns the resolved path.

    Files are written to a temporary sibling first and renamed into place, so a failed run never
    leaves a partial file behind.
    """
    if local_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return "-"

    out = Path(local_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=out.parent, prefix=f".{out.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as f:
            f.write(text)
        os.replace(tmp_path, out)
    except BaseException:
        Path(tmp_path).unlink(missing_ok=True)
        raise
    return str(out.resolve())
