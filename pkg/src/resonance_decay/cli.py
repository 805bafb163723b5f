"""Command-line entry point: ``resonance-decay <command> --scenario PATH [options]``."""

import argparse
import json
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from resonance_decay.config import settings
from resonance_decay.exceptions import NumericalError, ScenarioError
from resonance_decay.helpers.command_helper import COMMANDS
from resonance_decay.models.scenario import Scenario
from resonance_decay.utils.general_util import publish_data, render_csv, render_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_SCENARIO = 2
EXIT_NUMERICAL = 3

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resonance-decay",
        description="Resonance states, S-matrices and decay rates of open quantum systems.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--scenario", required=True, help="Path of the JSON scenario file.")
        sub.add_argument("--format", choices=["csv", "json"], default="csv")
        sub.add_argument("--out", default=None, help="Output file (default: stdout).")
        sub.add_argument("--e-min", type=float, default=None)
        sub.add_argument("--e-max", type=float, default=None)
        sub.add_argument("--e-count", type=int, default=None)
        sub.add_argument("--t-max", type=float, default=None)
        sub.add_argument("--t-count", type=int, default=None)
        sub.add_argument("--alpha-min", type=float, default=None)
        sub.add_argument("--alpha-max", type=float, default=None)
        sub.add_argument("--alpha-count", type=int, default=None)
        sub.add_argument("--bins", type=int, default=None, help="Bins per channel for the oracle.")
    return parser


def _override_grid(data: dict, key: str, lo, hi, count) -> None:
    if lo is None and hi is None and count is None:
        return
    grid = dict(data.get(key) or {})
    for field, value in (("min", lo), ("max", hi), ("count", count)):
        if value is not None:
            grid[field] = value
    missing = {"min", "max", "count"} - grid.keys()
    if missing:
        raise ScenarioError(f"Grid {key} is incomplete, missing {sorted(missing)}")
    data[key] = grid


def load_with_overrides(args: argparse.Namespace) -> Scenario:
    """Read the scenario file and apply grid and bin flags before validation."""
    try:
        data = json.loads(Path(args.scenario).read_text())
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"Scenario file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ScenarioError("Scenario file must contain a JSON object")

    _override_grid(data, "energy_grid", args.e_min, args.e_max, args.e_count)
    t_min = 0.0 if args.t_max is not None or args.t_count is not None else None
    _override_grid(data, "time_grid", t_min, args.t_max, args.t_count)
    _override_grid(data, "alpha_grid", args.alpha_min, args.alpha_max, args.alpha_count)
    if args.bins is not None:
        data["oracle"] = {**(data.get("oracle") or {}), "bins": args.bins}
    return Scenario.model_validate(data)


def _configure_logging() -> None:
    package_logger = logging.getLogger("resonance_decay")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    package_logger.addHandler(handler)
    package_logger.setLevel(settings.log_level.upper())


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging()

    try:
        scenario = load_with_overrides(args)
        logger.info("Running %s on %s", args.command, args.scenario)
        result = COMMANDS[args.command](scenario)
        if args.format == "json":
            document = {
                "command": args.command,
                "scenario": scenario.fingerprint(),
                "summary": result["summary"],
                "rows": result["rows"],
            }
            text = render_json(document)
        else:
            text = render_csv(result["rows"])
        path = publish_data(text, args.out)
        logger.info("Wrote %d rows to %s", len(result["rows"]), path)
    except (ScenarioError, ValidationError, ValueError, OSError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_SCENARIO
    except NumericalError as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
