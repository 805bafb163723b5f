import logging

import numpy as np

from resonance_decay.dynamics.decay import (
    decay_trace,
    group_rate_from_coefficients,
    individual_rate_from_terms,
    individual_terms,
)
from resonance_decay.dynamics.excitation import excitation_coefficients
from resonance_decay.dynamics.trapping import trapping_analysis
from resonance_decay.exceptions import ScenarioError, Underflow, WindowEmpty
from resonance_decay.hamiltonians.builder import effective_hamiltonian
from resonance_decay.models.dynamics import Excitation
from resonance_decay.models.scenario import GridSpec, Scenario
from resonance_decay.oracle.full_space import (
    default_initial_state,
    discretize_full,
    extract_width,
    survival_probability_full,
)
from resonance_decay.scattering.smatrix import smatrix_grid
from resonance_decay.spectra.eigen import eigendecompose, phase_rigidity_report
from resonance_decay.spectra.exceptional_point import locate_exceptional_point
from resonance_decay.spectra.fixed_point import solve_fixed_point
from resonance_decay.spectra.trajectory import sweep_eigenvalues

logger = logging.getLogger(__name__)


def _require_grid(grid: GridSpec | None, name: str) -> np.ndarray:
    if grid is None:
        raise ScenarioError(f"Scenario has no {name}; add it to the file or pass the grid flags")
    return grid.values()


def _require_excitation(scenario: Scenario) -> Excitation:
    excitation = scenario.to_excitation()
    if excitation is None:
        raise ScenarioError("Scenario has no excitation")
    return excitation


def handle_spectrum(scenario: Scenario) -> dict:
    open_system = scenario.to_open_system()
    states = eigendecompose(effective_hamiltonian(open_system, scenario.probe_energy))
    report = phase_rigidity_report(states)
    rows = [{"index": index, **state.to_dict()} for index, state in enumerate(states)]
    return {
        "rows": rows,
        "summary": {
            "energy": scenario.probe_energy,
            "antisymmetry_residual": report.antisymmetry_residual,
        },
    }


def handle_fixedpoint(scenario: Scenario) -> dict:
    open_system = scenario.to_open_system()
    options = scenario.fixed_point
    energy = options.energy if options.energy is not None else scenario.probe_energy
    result = solve_fixed_point(open_system, energy, options.tracker)
    return {"rows": [result.to_dict()], "summary": {"start_energy": energy}}


def handle_sweep(scenario: Scenario) -> dict:
    open_system = scenario.to_open_system()
    grid = _require_grid(scenario.alpha_grid, "alpha_grid")
    trajectory = sweep_eigenvalues(open_system, scenario.probe_energy, grid)
    return {"rows": trajectory.to_rows(), "summary": {"lost_steps": trajectory.lost_steps}}


def handle_ep_locate(scenario: Scenario) -> dict:
    if scenario.exceptional_point is None:
        raise ScenarioError("Scenario has no exceptional_point search box")
    open_system = scenario.to_open_system()
    search = scenario.exceptional_point
    point = locate_exceptional_point(
        open_system, search.axes, scenario.probe_energy, grid_points=search.grid_points
    )
    return {"rows": [point.to_dict()], "summary": {}}


def handle_smatrix(scenario: Scenario) -> dict:
    open_system = scenario.to_open_system()
    energies = _require_grid(scenario.energy_grid, "energy_grid")
    rows = []
    for sample in smatrix_grid(open_system, energies):
        rows.extend(sample.to_rows())
    return {"rows": rows, "summary": {"channels": len(open_system.channels)}}


def handle_decay(scenario: Scenario) -> dict:
    open_system = scenario.to_open_system()
    times = _require_grid(scenario.time_grid, "time_grid")
    trace = decay_trace(open_system, scenario.probe_energy, _require_excitation(scenario), times)
    summary = {"energy": trace.energy, "truncated": trace.truncated}
    return {"rows": trace.to_rows(), "summary": summary}


def handle_rates(scenario: Scenario) -> dict:
    """
    k_gr(t) and every k_l(t); individual cells whose norm underflows are written as nan.

    Rows end at the first time whose population underflows, as in ``decay_trace``.
    """
    open_system = scenario.to_open_system()
    times = _require_grid(scenario.time_grid, "time_grid")
    coefficients = excitation_coefficients(
        open_system, scenario.probe_energy, _require_excitation(scenario)
    )
    overlaps = phase_rigidity_report(coefficients.states).overlaps
    hbar = open_system.hbar

    rows = []
    truncated = False
    for t in times:
        try:
            row = {"t": float(t), "k_gr": group_rate_from_coefficients(coefficients, t, hbar)}
        except Underflow as exc:
            logger.warning("Rates truncated: %s", exc)
            truncated = True
            break
        for index in range(len(coefficients.states)):
            norm, derivative = individual_terms(coefficients, overlaps, index, t, hbar)
            try:
                row[f"k_{index}"] = individual_rate_from_terms(norm, derivative, t)
            except Underflow as exc:
                logger.warning("State %d: %s", index, exc)
                row[f"k_{index}"] = float("nan")
        rows.append(row)
    return {"rows": rows, "summary": {"energy": scenario.probe_energy, "truncated": truncated}}


def handle_trap(scenario: Scenario) -> dict:
    open_system = scenario.to_open_system()
    grid = _require_grid(scenario.alpha_grid, "alpha_grid")
    report = trapping_analysis(open_system, grid, scenario.probe_energy)
    return {
        "rows": report.to_rows(),
        "summary": {
            "broad_count": report.broad_count,
            "saturation_onset": report.saturation_onset,
            "lost_steps": report.lost_steps,
        },
    }


def handle_oracle_compare(scenario: Scenario) -> dict:
    """Fixed-point width of the tracked resonance against the width fitted to P_full(t)."""
    open_system = scenario.to_open_system()
    options = scenario.oracle
    start = (
        scenario.fixed_point.energy
        if scenario.fixed_point.energy is not None
        else scenario.probe_energy
    )
    fixed_point = solve_fixed_point(open_system, start, options.tracker)
    gamma = fixed_point.gamma_star

    if options.fit_window is not None:
        window = options.fit_window
    elif gamma > 0:
        lifetime = open_system.hbar / gamma
        window = (0.2 * lifetime, 2.0 * lifetime)
    else:
        raise WindowEmpty("Tracked state has zero width, so no default fit window exists")

    model = discretize_full(open_system, options.bins)
    states = eigendecompose(effective_hamiltonian(open_system, fixed_point.e_star))
    psi0 = default_initial_state(states, options.tracker)
    count = scenario.time_grid.count if scenario.time_grid is not None else 1001
    times = np.linspace(0.0, min(model.horizon, window[1]), count)
    curve = survival_probability_full(model, psi0, times)
    fit = extract_width(curve, window, open_system.hbar)

    relative_error = abs(fit.gamma - gamma) / gamma if gamma > 0 else float("inf")
    row = {
        "e_star": fixed_point.e_star,
        "gamma_fixed_point": gamma,
        "gamma_fit": fit.gamma,
        "relative_error": relative_error,
        "fit_residual": fit.residual,
        "fit_points": fit.points,
        "bins": options.bins,
        "horizon": model.horizon,
    }
    return {"rows": [row], "summary": {"window": list(window)}}


COMMANDS = {
    "spectrum": handle_spectrum,
    "fixedpoint": handle_fixedpoint,
    "sweep": handle_sweep,
    "ep-locate": handle_ep_locate,
    "smatrix": handle_smatrix,
    "decay": handle_decay,
    "rates": handle_rates,
    "trap": handle_trap,
    "oracle-compare": handle_oracle_compare,
}
