"""Population probability and decay rates of an excited open system for t >= t0 = 0."""

import logging
import math
from collections.abc import Sequence

import numpy as np

from resonance_decay.constants import UNDERFLOW_THRESHOLD
from resonance_decay.dynamics.excitation import excitation_coefficients
from resonance_decay.exceptions import DomainError, Underflow
from resonance_decay.models.dynamics import DecayTrace, Excitation, ExcitationCoefficients
from resonance_decay.models.system import OpenSystem
from resonance_decay.spectra.eigen import phase_rigidity_report

logger = logging.getLogger(__name__)


def check_times(times: float | Sequence[float] | np.ndarray) -> np.ndarray:
    values = np.atleast_1d(np.asarray(times, dtype=float))
    if not np.all(np.isfinite(values)):
        raise ValueError("Times must be finite")
    if np.any(values < 0):
        raise DomainError(
            f"Time {float(values.min()):.6g} precedes t0 = 0; the decay is defined for t >= 0 only"
        )
    return values


# ---------------------------------------------------------------------------
# Population and group rate
# ---------------------------------------------------------------------------


def population_from_coefficients(
    coefficients: ExcitationCoefficients, t: float, hbar: float = 1.0
) -> float:
    """P(t) = sum_l w_l exp(-Gamma_l t / hbar)."""
    check_times(t)
    return float(np.sum(coefficients.weights * np.exp(-coefficients.widths * t / hbar)))


def group_rate_from_coefficients(
    coefficients: ExcitationCoefficients, t: float, hbar: float = 1.0
) -> float:
    """k_gr(t) = sum Gamma_l w_l e^(-Gamma_l t/hbar) / (hbar sum w_l e^(-Gamma_l t/hbar))."""
    population = population_from_coefficients(coefficients, t, hbar)
    if population < UNDERFLOW_THRESHOLD:
        raise Underflow(f"Population {population:.3g} at t = {t:.6g} is below the underflow limit")

    widths = coefficients.widths
    # Shifted by the smallest populated width so the ratio stays finite at late times.
    populated = coefficients.weights > 0
    shift = float(widths[populated].min())
    factors = coefficients.weights * np.exp(-(widths - shift) * t / hbar)
    return float(np.sum(widths * factors) / (hbar * np.sum(factors)))


def population_probability(
    open_system: OpenSystem, energy: float, excitation: Excitation, t: float
) -> float:
    check_times(t)
    coefficients = excitation_coefficients(open_system, energy, excitation)
    return population_from_coefficients(coefficients, t, open_system.hbar)


def decay_rate_group(
    open_system: OpenSystem, energy: float, excitation: Excitation, t: float
) -> float:
    """
    Group decay rate -d ln P / dt in closed form.

    It lies between the smallest and largest populated width over hbar and decreases with t.

    Raises:
        DomainError: for t < 0.
        Underflow: if P(t) < 1e-300.
    """
    check_times(t)
    coefficients = excitation_coefficients(open_system, energy, excitation)
    return group_rate_from_coefficients(coefficients, t, open_system.hbar)


def decay_trace(
    open_system: OpenSystem,
    energy: float,
    excitation: Excitation,
    times: Sequence[float] | np.ndarray,
) -> DecayTrace:
    """
    P(t) and k_gr(t) on a time grid that starts at t0 = 0.

    Once P(t) drops below 1e-300 the trace ends: the remaining times are dropped and the trace
    is flagged ``truncated``.
    """
    values = check_times(times)
    if values[0] != 0.0:
        raise ValueError(f"Time grid must start at t0 = 0, got {values[0]}")
    if np.any(np.diff(values) < 0):
        raise ValueError("Time grid must be non-decreasing")

    coefficients = excitation_coefficients(open_system, energy, excitation)
    hbar = open_system.hbar
    population = np.array([population_from_coefficients(coefficients, t, hbar) for t in values])

    underflow = np.flatnonzero(population < UNDERFLOW_THRESHOLD)
    truncated = bool(underflow.size)
    if truncated:
        cut = int(underflow[0])
        logger.warning(
            "Population underflows at t = %.6g; trace truncated to %d of %d samples",
            values[cut],
            cut,
            len(values),
        )
        values, population = values[:cut], population[:cut]

    rates = np.array([group_rate_from_coefficients(coefficients, t, hbar) for t in values])
    return DecayTrace(
        energy=energy, times=values, population=population, rates=rates, truncated=truncated
    )


# ---------------------------------------------------------------------------
# Individual rates
# ---------------------------------------------------------------------------


def individual_terms(
    coefficients: ExcitationCoefficients,
    overlaps: np.ndarray,
    index: int,
    t: float,
    hbar: float = 1.0,
    include_cross_terms: bool = True,
) -> tuple[float, float]:
    """
    N_l(t) and dN_l/dt.

    N_l(t) = Re[ w_l A_l e^(-Gamma_l t/hbar)
                 + sum_m e^(-(Gamma_l + Gamma_m) t / 2hbar) (X_m - conj X_m) B_ml ]
    with X_m = c_l conj(c_m) e^(i (E_m - E_l) t / hbar) and B_ml = <phi_m|phi_l>.
    The derivative is taken term by term.
    """
    states = coefficients.states
    c = coefficients.c0
    gamma = coefficients.widths
    state = states[index]

    diagonal = coefficients.weights[index] * state.a_norm * math.exp(-gamma[index] * t / hbar)
    norm = complex(diagonal)
    derivative = complex(-gamma[index] / hbar * diagonal)
    if include_cross_terms:
        for m, other in enumerate(states):
            if m == index:
                continue
            decay = -(gamma[index] + gamma[m]) / (2 * hbar)
            omega = (other.energy - state.energy) / hbar
            envelope = math.exp(decay * t)
            x = c[index] * np.conj(c[m]) * np.exp(1j * omega * t)
            b = overlaps[m, index]
            norm += envelope * (x - np.conj(x)) * b
            slope = (decay + 1j * omega) * x - (decay - 1j * omega) * np.conj(x)
            derivative += envelope * slope * b
    return norm.real, derivative.real


def _individual(
    open_system: OpenSystem,
    index: int,
    energy: float,
    excitation: Excitation,
    t: float,
    include_cross_terms: bool,
) -> tuple[float, float]:
    check_times(t)
    coefficients = excitation_coefficients(open_system, energy, excitation)
    if not 0 <= index < len(coefficients.states):
        raise ValueError(f"State index {index} out of range for {len(coefficients.states)} states")
    overlaps = phase_rigidity_report(coefficients.states).overlaps
    return individual_terms(
        coefficients, overlaps, index, t, open_system.hbar, include_cross_terms
    )


def individual_norm(
    open_system: OpenSystem,
    index: int,
    energy: float,
    excitation: Excitation,
    t: float,
    include_cross_terms: bool = True,
) -> float:
    return _individual(open_system, index, energy, excitation, t, include_cross_terms)[0]


def individual_rate_from_terms(norm: float, derivative: float, t: float) -> float:
    if norm <= UNDERFLOW_THRESHOLD:
        raise Underflow(f"State norm {norm:.3g} at t = {t:.6g} is below the underflow limit")
    return -derivative / norm


def decay_rate_individual(
    open_system: OpenSystem,
    index: int,
    energy: float,
    excitation: Excitation,
    t: float,
    include_cross_terms: bool = True,
) -> float:
    """
    k_l(t) = -d ln N_l / dt of the state norm N_l(t).

    In the overlapping regime the cross terms make k_l oscillate with the level spacing.
    Negative values are returned as they are.

    Raises:
        DomainError: for t < 0.
        Underflow: if N_l(t) <= 1e-300.
    """
    norm, derivative = _individual(open_system, index, energy, excitation, t, include_cross_terms)
    return individual_rate_from_terms(norm, derivative, t)
