"""Error types raised by the library and mapped to exit codes by the CLI."""

from typing import Any


class ResonanceDecayError(Exception):
    """Base class for all library errors."""


# ---------------------------------------------------------------------------
# Scenario errors (invalid input, CLI exit code 2)
# ---------------------------------------------------------------------------


class ScenarioError(ResonanceDecayError, ValueError):
    """Inputs violate a structural precondition."""


class DimensionMismatch(ScenarioError):
    pass


class AsymmetryError(ScenarioError):
    pass


class WindowRequired(ScenarioError):
    """A wideband channel has no energy window, so it cannot be discretized."""


# ---------------------------------------------------------------------------
# Numerical errors (CLI exit code 3)
# ---------------------------------------------------------------------------


class NumericalError(ResonanceDecayError, ArithmeticError):
    """A computation could not produce a trustworthy result."""


class EPDegenerate(NumericalError):
    """An eigenvector is self-orthogonal: the matrix sits at (or too near) an exceptional point."""

    def __init__(self, message: str, pair: tuple[complex, complex]):
        super().__init__(message)
        self.pair = pair


class NotConverged(NumericalError):
    def __init__(self, message: str, result: Any = None):
        super().__init__(message)
        self.result = result


class BranchLost(NumericalError):
    def __init__(self, message: str, overlap: float):
        super().__init__(message)
        self.overlap = overlap


class NotFound(NumericalError):
    def __init__(self, message: str, candidate: Any = None):
        super().__init__(message)
        self.candidate = candidate


class SingularResolvent(NumericalError):
    pass


class AllZero(NumericalError):
    pass


class DomainError(NumericalError):
    """Requested time lies before t0 = 0, where the resonance representation is not defined."""


class Underflow(NumericalError):
    pass


class StepTooLarge(NumericalError):
    pass


class HorizonExceeded(NumericalError):
    pass


class WindowEmpty(NumericalError):
    pass


class NoTrappingPartition(NumericalError):
    """There are at least as many open channels as states, so no trapped set exists."""
