import json
from pathlib import Path
from typing import Annotated, Literal

import numpy as np
from appdevcommons.hash_generator import HashGenerator  # type: ignore[import-untyped]
from pydantic import BaseModel, ConfigDict, Field, FiniteFloat, model_validator

from resonance_decay.config import settings
from resonance_decay.exceptions import DimensionMismatch
from resonance_decay.models.channel import channel_from_dict
from resonance_decay.models.dynamics import Excitation, ScatteringExcitation, SourceExcitation
from resonance_decay.models.system import CouplingMatrix, OpenSystem


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class Units(_Strict):
    energy: str = Field(default="arb", description="Label of the energy unit used in the file.")
    time: str = Field(default="hbar/energy", description="Times are reported in hbar / energy.")


class GridSpec(_Strict):
    min: FiniteFloat
    max: FiniteFloat
    count: int = Field(ge=1)

    @model_validator(mode="after")
    def validate_bounds(self) -> "GridSpec":
        if self.max < self.min:
            raise ValueError(f"Grid max {self.max} is below min {self.min}")
        return self

    def values(self) -> np.ndarray:
        return np.linspace(self.min, self.max, self.count)


class WidebandSpec(_Strict):
    kind: Literal["wideband"]
    density_of_states: float = Field(gt=0, description="Constant channel density rho_c.")
    window: tuple[FiniteFloat, FiniteFloat] | None = Field(
        default=None,
        description="Energy window used only when the continuum is discretized for the oracle.",
    )


class ChainSpec(_Strict):
    kind: Literal["chain"]
    hopping: float = Field(gt=0, description="Nearest-neighbour hopping tau; band is 4*tau wide.")
    center: FiniteFloat = 0.0


ChannelSpec = Annotated[WidebandSpec | ChainSpec, Field(discriminator="kind")]


class ScatteringSpec(_Strict):
    kind: Literal["scattering"]
    channel: int = Field(ge=0)


class SourceSpec(_Strict):
    kind: Literal["source"]
    real: list[FiniteFloat]
    imag: list[FiniteFloat] | None = None

    @model_validator(mode="after")
    def validate_lengths(self) -> "SourceSpec":
        if self.imag is not None and len(self.imag) != len(self.real):
            raise ValueError("Source real and imag parts must have the same length")
        return self


ExcitationSpec = Annotated[ScatteringSpec | SourceSpec, Field(discriminator="kind")]


class AxisSpec(_Strict):
    label: str
    kind: Literal["alpha", "alpha_sq", "level", "internal"] = Field(
        description=(
            "'alpha' sets the coupling scale, 'alpha_sq' sets alpha = sqrt(value), "
            "'level' sets levels[index[0]], 'internal' sets u[index[0]][index[1]] = u[j][i]."
        )
    )
    index: list[int] = Field(default_factory=list)
    min: FiniteFloat
    max: FiniteFloat

    @model_validator(mode="after")
    def validate_axis(self) -> "AxisSpec":
        if self.max < self.min:
            raise ValueError(f"Axis {self.label!r}: max {self.max} is below min {self.min}")
        needed = {"alpha": 0, "alpha_sq": 0, "level": 1, "internal": 2}[self.kind]
        if len(self.index) != needed:
            raise ValueError(f"Axis {self.label!r} of kind {self.kind!r} needs {needed} indices")
        return self


class ExceptionalPointSpec(_Strict):
    axes: list[AxisSpec] = Field(min_length=2, max_length=2)
    grid_points: int = Field(default_factory=lambda: settings.ep_grid_points, ge=2)


class FixedPointSpec(_Strict):
    tracker: int = Field(default=0, ge=0, description="Index of the state followed by the solver.")
    energy: FiniteFloat | None = Field(
        default=None, description="Starting energy; defaults to probe_energy."
    )


class OracleSpec(_Strict):
    bins: int = Field(default_factory=lambda: settings.default_bins, ge=100)
    tracker: int = Field(default=0, ge=0)
    fit_window: tuple[FiniteFloat, FiniteFloat] | None = Field(
        default=None,
        description="Fit window in time; defaults to [0.2, 2] lifetimes of the tracked state.",
    )


class Scenario(_Strict):
    """A scenario file: one open system plus the grids and options of every command."""

    units: Units = Field(default_factory=Units)
    hbar: float = Field(default_factory=lambda: settings.default_hbar, gt=0)
    levels: list[FiniteFloat] = Field(min_length=1)
    internal_coupling: list[list[FiniteFloat]] | None = None
    channels: list[ChannelSpec] = Field(default_factory=list)
    coupling: list[list[FiniteFloat]] = Field(
        description="W with one row per level and one column per channel."
    )
    alpha: float = Field(default=1.0, ge=0)
    probe_energy: FiniteFloat = 0.0
    excitation: ExcitationSpec | None = None
    energy_grid: GridSpec | None = None
    time_grid: GridSpec | None = None
    alpha_grid: GridSpec | None = None
    exceptional_point: ExceptionalPointSpec | None = None
    fixed_point: FixedPointSpec = Field(default_factory=FixedPointSpec)
    oracle: OracleSpec = Field(default_factory=OracleSpec)

    def to_open_system(self) -> OpenSystem:
        """Build and validate the open system. Raises DimensionMismatch / AsymmetryError."""
        from resonance_decay.hamiltonians.builder import (
            build_discrete_hamiltonian,
            validate_dimensions,
        )

        n = len(self.levels)
        internal = self.internal_coupling if self.internal_coupling is not None else [[0.0] * n] * n
        widths = {len(row) for row in self.coupling}
        if len(widths) > 1:
            raise DimensionMismatch(f"Coupling rows have different lengths: {sorted(widths)}")
        coupling = np.asarray(self.coupling, dtype=float)
        if coupling.size == 0:
            coupling = np.zeros((n, 0))
        open_system = OpenSystem(
            system=build_discrete_hamiltonian(self.levels, internal),
            coupling=CouplingMatrix(matrix=coupling, alpha=self.alpha),
            channels=[channel_from_dict(spec.model_dump()) for spec in self.channels],
            hbar=self.hbar,
        )
        validate_dimensions(open_system)
        return open_system

    def to_excitation(self) -> Excitation | None:
        if self.excitation is None:
            return None
        if isinstance(self.excitation, ScatteringSpec):
            return ScatteringExcitation(channel=self.excitation.channel)
        imag = self.excitation.imag or [0.0] * len(self.excitation.real)
        return SourceExcitation(
            source=np.asarray(self.excitation.real) + 1j * np.asarray(imag)
        )

    def fingerprint(self) -> str:
        """Stable hash of the canonical scenario content."""
        canonical = json.dumps(self.model_dump(mode="json"), sort_keys=True)
        return HashGenerator.generate_hash(canonical)


def load_scenario(path: str | Path) -> Scenario:
    """Parse a JSON scenario file. Raises pydantic.ValidationError on schema violations."""
    return Scenario.model_validate_json(Path(path).read_text())
