import math
from abc import ABC, abstractmethod
from dataclasses import dataclass


class Channel(ABC):
    """Analytic continuum model of one decay channel.

    A channel is fully described by its scalar self-energy g_c(E); the channel block of the
    effective Hamiltonian is g_c(E) * w_c w_c^T for the coupling column w_c.
    """

    kind: str

    @abstractmethod
    def self_energy(self, energy: float) -> complex:
        """Retarded self-energy kernel g_c(E). Its imaginary part is never positive."""
        pass

    @abstractmethod
    def band(self) -> tuple[float, float] | None:
        """Energy window of the continuum, or None if it is unbounded."""
        pass

    @property
    def energy_dependent(self) -> bool:
        return True

    def density(self, energy: float) -> float:
        """Local channel density rho_c(E) = -Im g_c(E) / pi (zero for a closed channel)."""
        return max(0.0, -self.self_energy(energy).imag / math.pi)

    def is_open(self, energy: float) -> bool:
        return self.density(energy) > 0.0


_channels: dict[str, type[Channel]] = {}


def register_channel(kind: str):
    """Decorator to register a channel model under its scenario ``kind`` tag."""

    def decorator(cls: type[Channel]):
        cls.kind = kind
        _channels[kind] = cls
        return cls

    return decorator


def channel_from_dict(d: dict) -> Channel:
    """Build a channel from its tagged dict form, e.g. ``{"kind": "chain", "hopping": 1.0}``."""
    d = dict(d)
    kind = d.pop("kind", None)
    if kind not in _channels:
        raise ValueError(f"No channel model registered for kind {kind!r}")
    return _channels[kind].from_dict(d)  # type: ignore[attr-defined]


@register_channel("wideband")
@dataclass(frozen=True)
class WidebandChannel(Channel):
    """Energy-independent continuum: g = -i*pi*rho, no principal-value shift.

    ``window`` is only used when the continuum has to be discretized (full-space oracle).
    """

    density_of_states: float
    window: tuple[float, float] | None = None

    def __post_init__(self):
        if not self.density_of_states > 0:
            raise ValueError(f"Wideband density must be positive, got {self.density_of_states}")
        if self.window is not None and not self.window[0] < self.window[1]:
            raise ValueError(f"Wideband window must be increasing, got {self.window}")

    @property
    def energy_dependent(self) -> bool:
        return False

    def self_energy(self, energy: float) -> complex:
        return complex(0.0, -math.pi * self.density_of_states)

    def band(self) -> tuple[float, float] | None:
        return self.window

    @classmethod
    def from_dict(cls, d: dict) -> "WidebandChannel":
        window = d.get("window")
        return cls(
            density_of_states=d["density_of_states"],
            window=tuple(window) if window is not None else None,  # type: ignore[arg-type]
        )


@register_channel("chain")
@dataclass(frozen=True)
class ChainChannel(Channel):
    """Semi-infinite nearest-neighbour tight-binding chain attached at its end site.

    The band is |E - center| < 2 * hopping; outside it the self-energy is real.
    """

    hopping: float
    center: float = 0.0

    def __post_init__(self):
        if not self.hopping > 0:
            raise ValueError(f"Chain hopping must be positive, got {self.hopping}")

    def self_energy(self, energy: float) -> complex:
        t = self.hopping
        shifted = energy - self.center
        if abs(shifted) < 2 * t:
            return complex(shifted, -math.sqrt(4 * t * t - shifted * shifted)) / (2 * t * t)
        root = math.sqrt(shifted * shifted - 4 * t * t)
        return complex((shifted - math.copysign(root, shifted)) / (2 * t * t), 0.0)

    def band(self) -> tuple[float, float] | None:
        return (self.center - 2 * self.hopping, self.center + 2 * self.hopping)

    @classmethod
    def from_dict(cls, d: dict) -> "ChainChannel":
        return cls(hopping=d["hopping"], center=d.get("center", 0.0))
