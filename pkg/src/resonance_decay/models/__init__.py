from resonance_decay.models.channel import ChainChannel, Channel, WidebandChannel
from resonance_decay.models.system import CouplingMatrix, DiscreteSystem, OpenSystem
from resonance_decay.models.hamiltonian import EffectiveHamiltonian
from resonance_decay.models.resonance import (
    ExceptionalPoint,
    FixedPointResult,
    PhaseRigidityReport,
    ResonanceState,
    Trajectory,
)
from resonance_decay.models.scattering import SMatrixSample
from resonance_decay.models.dynamics import (
    DecayTrace,
    Excitation,
    ExcitationCoefficients,
    ScatteringExcitation,
    SourceExcitation,
    TrappingReport,
)
from resonance_decay.models.oracle import FullSpaceModel, SurvivalCurve, WidthFit

__all__ = [
    "ChainChannel",
    "Channel",
    "WidebandChannel",
    "CouplingMatrix",
    "DiscreteSystem",
    "OpenSystem",
    "EffectiveHamiltonian",
    "ExceptionalPoint",
    "FixedPointResult",
    "PhaseRigidityReport",
    "ResonanceState",
    "Trajectory",
    "SMatrixSample",
    "DecayTrace",
    "Excitation",
    "ExcitationCoefficients",
    "ScatteringExcitation",
    "SourceExcitation",
    "TrappingReport",
    "FullSpaceModel",
    "SurvivalCurve",
    "WidthFit",
]
