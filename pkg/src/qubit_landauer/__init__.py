"""Qubit coupled to a thermal cavity field: decoherence, heat and the Landauer bound."""

__version__ = "0.1.0"

from .cavity import CavitySpec, ModeOverlap, mode_frequency, mode_function, overlap_integral
from .entropy import LandauerReport, landauer_check, von_neumann_entropy
from .errors import (
    DomainError,
    LandauerViolation,
    PerturbationBreakdownError,
    ResourceError,
    TruncationError,
)
from .qubit import QubitDensityMatrix
from .thermal import ThermalEnvironment, mean_occupation

__all__ = [
    "CavitySpec",
    "DomainError",
    "LandauerReport",
    "LandauerViolation",
    "ModeOverlap",
    "PerturbationBreakdownError",
    "QubitDensityMatrix",
    "ResourceError",
    "ThermalEnvironment",
    "TruncationError",
    "landauer_check",
    "mean_occupation",
    "mode_frequency",
    "mode_function",
    "overlap_integral",
    "von_neumann_entropy",
]
