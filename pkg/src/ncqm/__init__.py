"""Quantum mechanics on the plane with noncommuting coordinates and momenta."""
from .errors import (
    CriticalRegion,
    CutoffTooSmall,
    IrrepRegionMismatch,
    NCQMError,
    NoBoundStates,
    NotBoundRegime,
    ThetaZero,
    ValidationError,
)
from .irreps import IrrepLabel
from .params import NCParams, Region, classify_region

__version__ = "0.1.0"

__all__ = [
    "CriticalRegion",
    "CutoffTooSmall",
    "IrrepLabel",
    "IrrepRegionMismatch",
    "NCParams",
    "NCQMError",
    "NoBoundStates",
    "NotBoundRegime",
    "Region",
    "ThetaZero",
    "ValidationError",
    "classify_region",
]
