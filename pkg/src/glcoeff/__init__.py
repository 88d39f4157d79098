"""Exact and high-precision calculator for the global coefficients of
block-regular nilpotent orbits of GL(n)."""

from .coefficients import (CoefficientResult, FormalExpansion, J_o_unit,
                           a_coefficient, a_tilde, expansion)
from .zeta import EMPTY_PLACES, NumberFieldData, PlaceSet

__version__ = "0.1.0"

__all__ = [
    "CoefficientResult",
    "FormalExpansion",
    "J_o_unit",
    "a_coefficient",
    "a_tilde",
    "expansion",
    "EMPTY_PLACES",
    "NumberFieldData",
    "PlaceSet",
    "__version__",
]
