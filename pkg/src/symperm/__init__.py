"""Symmetrized random permutations, their longest increasing subsequences and Tracy-Widom limits."""
from .combinatorics import EnsembleSpec, Permutation, PointConfig, SymmetryType
from .errors import (
    DomainError,
    InstabilityError,
    InvariantError,
    NumericsError,
    ParameterError,
    SizeError,
    SympermError,
    UnsupportedError,
)

__version__ = "0.1.0"

__all__ = [
    "EnsembleSpec", "Permutation", "PointConfig", "SymmetryType",
    "DomainError", "InstabilityError", "InvariantError", "NumericsError", "ParameterError",
    "SizeError", "SympermError", "UnsupportedError",
]
