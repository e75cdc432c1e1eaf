"""Explicit coordinates, densities and Kostant forms on Schubert cells of SL(n)."""

__version__ = "0.1.0"

from .errors import DivergenceError, InvalidRankError, IwasawaError, NotReducedError, SeriesError
from .rootsys import CoWeight, ReducedWord, RootSystem, build_type_a

__all__ = [
    "CoWeight",
    "DivergenceError",
    "InvalidRankError",
    "IwasawaError",
    "NotReducedError",
    "ReducedWord",
    "RootSystem",
    "SeriesError",
    "build_type_a",
]
