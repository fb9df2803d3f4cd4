"""Solvers for heptadiagonal and cyclic heptadiagonal linear systems.

The banded solver is an LU factorization without pivoting that survives zero
pivots by carrying a symbolic parameter ``t``; the cyclic solver reduces the
wrapped system to banded solves with the Sherman-Morrison-Woodbury identity.
"""

from .bands import CyclicHeptaBands, CyclicPartition, HeptaBands, partition, to_dense, validate
from .cyclic import det_cyclic, smw_solve, solve_cyclic
from .errors import (
    BreakdownInFloatMode,
    HeptaxError,
    PoleAtZero,
    SingularMatrix,
)
from .hepta_lu import HeptaLUFactors, SolveReport, determinant, factorize, solve
from .scalar import Mode, RationalFunction, ZeroTest

__version__ = "0.1.0"

__all__ = [
    "BreakdownInFloatMode",
    "CyclicHeptaBands",
    "CyclicPartition",
    "HeptaBands",
    "HeptaLUFactors",
    "HeptaxError",
    "Mode",
    "PoleAtZero",
    "RationalFunction",
    "SingularMatrix",
    "SolveReport",
    "ZeroTest",
    "det_cyclic",
    "determinant",
    "factorize",
    "partition",
    "smw_solve",
    "solve",
    "solve_cyclic",
    "to_dense",
    "validate",
]
