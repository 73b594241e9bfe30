"""Exact integer/rational linear algebra: matrices, normal forms,
Diophantine solving, and lattice operations."""

from .matrix import Matrix, SPARSE_THRESHOLD
from .normal_forms import SmithDecomposition, hnf, hnf_pivots, snf
from .diophantine import InfeasibilityWitness, IntegerSolution, solve_integer, solve_rational
from .lattice import LatticeSpec

__all__ = [
    "Matrix",
    "SPARSE_THRESHOLD",
    "SmithDecomposition",
    "hnf",
    "hnf_pivots",
    "snf",
    "InfeasibilityWitness",
    "IntegerSolution",
    "solve_integer",
    "solve_rational",
    "LatticeSpec",
]
