"""Crossed modules of algebras over the associative and Lie operads.

Exact-rational engine for operadic cohomology, homotopy transfer of
crossed-module structures, rectification of cocycles, and Baer sums.
"""

from .errors import InputError, StructureError
from .linalg import Matrix, quotient_basis
from .graded import ChainComplex, ChainMap, GradedSpace, is_quasi_iso

__all__ = [
    "InputError", "StructureError", "Matrix", "quotient_basis",
    "ChainComplex", "ChainMap", "GradedSpace", "is_quasi_iso",
]
