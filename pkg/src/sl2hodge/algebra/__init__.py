"""Sparse noncommutative algebras: Clifford, enveloping, table and tensor products."""

from .core import Algebra, AmbientMismatch, Element, TensorAlgebra, anticommutator, commutator
from .clifford import CliffordAlgebra, clifford_mul, dstar, lie_derivative_hat, spin, transpose
from .pbw import EnvelopingAlgebra, TableAlgebra, pbw_mul

__all__ = [
    "Algebra", "AmbientMismatch", "Element", "TensorAlgebra", "anticommutator", "commutator",
    "CliffordAlgebra", "clifford_mul", "dstar", "lie_derivative_hat", "spin", "transpose",
    "EnvelopingAlgebra", "TableAlgebra", "pbw_mul",
]
