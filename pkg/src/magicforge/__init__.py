"""Exact-arithmetic constructions of the sextonions, their Lie algebras and the
extended Freudenthal magic square."""

from .compalg import AlgebraTable, base_algebra, jordan_hermitian
from .liealg import LieAlgebra, from_algebra_derivations, intermediate_subalgebra, triality_algebra
from .magicsq import magic_square_table, tits_construction

__version__ = "0.1.0"

__all__ = [
    "AlgebraTable",
    "LieAlgebra",
    "base_algebra",
    "jordan_hermitian",
    "from_algebra_derivations",
    "triality_algebra",
    "intermediate_subalgebra",
    "tits_construction",
    "magic_square_table",
]
