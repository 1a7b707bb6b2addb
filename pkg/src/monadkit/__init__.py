"""Exact computations with monads of line-bundle sums on P^3."""

from .complexes import BoundedComplex, Monad, dual_monad, sym_part, tensor_total, validate_monad
from .graded import GradedMatrix, LineBundleSum
from .polyring import HomogPoly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "BoundedComplex",
    "GradedMatrix",
    "HomogPoly",
    "LineBundleSum",
    "Monad",
    "dual_monad",
    "parse_poly",
    "sym_part",
    "tensor_total",
    "validate_monad",
    "__version__",
]
