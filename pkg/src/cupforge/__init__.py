"""Cup-product construction of transversal multi-controlled-Z gates on
CSS codes built from cochain complexes over GF(2)."""

from .complexes import BasedComplex, Cochain, Orbit, Report, betti, cohomology_basis, validate
from .css import CssCode, distance_exhaustive, from_complex
from .f2linalg import BitMatrix, BitVector
from .orientation import CupStructure, PreOrientation, check_integrated_leibniz, cup, integral, lambda_cup
from .products import AbelianGroup, BalancedComplex, GroupAction, TensorComplex, balanced_product, tensor

__version__ = "0.1.0"

__all__ = [
    "BasedComplex",
    "Cochain",
    "Orbit",
    "Report",
    "betti",
    "cohomology_basis",
    "validate",
    "CssCode",
    "distance_exhaustive",
    "from_complex",
    "BitMatrix",
    "BitVector",
    "CupStructure",
    "PreOrientation",
    "check_integrated_leibniz",
    "cup",
    "integral",
    "lambda_cup",
    "AbelianGroup",
    "BalancedComplex",
    "GroupAction",
    "TensorComplex",
    "balanced_product",
    "tensor",
]
