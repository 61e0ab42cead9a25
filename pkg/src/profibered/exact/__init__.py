"""Exact integer/rational linear algebra and Laurent polynomial kernel."""

from .laurent import ONE, T, ZERO, LaurentPoly, char_poly_reversed, is_reciprocal, laurent_doteq, poly_gcd
from .linalg import det, identity, inverse, matmul, rank, transpose
from .modules import annihilator_witness, module_order, verify_witness
from .resultant import cyclic_resultant, cyclotomic, resultant, strip_cyclotomic
from .smith import QQt, ZZ, SmithDecomposition, hermite_rows, integer_kernel, smith_form

__all__ = [
    "LaurentPoly",
    "T",
    "ONE",
    "ZERO",
    "laurent_doteq",
    "is_reciprocal",
    "poly_gcd",
    "char_poly_reversed",
    "det",
    "identity",
    "inverse",
    "matmul",
    "rank",
    "transpose",
    "module_order",
    "annihilator_witness",
    "verify_witness",
    "cyclic_resultant",
    "cyclotomic",
    "resultant",
    "strip_cyclotomic",
    "smith_form",
    "SmithDecomposition",
    "hermite_rows",
    "integer_kernel",
    "ZZ",
    "QQt",
]
