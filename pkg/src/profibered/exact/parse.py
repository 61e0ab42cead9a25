"""Text parsing of Laurent polynomials such as ``"t^-5*(t^2-3t+1)"``."""

from __future__ import annotations

import re
from fractions import Fraction

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from .laurent import LaurentPoly

_TRANSFORMS = standard_transformations + (implicit_multiplication, convert_xor)
_t = sympy.Symbol("t")

_UNICODE = str.maketrans({"−": "-", "·": "*"})
_SUPER = str.maketrans("⁻⁰¹²³⁴⁵⁶⁷⁸⁹", "-0123456789")
_SUPER_RUN = re.compile("[⁻⁰¹²³⁴⁵⁶⁷⁸⁹]+")


def parse_laurent(text: str) -> LaurentPoly:
    """Parse a polynomial expression in ``t`` with integer/rational coefficients.

    Raises ``ValueError`` for anything that is not a Laurent polynomial in t.
    """
    src = _SUPER_RUN.sub(lambda m: "^" + m.group().translate(_SUPER), text)
    src = src.translate(_UNICODE).strip()
    if not src:
        raise ValueError("empty polynomial text")
    try:
        expr = parse_expr(src, local_dict={"t": _t}, transformations=_TRANSFORMS)
    except Exception as exc:  # sympy raises a zoo of exception types here
        raise ValueError(f"cannot parse polynomial {text!r}: {exc}") from None
    expr = sympy.expand(expr)
    if expr.free_symbols - {_t}:
        raise ValueError(f"unexpected symbols in {text!r}")
    coeffs = {}
    for term in sympy.Add.make_args(expr):
        c, rest = term.as_coeff_Mul()
        if rest == 1:
            e = 0
        else:
            base, e = rest.as_base_exp()
            if base != _t or not e.is_Integer:
                raise ValueError(f"not a Laurent polynomial: {text!r}")
            e = int(e)
        if not c.is_Rational:
            raise ValueError(f"non-rational coefficient in {text!r}")
        coeffs[e] = coeffs.get(e, 0) + Fraction(int(c.p), int(c.q))
    return LaurentPoly(coeffs)
