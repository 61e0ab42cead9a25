"""Exact Laurent polynomials in one variable ``t`` over the integers or rationals."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, Mapping, Tuple, Union

Number = Union[int, Fraction]


def _norm_coeff(c) -> Number:
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, int):
        return c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


class LaurentPoly:
    """Immutable Laurent polynomial ``sum c_k t^k`` with exact coefficients.

    Coefficients are stored as a map exponent -> nonzero coefficient; the zero
    polynomial is the empty map. Integral rationals are stored as ``int``.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        c: Dict[int, Number] = {}
        if coeffs:
            for e, v in coeffs.items():
                v = _norm_coeff(v)
                if v != 0:
                    c[int(e)] = v
        self._c = c
        self._hash = None

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "LaurentPoly":
        return cls({k: c})

    @classmethod
    def from_list(cls, coeffs: Iterable[Number], low: int = 0) -> "LaurentPoly":
        """Coefficients listed from exponent ``low`` upwards."""
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        from .parse import parse_laurent

        return parse_laurent(text)

    # -- basic accessors ------------------------------------------------
    @property
    def coeffs(self) -> Dict[int, Number]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def coeff(self, k: int) -> Number:
        return self._c.get(k, 0)

    @property
    def low(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no lowest exponent")
        return min(self._c)

    @property
    def high(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def span(self) -> int:
        """``high - low``; the degree after shifting the lowest exponent to 0."""
        return self.high - self.low if self._c else -1

    @property
    def degree(self) -> int:
        return self.high if self._c else -1

    def leading(self) -> Number:
        return self._c[self.high]

    def trailing(self) -> Number:
        return self._c[self.low]

    def is_integral(self) -> bool:
        return all(isinstance(v, int) for v in self._c.values())

    def is_polynomial(self) -> bool:
        return not self._c or self.low >= 0

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def to_list(self) -> list:
        """Dense coefficients from exponent ``low`` to ``high``."""
        if not self._c:
            return []
        lo, hi = self.low, self.high
        return [self._c.get(k, 0) for k in range(lo, hi + 1)]

    # -- arithmetic -----------------------------------------------------
    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c: Dict[int, Number] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if self.is_monomial():
                (e, v), = self._c.items()
                return LaurentPoly({e * n: Fraction(1) / Fraction(v) ** (-n)})
            raise ValueError("negative power of a non-monomial")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: Number) -> "LaurentPoly":
        return LaurentPoly({e: v * c for e, v in self._c.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t^k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def normalized(self) -> "LaurentPoly":
        """Shift so that the lowest exponent is 0."""
        return self.shift(-self.low) if self._c else self

    def substitute_power(self, k: int) -> "LaurentPoly":
        """Return ``p(t^k)``."""
        return LaurentPoly({e * k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """``p(t^{-1})``."""
        return self.substitute_power(-1)

    def __call__(self, x):
        if not self._c:
            return 0
        total = 0
        for e, v in self._c.items():
            if e >= 0:
                total += v * x**e
            else:
                total += v * Fraction(1) / Fraction(x) ** (-e)
        return _norm_coeff(total) if isinstance(total, (int, Fraction)) else total

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- division over Q[t] ---------------------------------------------
    def divmod_poly(self, other: "LaurentPoly") -> Tuple["LaurentPoly", "LaurentPoly"]:
        """Euclidean division of ordinary polynomials over Q."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if not (self.is_polynomial() and other.is_polynomial()):
            raise ValueError("divmod_poly needs polynomials (no negative exponents)")
        r = dict(self._c)
        q: Dict[int, Number] = {}
        dh = other.high
        lc = Fraction(other.leading())
        while r:
            rh = max(r)
            if rh < dh:
                break
            f = _norm_coeff(Fraction(r[rh]) / lc)
            s = rh - dh
            q[s] = f
            for e, v in other._c.items():
                nv = r.get(e + s, 0) - f * v
                if nv == 0:
                    r.pop(e + s, None)
                else:
                    r[e + s] = _norm_coeff(nv) if isinstance(nv, Fraction) else nv
        return LaurentPoly(q), LaurentPoly(r)

    def exquo(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact quotient in Q[t^{+-1}]; raises ``ArithmeticError`` if inexact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return self
        a, b = self.normalized(), other.normalized()
        q, r = a.divmod_poly(b)
        if not r.is_zero():
            raise ArithmeticError("inexact division")
        return q.shift(self.low - other.low)

    def divides(self, other: "LaurentPoly") -> bool:
        """True iff ``self`` divides ``other`` in Q[t^{+-1}]."""
        if self.is_zero():
            return other.is_zero()
        try:
            other.exquo(self)
        except ArithmeticError:
            return False
        return True

    # -- integral structure ---------------------------------------------
    def content(self) -> Number:
        """Positive content: gcd of numerators over lcm of denominators."""
        if not self._c:
            return 0
        num = 0
        den = 1
        for v in self._c.values():
            f = Fraction(v)
            num = gcd(num, f.numerator)
            den = den * f.denominator // gcd(den, f.denominator)
        return _norm_coeff(Fraction(num, den))

    def primitive(self) -> "LaurentPoly":
        """Integer polynomial with content 1 and positive lowest coefficient,
        equal to ``self`` up to a rational unit (no shift)."""
        if not self._c:
            return self
        p = self.scale(Fraction(1) / Fraction(self.content()))
        return -p if p.trailing() < 0 else p

    def canonical(self, unit_group: str = "pm1") -> "LaurentPoly":
        """Unique representative of the class of ``self`` modulo monomial units.

        ``unit_group='pm1'``: shift to lowest exponent 0 and make the lowest
        coefficient positive. ``unit_group='Q'``: shift and make the lowest
        coefficient equal to 1.
        """
        if not self._c:
            return self
        p = self.normalized()
        if unit_group == "pm1":
            return -p if p.trailing() < 0 else p
        if unit_group == "Q":
            return p.scale(Fraction(1) / Fraction(p.trailing()))
        raise ValueError(f"unknown unit group {unit_group!r}")

    def mod(self, n: int) -> "LaurentPoly":
        """Reduce integer coefficients modulo ``n`` into ``[0, n)``."""
        if not self.is_integral():
            raise ValueError("mod needs integer coefficients")
        return LaurentPoly({e: v % n for e, v in self._c.items()})

    # -- display --------------------------------------------------------
    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            neg = v < 0
            a = -v if neg else v
            if e == 0:
                body = str(a)
            else:
                mon = "t" if e == 1 else f"t^{e}"
                body = mon if a == 1 else (f"{a}*{mon}" if isinstance(a, int) else f"({a})*{mon}")
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({str(self)!r})"

    def to_json(self) -> Dict[str, str]:
        return {str(e): str(v) for e, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data) -> "LaurentPoly":
        if isinstance(data, str):
            return cls.parse(data)
        if isinstance(data, list):
            return cls.from_list([Fraction(str(x)) for x in data])
        return cls({int(e): Fraction(str(v)) for e, v in data.items()})


T = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def poly_gcd(a: LaurentPoly, b: LaurentPoly, over: str = "Z") -> LaurentPoly:
    """Greatest common divisor in Z[t^{+-1}] (``over='Z'``) or Q[t^{+-1}].

    The result is in canonical form: lowest exponent 0, positive lowest
    coefficient (over Z) or lowest coefficient 1 (over Q).
    """
    if a.is_zero():
        return b.canonical("pm1" if over == "Z" else "Q") if b else b
    if b.is_zero():
        return a.canonical("pm1" if over == "Z" else "Q")
    x, y = a.normalized(), b.normalized()
    while not y.is_zero():
        _, r = x.divmod_poly(y)
        x, y = y, r
    if over == "Q":
        return x.canonical("Q")
    g = x.primitive().normalized()
    ca, cb = Fraction(a.content()), Fraction(b.content())
    c = Fraction(gcd(ca.numerator, cb.numerator), (ca.denominator * cb.denominator) // gcd(ca.denominator, cb.denominator))
    return g.scale(c).canonical("pm1")


def laurent_doteq(p: LaurentPoly, q: LaurentPoly, unit_group: str = "pm1") -> bool:
    """True iff ``q = c * t^k * p`` for an integer ``k`` and a unit ``c``.

    ``unit_group`` is ``'pm1'`` (units of Z) or ``'Q'`` (nonzero rationals).
    """
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    return p.canonical(unit_group) == q.canonical(unit_group)


def is_reciprocal(f: LaurentPoly) -> bool:
    """Palindromic coefficient list after shifting the lowest exponent to 0."""
    if f.is_zero():
        return True
    c = f.to_list()
    return c == c[::-1]


def char_poly_reversed(matrix) -> LaurentPoly:
    """``det(1 - t M)`` for a square matrix with exact entries."""
    from .linalg import det

    n = len(matrix)
    if n == 0:
        return ONE
    m = [[(ONE if i == j else ZERO) - T * matrix[i][j] for j in range(n)] for i in range(n)]
    return det(m)
