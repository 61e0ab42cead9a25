"""Truncated zeta series ``exp(sum L_m t^m / m)`` and exact rational fitting."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..exact.laurent import LaurentPoly, poly_gcd
from ..exact.linalg import matpow, solve
from .graph import TransitionGraph
from .orbits import ClassFunction, OrbitTable, trivial_character, twisted_lefschetz

NO_FIT = "no rational fit at this depth"


def exp_series(L: Sequence) -> List[Fraction]:
    """Coefficients ``c_0..c_D`` of ``exp(sum_{m=1}^D L_m t^m / m)``.

    ``L[0]`` is ``L_1``.  Uses ``n c_n = sum_{k=1}^n L_k c_{n-k}``.
    """
    c = [Fraction(1)]
    for n in range(1, len(L) + 1):
        c.append(sum((Fraction(L[k - 1]) * c[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return c


def rational_fit(c: Sequence[Fraction], max_total: Optional[int] = None) -> Optional[Tuple[LaurentPoly, LaurentPoly]]:
    """Smallest ``p/q`` with ``q(0) = 1``, ``deg p + deg q <= max_total`` and
    ``q c = p`` modulo ``t^(D+1)``.

    Solves the Hankel system exactly for each degree split in increasing
    total degree; ``None`` when nothing fits.
    """
    D = len(c) - 1
    if max_total is None:
        max_total = D // 2
    c = [Fraction(x) for x in c]

    def coef(i):
        return c[i] if i >= 0 else Fraction(0)

    for s in range(0, max_total + 1):
        for b in range(0, s + 1):
            a = s - b
            rows = [[coef(i - j) for j in range(1, b + 1)] for i in range(a + 1, D + 1)]
            rhs = [-coef(i) for i in range(a + 1, D + 1)]
            if b == 0:
                if any(rhs):
                    continue
                q = [Fraction(1)]
            else:
                sol = solve(rows, rhs) if rows else [Fraction(0)] * b
                if sol is None:
                    continue
                q = [Fraction(1)] + list(sol)
            p = [sum((q[j] * coef(i - j) for j in range(len(q))), Fraction(0)) for i in range(a + 1)]
            num, den = LaurentPoly.from_list(p), LaurentPoly.from_list(q)
            return _reduce(num, den)
    return None


def _reduce(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if not num.is_zero():
        g = poly_gcd(num, den, over="Q")
        if g.degree > 0:
            num, den = num.exquo(g), den.exquo(g)
    c0 = den.coeff(0)
    return num.scale(Fraction(1) / c0), den.scale(Fraction(1) / c0)


@dataclass(frozen=True)
class ZetaSeries:
    lefschetz: Tuple[Fraction, ...]
    coefficients: Tuple[Fraction, ...]
    fit: Optional[Tuple[LaurentPoly, LaurentPoly]]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def to_json(self) -> Dict:
        out = {
            "degree": self.degree,
            "lefschetz": [str(x) for x in self.lefschetz],
            "series": [str(x) for x in self.coefficients],
        }
        if self.fit is None:
            out["rational"] = NO_FIT
        else:
            out["rational"] = {"numerator": str(self.fit[0]), "denominator": str(self.fit[1])}
        return out


def lefschetz_sequence(source, D: int, xi: Optional[ClassFunction] = None) -> List[Fraction]:
    """``L_1..L_D`` from an orbit table (twisted by ``xi``), a transition graph
    or a square transition matrix (traces of powers)."""
    if isinstance(source, OrbitTable):
        xi = xi if xi is not None else trivial_character
        return [twisted_lefschetz(source, m, xi) for m in range(1, D + 1)]
    if xi is not None:
        raise ValueError("class functions are only supported on orbit tables")
    M = source.adjacency_matrix() if isinstance(source, TransitionGraph) else [[int(x) for x in r] for r in source]
    return [Fraction(sum(matpow(M, m)[i][i] for i in range(len(M)))) for m in range(1, D + 1)]


def zeta_series(source, D: int, xi: Optional[ClassFunction] = None) -> ZetaSeries:
    if D < 0:
        raise ValueError("degree must be nonnegative")
    L = lefschetz_sequence(source, D, xi)
    c = exp_series(L)
    return ZetaSeries(tuple(L), tuple(c), rational_fit(c))


def series_of(num: LaurentPoly, den: LaurentPoly, D: int) -> List[Fraction]:
    """Power series expansion of ``num/den`` to ``t^D`` (``den(0)`` nonzero)."""
    q0 = Fraction(den.coeff(0))
    if q0 == 0:
        raise ZeroDivisionError("denominator vanishes at 0")
    out: List[Fraction] = []
    for n in range(D + 1):
        v = Fraction(num.coeff(n)) - sum((Fraction(den.coeff(j)) * out[n - j] for j in range(1, n + 1)), Fraction(0))
        out.append(v / q0)
    return out
