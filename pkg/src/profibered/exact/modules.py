"""Orders of modules over the Laurent ring and annihilator witnesses."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .laurent import ONE, ZERO, LaurentPoly, poly_gcd
from .linalg import Matrix, adjugate, det, matmul, maximal_minors, rref, shape, transpose


def _as_laurent(x) -> LaurentPoly:
    return x if isinstance(x, LaurentPoly) else LaurentPoly.const(x)


def _lmatrix(P) -> Matrix:
    return [[_as_laurent(x) for x in row] for row in P]


def module_order(P: Sequence[Sequence], ncols: int | None = None) -> LaurentPoly:
    """Order of the module presented by ``P`` (rows = generators).

    The gcd of all maximal (rows x rows) minors, in canonical form. Returns the
    zero polynomial when there are fewer relations than generators or when
    every maximal minor vanishes (positive rank).
    """
    P = _lmatrix(P)
    rows, cols = shape(P)
    if ncols is not None and rows:
        cols = ncols
    if rows == 0:
        return ONE
    if cols < rows:
        return ZERO
    over = "Z" if all(x.is_integral() for row in P for x in row) else "Q"
    g = ZERO
    for _, m in maximal_minors(P):
        if not m.is_zero():
            g = poly_gcd(g, m, over)
            if g == ONE:
                break
    return g


def _evaluate(P: Matrix, x: int) -> List[List[Fraction]]:
    return [[Fraction(e(x)) if not e.is_zero() else Fraction(0) for e in row] for row in P]


_POINTS = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def annihilator_witness(P: Sequence[Sequence], check: bool = True) -> Tuple[LaurentPoly, Matrix]:
    """Return ``(a, Q)`` with ``P Q P == a P`` and ``a != 0``.

    A maximal nonsingular minor ``P[I, J]`` is located by row reduction of
    integer specializations of ``P``; ``Q`` places ``adj(P[I, J])`` on the
    transposed positions, so that ``Q / a`` is a generalized inverse of ``P``
    over the fraction field and ``a = det P[I, J]`` clears its denominators.
    """
    P = _lmatrix(P)
    rows, cols = shape(P)
    if rows == 0 or cols == 0 or all(x.is_zero() for row in P for x in row):
        return ONE, [[ZERO] * rows for _ in range(cols)]
    best_rank = -1
    for x in _POINTS:
        ev = _evaluate(P, x)
        _, pivot_cols = rref(ev)
        r = len(pivot_cols)
        # x may be a root of every entry; P is nonzero so some point has rank > 0
        if r == 0 or r < best_rank:
            continue
        best_rank = r
        _, pivot_rows = rref(transpose([[ev[i][j] for j in pivot_cols] for i in range(rows)]))
        I, J = pivot_rows, pivot_cols
        sub = [[P[i][j] for j in J] for i in I]
        a = det(sub)
        if a.is_zero():
            continue
        adj = adjugate(sub) if len(sub) > 1 else [[ONE]]
        Q = [[ZERO] * rows for _ in range(cols)]
        for b, j in enumerate(J):
            for c, i in enumerate(I):
                Q[j][i] = adj[b][c]
        if verify_witness(P, a, Q):
            return a, Q
    raise ArithmeticError("no annihilator witness found at the sampled points")


def verify_witness(P, a: LaurentPoly, Q) -> bool:
    """Exact check of ``P Q P == a P``."""
    P = _lmatrix(P)
    lhs = matmul(matmul(P, Q, ZERO), P, ZERO)
    return all(lhs[i][j] == a * P[i][j] for i in range(len(P)) for j in range(len(P[0])))
