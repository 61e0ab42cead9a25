"""Smith and Hermite normal forms over Euclidean domains (Z and Q[t])."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .laurent import LaurentPoly
from .linalg import Matrix, identity, shape


class _Integers:
    zero = 0
    one = 1

    @staticmethod
    def norm(a: int) -> int:
        return abs(a)

    @staticmethod
    def divmod(a: int, b: int):
        return divmod(a, b)

    @staticmethod
    def unit_normal(a: int):
        """Return ``(u, u_inv)`` with ``u * a`` the normal associate."""
        return (-1, -1) if a < 0 else (1, 1)


class _RationalPolys:
    zero = LaurentPoly()
    one = LaurentPoly.const(1)

    @staticmethod
    def norm(a: LaurentPoly) -> int:
        return a.degree

    @staticmethod
    def divmod(a: LaurentPoly, b: LaurentPoly):
        return a.divmod_poly(b)

    @staticmethod
    def unit_normal(a: LaurentPoly):
        lc = Fraction(a.leading())
        return LaurentPoly.const(1 / lc), LaurentPoly.const(lc)


ZZ = _Integers()
QQt = _RationalPolys()


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ M @ V == D`` with ``D`` diagonal, ``d_1 | d_2 | ...``."""

    invariant_factors: List
    U: Matrix
    V: Matrix
    D: Matrix

    @property
    def rank(self) -> int:
        return sum(1 for d in self.invariant_factors if d)

    def torsion(self) -> List:
        """Nonunit nonzero invariant factors."""
        return [d for d in self.invariant_factors if d and not _is_unit(d)]


def _is_unit(d) -> bool:
    if isinstance(d, LaurentPoly):
        return d.is_monomial() and d.low == 0
    return d in (1, -1)


def smith_form(m: Sequence[Sequence], domain=ZZ) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    ``domain`` is ``ZZ`` (integer entries) or ``QQt`` (``LaurentPoly`` entries
    without negative exponents, viewed in the PID Q[t]).
    """
    rows, cols = shape(m)
    if rows and cols == 0:
        cols = len(m[0])
    dom = domain
    A = [list(r) for r in m]
    U = identity(rows, dom.one, dom.zero)
    V = identity(cols, dom.one, dom.zero)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for row in A:
            row[dst] = row[dst] + f * row[src]
        for row in V:
            row[dst] = row[dst] + f * row[src]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or dom.norm(A[i][j]) < best[0]):
                    best = (dom.norm(A[i][j]), i, j)
        if best is None:
            break
        swap_rows(t, best[1])
        swap_cols(t, best[2])
        while True:
            clean = True
            p = A[t][t]
            for i in range(t + 1, rows):
                if A[i][t]:
                    q, r = dom.divmod(A[i][t], p)
                    add_row(i, t, -q)
                    if r:
                        clean = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q, r = dom.divmod(A[t][j], p)
                    add_col(j, t, -q)
                    if r:
                        clean = False
            if not clean:
                best = None
                for i in range(t, rows):
                    if A[i][t] and (best is None or dom.norm(A[i][t]) < best[0]):
                        best = (dom.norm(A[i][t]), i, "r")
                for j in range(t, cols):
                    if A[t][j] and (best is None or dom.norm(A[t][j]) < best[0]):
                        best = (dom.norm(A[t][j]), j, "c")
                if best[2] == "r":
                    swap_rows(t, best[1])
                else:
                    swap_cols(t, best[1])
                continue
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if A[i][j] and dom.divmod(A[i][j], p)[1]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(t, bad, dom.one)
        u, _ = dom.unit_normal(A[t][t])
        if u != dom.one:
            A[t] = [u * x for x in A[t]]
            U[t] = [u * x for x in U[t]]
        t += 1
    inv = [A[i][i] for i in range(min(rows, cols))]
    return SmithDecomposition(inv, U, V, A)


def invariant_factors(m: Sequence[Sequence]) -> List[int]:
    return smith_form(m).invariant_factors


def is_smith_diagonal(d: Sequence[Sequence], domain=ZZ) -> bool:
    rows, cols = shape(d)
    diag = []
    for i in range(rows):
        for j in range(cols):
            if i != j and d[i][j]:
                return False
            if i == j:
                diag.append(d[i][j])
    for a, b in zip(diag, diag[1:]):
        if not a:
            if b:
                return False
            continue
        if b and domain.divmod(b, a)[1]:
            return False
    return True


def integer_kernel(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis (rows) of the saturated lattice ``{x in Z^n : m x = 0}``."""
    if not m:
        n = ncols or 0
        return identity(n)
    sd = smith_form(m)
    r = sd.rank
    n = len(m[0])
    V = sd.V
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def hermite_rows(m: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form of the row lattice of an integer matrix.

    Zero rows are dropped; pivots positive, entries above a pivot reduced into
    ``[0, pivot)``. Two integer matrices have the same row lattice iff their
    ``hermite_rows`` agree.
    """
    A = [list(r) for r in m if any(r)]
    if not A:
        return []
    cols = len(A[0])
    r = 0
    for c in range(cols):
        # gcd-combine rows r.. on column c
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[piv] = A[piv], A[r]
            done = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        done = False
            if done:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
            r += 1
            if r == len(A):
                break
    return [row for row in A[:r] if any(row)]


def in_row_lattice(v: Sequence[int], m: Sequence[Sequence[int]]) -> bool:
    """True iff the integer vector ``v`` is a Z-combination of the rows of ``m``."""
    if not any(v):
        return True
    h = hermite_rows(m)
    w = list(v)
    for row in h:
        c = next(j for j, x in enumerate(row) if x)
        if w[c] % row[c]:
            return False
        q = w[c] // row[c]
        w = [x - q * y for x, y in zip(w, row)]
    return not any(w)
