"""Dense exact matrices as lists of rows.

Entries may be ``int``, ``Fraction`` or ``LaurentPoly``; nothing here ever
touches floating point. Matrices are plain ``list[list]`` so they serialize
trivially; functions never mutate their arguments.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

Matrix = List[list]


def shape(m: Sequence[Sequence]) -> Tuple[int, int]:
    rows = len(m)
    return rows, (len(m[0]) if rows else 0)


def zeros(r: int, c: int, zero=0) -> Matrix:
    return [[zero for _ in range(c)] for _ in range(r)]


def identity(n: int, one=1, zero=0) -> Matrix:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*m)] if m else []


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero=0) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {ra}x{ca} @ {rb}x{cb}")
    bt = transpose(b) if rb else [[] for _ in range(cb)]
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = zero
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def matvec(a: Sequence[Sequence], v: Sequence, zero=0) -> list:
    return [sum((x * y for x, y in zip(row, v)), zero) for row in a]


def add(a, b) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a, b) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(a, c) -> Matrix:
    return [[c * x for x in row] for row in a]


def kron(a, b) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    return [[a[i // rb][j // cb] * b[i % rb][j % cb] for j in range(ca * cb)] for i in range(ra * rb)]


def block(rows_of_blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    out: Matrix = []
    for brow in rows_of_blocks:
        h = len(brow[0])
        for i in range(h):
            line = []
            for blk in brow:
                line.extend(blk[i])
            out.append(line)
    return out


def matpow(a: Sequence[Sequence], n: int, one=1, zero=0) -> Matrix:
    if n < 0:
        return matpow(inverse(a), -n, one, zero)
    result = identity(len(a), one, zero)
    base = [list(r) for r in a]
    while n:
        if n & 1:
            result = matmul(result, base, zero)
        base = matmul(base, base, zero)
        n >>= 1
    return result


def mat_mod(a, n: int) -> Matrix:
    return [[x % n for x in row] for row in a]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)


def det(m: Sequence[Sequence]):
    """Determinant by fraction-free Bareiss elimination.

    Works for integer, rational and Laurent-polynomial entries (the latter via
    exact division). Returns the ring's zero/one built from the entries.
    """
    n = len(m)
    if n == 0:
        return 1
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    a = [list(r) for r in m]
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return a[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else _exact_div(num, prev)
        prev = a[k][k]
    d = a[n - 1][n - 1]
    return d if sign == 1 else -d


def _exact_div(x, y):
    from .laurent import LaurentPoly

    if isinstance(x, LaurentPoly) or isinstance(y, LaurentPoly):
        if not isinstance(x, LaurentPoly):
            x = LaurentPoly.const(x)
        if not isinstance(y, LaurentPoly):
            y = LaurentPoly.const(y)
        return x.exquo(y)
    if isinstance(x, int) and isinstance(y, int):
        q, r = divmod(x, y)
        if r:
            raise ArithmeticError("inexact integer division in Bareiss step")
        return q
    q = Fraction(x) / Fraction(y)
    return q.numerator if q.denominator == 1 else q


def minor(m, rows: Sequence[int], cols: Sequence[int]):
    return det([[m[i][j] for j in cols] for i in rows])


def adjugate(m: Sequence[Sequence]) -> Matrix:
    n = len(m)
    if n == 0:
        return []
    if n == 1:
        one = m[0][0] * 0 + 1
        return [[one]]
    adj = zeros(n, n)
    for i in range(n):
        for j in range(n):
            rows = [r for r in range(n) if r != j]
            cols = [c for c in range(n) if c != i]
            c = minor(m, rows, cols)
            adj[i][j] = c if (i + j) % 2 == 0 else -c
    return adj


def rref(m: Sequence[Sequence]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows, cols = shape(a)
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def nullspace(m: Sequence[Sequence], ncols: Optional[int] = None) -> Matrix:
    """Basis (as rows) of ``{x : m x = 0}`` over Q."""
    cols = shape(m)[1] if m else (ncols or 0)
    if not m:
        return identity(cols, Fraction(1), Fraction(0))
    a, piv = rref(m)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -a[i][f]
        basis.append(v)
    return basis


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Inverse over Q (entries returned as int when integral)."""
    n = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    r, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [[_tidy(x) for x in row[n:]] for row in r]


def _tidy(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def tidy(m) -> Matrix:
    return [[_tidy(x) for x in row] for row in m]


def solve(m, b) -> Optional[list]:
    """One rational solution of ``m x = b`` or ``None``."""
    rows, cols = shape(m)
    aug = [list(m[i]) + [b[i]] for i in range(rows)]
    a, piv = rref(aug)
    if cols in piv:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(piv):
        x[p] = a[i][cols]
    return x


def maximal_minors(m: Sequence[Sequence]):
    """Yield all ``r x r`` minors of an ``r x c`` matrix (``r <= c``)."""
    r, c = shape(m)
    for cols in combinations(range(c), r):
        yield cols, minor(m, range(r), cols)


def is_unimodular(m) -> bool:
    return len(m) == 0 or det(m) in (1, -1)


def primitive_vector(v: Sequence) -> List[int]:
    """Scale a rational vector to a primitive integer vector (same direction)."""
    from math import gcd

    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    iv = [int(x * den) for x in fr]
    g = 0
    for x in iv:
        g = gcd(g, x)
    if g == 0:
        return iv
    return [x // g for x in iv]


def sign_normalize(v: Sequence[int]) -> List[int]:
    """Make the first nonzero coordinate positive."""
    for x in v:
        if x:
            return list(v) if x > 0 else [-y for y in v]
    return list(v)
