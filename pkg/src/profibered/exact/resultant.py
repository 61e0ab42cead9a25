"""Resultants over Z via subresultant pseudo-remainder sequences."""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import List

from .laurent import LaurentPoly


def _dense(p: LaurentPoly) -> List[int]:
    """Coefficient list, constant term first (p must be an integer polynomial)."""
    return p.to_list() if p.low == 0 else [0] * p.low + p.to_list()


def _deg(a: List[int]) -> int:
    return len(a) - 1


def _trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _content(a: List[int]) -> int:
    g = 0
    for x in a:
        g = gcd(g, x)
    return g


def _prem(a: List[int], b: List[int]) -> List[int]:
    """Pseudo-remainder: ``lc(b)^(deg a - deg b + 1) * a mod b``."""
    r = list(a)
    db = _deg(b)
    lb = b[-1]
    e = _deg(a) - db + 1
    while r and _deg(r) >= db:
        lr = r[-1]
        s = _deg(r) - db
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[i + s] -= lr * y
        _trim(r)
        e -= 1
    return [x * lb**e for x in r] if e > 0 else r


def resultant(f: LaurentPoly, g: LaurentPoly) -> int:
    """Sylvester resultant ``Res(f, g)`` of integer polynomials.

    Subresultant PRS (Collins/Brown), all arithmetic in Z; no Sylvester
    determinant is formed.
    """
    if not (f.is_integral() and g.is_integral()):
        raise ValueError("resultant needs integer coefficients")
    if not (f.is_polynomial() and g.is_polynomial()):
        raise ValueError("resultant needs ordinary polynomials")
    if f.is_zero() or g.is_zero():
        return 0
    A, B = _dense(f), _dense(g)
    if _deg(A) == 0 and _deg(B) == 0:
        return 1
    if _deg(A) == 0:
        return A[0] ** _deg(B)
    if _deg(B) == 0:
        return B[0] ** _deg(A)
    a, b = _content(A), _content(B)
    if A[-1] < 0:
        a = -a
    if B[-1] < 0:
        b = -b
    A = [x // a for x in A]
    B = [x // b for x in B]
    t = a ** _deg(B) * b ** _deg(A)
    s = 1
    if _deg(A) < _deg(B):
        A, B = B, A
        if _deg(A) % 2 and _deg(B) % 2:
            s = -1
    g_, h = 1, 1
    while True:
        delta = _deg(A) - _deg(B)
        if _deg(A) % 2 and _deg(B) % 2:
            s = -s
        R = _prem(A, B)
        A = B
        if not R:
            return 0
        div = g_ * h**delta
        B = [x // div for x in R]
        g_ = A[-1]
        h = g_**delta // h ** (delta - 1) if delta >= 1 else g_**delta * h ** (1 - delta)
        if _deg(B) == 0:
            dA = _deg(A)
            h = B[-1] ** dA // h ** (dA - 1) if dA >= 1 else B[-1] ** dA * h ** (1 - dA)
            return s * t * h


def cyclic_resultant(f: LaurentPoly, m: int) -> int:
    """``Res(t^m - 1, f)``: the product of ``f`` over all m-th roots of unity.

    A monomial factor ``t^k`` contributes ``(-1)^((m+1)k)``.
    """
    if f.is_zero():
        raise ValueError("zero polynomial")
    if m < 1:
        raise ValueError("m must be positive")
    if not f.is_integral():
        raise ValueError("cyclic resultant needs integer coefficients")
    k = f.low
    f0 = f.shift(-k)
    sign = -1 if ((m + 1) * k) % 2 else 1
    g = LaurentPoly({m: 1, 0: -1})
    return sign * resultant(g, f0)


def sylvester_resultant(f: LaurentPoly, g: LaurentPoly) -> int:
    """Reference resultant via the Sylvester determinant (slow; for checks)."""
    from .linalg import det

    A, B = _dense(f), _dense(g)
    m, n = _deg(A), _deg(B)
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(A)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(B)):
            row[i + j] = c
        rows.append(row)
    return det(rows)


def totient(n: int) -> int:
    result, p, k = n, 2, n
    while p * p <= k:
        if k % p == 0:
            while k % p == 0:
                k //= p
            result -= result // p
        p += 1
    if k > 1:
        result -= result // k
    return result


@lru_cache(maxsize=None)
def cyclotomic(n: int) -> LaurentPoly:
    """The n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("cyclotomic index must be positive")
    p = LaurentPoly({n: 1, 0: -1})
    for d in range(1, n):
        if n % d == 0:
            p = p.exquo(cyclotomic(d))
    return p


def cyclotomic_indices_up_to_degree(deg: int) -> List[int]:
    """All k with ``deg(Phi_k) <= deg``."""
    if deg < 1:
        return []
    # totient(k) >= sqrt(k/2), so k <= 2 * deg^2 suffices
    return [k for k in range(1, 2 * deg * deg + 3) if totient(k) <= deg]


def strip_cyclotomic(f: LaurentPoly) -> tuple:
    """Split ``f = c * prod Phi_k^{e_k}``; returns ``(c, {k: e_k})``."""
    rest = f.normalized()
    mult = {}
    for k in cyclotomic_indices_up_to_degree(rest.span):
        phi = cyclotomic(k)
        while rest.span >= phi.degree:
            q, r = rest.divmod_poly(phi)
            if r.is_zero() and q.is_integral():
                rest = q
                mult[k] = mult.get(k, 0) + 1
            else:
                break
    return rest, mult
