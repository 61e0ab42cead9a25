"""Integral realization of rational representations with finite image."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Sequence, Tuple

from ..exact.linalg import identity, inverse, matmul, transpose
from ..exact.smith import hermite_rows

Matrix = List[List[Fraction]]


def _key(m) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in r) for r in m)


def finite_image(generators: Sequence[Sequence[Sequence]], limit: int = 10_000) -> List[Matrix]:
    """All products of the generators (closure under multiplication)."""
    if not generators:
        return []
    k = len(generators[0])
    e = _key(identity(k))
    seen = {e}
    out = [e]
    frontier = [e]
    gens = [_key(g) for g in generators]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _key(matmul(x, g))
                if y not in seen:
                    seen.add(y)
                    out.append(y)
                    nxt.append(y)
                    if len(out) > limit:
                        raise ValueError("representation image is not finite (or exceeds the search limit)")
        frontier = nxt
    return [[list(r) for r in m] for m in out]


def _lattice_basis(vectors: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    """Basis rows of the Z-span of rational row vectors."""
    den = 1
    for v in vectors:
        for x in v:
            d = Fraction(x).denominator
            den = den * d // gcd(den, d)
    ints = [[int(Fraction(x) * den) for x in v] for v in vectors]
    return [[Fraction(x, den) for x in r] for r in hermite_rows(ints)]


def realize_over_z(generators: Mapping[str, Sequence[Sequence]]) -> Tuple[List[List], Dict[str, List[List[int]]]]:
    """Conjugate a finite-image rational representation into ``GL(k, Z)``.

    Matrices act on column vectors. Returns ``(T, sigma)`` with
    ``sigma[x] = T^-1 rho(x) T`` integral, where the columns of ``T`` span the
    intersection of the lattices ``rho(g) Z^k``. The intersection is computed
    as the dual of the sum of the dual lattices.
    """
    names = list(generators)
    mats = [[[Fraction(x) for x in r] for r in generators[n]] for n in names]
    if not mats:
        return [], {}
    k = len(mats[0])
    image = finite_image(mats)
    # dual lattice of rho(g) Z^k is spanned by the columns of rho(g)^-T
    dual_vectors = []
    for g in image:
        gi = inverse(g)
        dual_vectors.extend(gi)  # rows of g^-1 = columns of g^-T
    S = _lattice_basis(dual_vectors)  # rows
    if len(S) != k:
        raise AssertionError("dual lattice is not full rank")
    # H = dual of the span of the rows of S: the columns of S^-1
    T = inverse(S)
    T = transpose(_lattice_basis(transpose(T)))
    Tinv = inverse(T)
    sigma = {}
    for n, m in zip(names, mats):
        s = matmul(matmul(Tinv, m), T)
        if any(Fraction(x).denominator != 1 for r in s for x in r):
            raise AssertionError("realization is not integral")
        sigma[n] = [[int(x) for x in r] for r in s]
    return [[x.numerator if x.denominator == 1 else x for x in map(Fraction, r)] for r in T], sigma
