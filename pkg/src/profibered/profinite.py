"""Truncated profinite integers, matrix coefficient modules and the finite
quotients used to compare Laurent polynomials up to Galois-type twists."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .exact.laurent import LaurentPoly, char_poly_reversed, is_reciprocal, laurent_doteq
from .exact.linalg import det, identity, mat_mod, matmul, transpose
from .exact.resultant import cyclic_resultant, cyclotomic, strip_cyclotomic
from .exact.smith import hermite_rows, in_row_lattice, smith_form
from .groups import FiniteGroup


class PrecisionError(ValueError):
    """Raised when a modulus is too coarse for the requested reduction."""


@dataclass(frozen=True)
class TruncatedProfiniteInt:
    """An element of the profinite integers known modulo ``modulus``."""

    residue: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def is_unit(self) -> bool:
        return gcd(self.residue, self.modulus) == 1

    def _check(self, other: "TruncatedProfiniteInt"):
        if not isinstance(other, TruncatedProfiniteInt):
            other = TruncatedProfiniteInt(int(other), self.modulus)
        if other.modulus != self.modulus:
            m = gcd(self.modulus, other.modulus)
            return self.reduce(m), other.reduce(m)
        return self, other

    def __add__(self, other):
        a, b = self._check(other)
        return TruncatedProfiniteInt(a.residue + b.residue, a.modulus)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedProfiniteInt(-self.residue, self.modulus)

    def __sub__(self, other):
        return self + (-other if isinstance(other, TruncatedProfiniteInt) else -int(other))

    def __mul__(self, other):
        a, b = self._check(other)
        return TruncatedProfiniteInt(a.residue * b.residue, a.modulus)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedProfiniteInt":
        if not self.is_unit:
            raise ValueError(f"{self} is not a unit")
        return TruncatedProfiniteInt(pow(self.residue, -1, self.modulus) if self.modulus > 1 else 0, self.modulus)

    def reduce(self, d: int) -> "TruncatedProfiniteInt":
        """Image modulo ``d``; requires ``d | modulus``."""
        if d < 1 or self.modulus % d:
            raise PrecisionError("insufficient profinite precision")
        return TruncatedProfiniteInt(self.residue % d, d)

    def exponent_mod(self, d: int) -> int:
        return self.reduce(d).residue

    def __str__(self) -> str:
        return f"{self.residue} mod {self.modulus}"

    def to_json(self) -> Dict[str, str]:
        return {"residue": str(self.residue), "modulus": str(self.modulus)}

    @classmethod
    def from_json(cls, data) -> "TruncatedProfiniteInt":
        if isinstance(data, (int, str)):
            # bare integer: exact, so any modulus works; use a highly divisible one
            return cls(int(data), _DEFAULT_MODULUS)
        return cls(int(data["residue"]), int(data["modulus"]))


# lcm(1..16): covers the group orders and exponents of the bundled corpus
_DEFAULT_MODULUS = 720720


def nu_power(group: FiniteGroup, g: int, nu: TruncatedProfiniteInt) -> int:
    """``g^nu`` for a profinite exponent; needs ``|G|`` to divide the modulus."""
    n = nu.exponent_mod(group.order)
    return group.power(g, n)


# ---------------------------------------------------------------------------
# symbolic maps and matrix coefficient modules


@dataclass(frozen=True)
class Term:
    matrix: Tuple[Tuple[int, ...], ...]
    symbol: str
    residue: Optional[TruncatedProfiniteInt] = None


@dataclass(frozen=True)
class SymbolicProfiniteMap:
    """``sum_i z_i * Phi_i`` with integer ``b x a`` matrices ``Phi_i``."""

    source_rank: int
    target_rank: int
    terms: Tuple[Term, ...] = field(default_factory=tuple)

    def __post_init__(self):
        syms = [t.symbol for t in self.terms]
        if len(set(syms)) != len(syms):
            raise ValueError("symbols must be pairwise distinct")
        for t in self.terms:
            if len(t.matrix) != self.target_rank or any(len(r) != self.source_rank for r in t.matrix):
                raise ValueError(f"term {t.symbol!r} does not have shape {self.target_rank}x{self.source_rank}")

    @classmethod
    def build(cls, terms: Sequence[Tuple[Sequence[Sequence[int]], str]], residues: Optional[Mapping[str, TruncatedProfiniteInt]] = None):
        residues = residues or {}
        ts = tuple(Term(tuple(tuple(int(x) for x in r) for r in m), s, residues.get(s)) for m, s in terms)
        if not ts:
            raise ValueError("need at least one term to fix the shape")
        b = len(ts[0].matrix)
        a = len(ts[0].matrix[0]) if b else 0
        return cls(a, b, ts)

    @property
    def symbols(self) -> List[str]:
        return [t.symbol for t in self.terms]

    def entry_vectors(self) -> List[List[int]]:
        """One vector per matrix entry, in symbol coordinates (row-major)."""
        return [[t.matrix[i][j] for t in self.terms] for i in range(self.target_rank) for j in range(self.source_rank)]

    def to_json(self) -> Dict:
        out = {"source_rank": self.source_rank, "target_rank": self.target_rank, "terms": []}
        for t in self.terms:
            d = {"symbol": t.symbol, "matrix": [[str(x) for x in r] for r in t.matrix]}
            if t.residue is not None:
                d["residue"] = t.residue.to_json()
            out["terms"].append(d)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "SymbolicProfiniteMap":
        terms = []
        for d in data["terms"]:
            res = TruncatedProfiniteInt.from_json(d["residue"]) if d.get("residue") is not None else None
            terms.append(Term(tuple(tuple(int(x) for x in r) for r in d["matrix"]), d["symbol"], res))
        b = int(data.get("target_rank", len(terms[0].matrix) if terms else 0))
        a = int(data.get("source_rank", len(terms[0].matrix[0]) if terms and terms[0].matrix else 0))
        return cls(a, b, tuple(terms))


@dataclass(frozen=True)
class MCModule:
    rank: int
    basis: Tuple[Tuple[int, ...], ...]
    symbols: Tuple[str, ...]


def mc_module(phi: SymbolicProfiniteMap) -> MCModule:
    """Z-span of the entries of ``phi`` inside the free module on its symbols."""
    vecs = phi.entry_vectors()
    if not phi.terms or not vecs:
        return MCModule(0, (), tuple(phi.symbols))
    basis = hermite_rows(vecs)
    r = smith_form(vecs).rank
    if r != len(basis):
        raise AssertionError("Hermite and Smith ranks disagree")
    return MCModule(r, tuple(tuple(v) for v in basis), tuple(phi.symbols))


class NotRankOne(ValueError):
    pass


def rank_one_factor(phi: SymbolicProfiniteMap) -> Tuple[Dict[str, int], List[List[int]]]:
    """Write ``phi = z * F`` with ``z`` the positive generator of its MC module.

    Returns ``(z, F)`` where ``z`` maps symbols to integer coefficients. The
    generator is normalized with positive first nonzero coordinate; the other
    generator ``-z`` would give ``-F``.
    """
    mc = mc_module(phi)
    if mc.rank != 1:
        raise NotRankOne(f"not rank one (rank {mc.rank})")
    g = list(mc.basis[0])
    if next(x for x in g if x) < 0:
        g = [-x for x in g]
    k = next(i for i, x in enumerate(g) if x)
    F = [[0] * phi.source_rank for _ in range(phi.target_rank)]
    for i in range(phi.target_rank):
        for j in range(phi.source_rank):
            v = [t.matrix[i][j] for t in phi.terms]
            c, r = divmod(v[k], g[k])
            if r or any(v[s] != c * g[s] for s in range(len(g))):
                raise AssertionError("entry outside the MC module")
            F[i][j] = c
    return {s: c for s, c in zip(phi.symbols, g) if c}, F


def assemble(z: Mapping[str, int], F: Sequence[Sequence[int]], symbols: Sequence[str]) -> SymbolicProfiniteMap:
    """Inverse of :func:`rank_one_factor`: the symbolic map ``z * F``."""
    terms = [([[z.get(s, 0) * x for x in row] for row in F], s) for s in symbols]
    return SymbolicProfiniteMap.build(terms)


def generator_residue(phi: SymbolicProfiniteMap, z: Mapping[str, int]) -> Optional[TruncatedProfiniteInt]:
    """Residue of the symbol combination ``z`` from the attached term residues."""
    total = None
    for t in phi.terms:
        c = z.get(t.symbol, 0)
        if not c:
            continue
        if t.residue is None:
            return None
        total = t.residue * c if total is None else total + t.residue * c
    return total


def specialize(phi: SymbolicProfiniteMap, eps: Mapping[str, Fraction]) -> List[List[Fraction]]:
    """``sum eps(z_i) Phi_i`` as a rational matrix."""
    missing = [s for s in phi.symbols if s not in eps]
    if missing:
        raise KeyError(f"specialization missing symbols {missing}")
    out = [[Fraction(0)] * phi.source_rank for _ in range(phi.target_rank)]
    for t in phi.terms:
        e = Fraction(eps[t.symbol])
        if e:
            for i in range(phi.target_rank):
                for j in range(phi.source_rank):
                    out[i][j] += e * t.matrix[i][j]
    return out


def dual_specialize(phi: SymbolicProfiniteMap, eps: Mapping[str, Fraction]) -> List[List[Fraction]]:
    """Transpose of :func:`specialize` (the induced map on cohomology)."""
    return transpose(specialize(phi, eps))


# ---------------------------------------------------------------------------
# the rings (Z/l)[t]/(t^d - 1)


class GroupRingQuotient:
    """``(Z/l)[t]/(t^d - 1)`` with elements as length-``d`` residue vectors."""

    def __init__(self, l: int, d: int):
        if l < 1 or d < 1:
            raise ValueError("l and d must be positive")
        self.l, self.d = l, d

    def reduce(self, p: LaurentPoly, power: int = 1) -> List[int]:
        """Image of ``p(t^power)``."""
        if not p.is_integral():
            raise ValueError("group ring reduction needs integer coefficients")
        v = [0] * self.d
        for e, c in p.items():
            v[(e * power) % self.d] = (v[(e * power) % self.d] + c) % self.l
        return v

    def mul(self, x: Sequence[int], y: Sequence[int]) -> List[int]:
        out = [0] * self.d
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    out[(i + j) % self.d] = (out[(i + j) % self.d] + a * b) % self.l
        return out

    def _ideal_lattice(self, x: Sequence[int]) -> List[List[int]]:
        rows = [list(x[-k:] + x[:-k]) if k else list(x) for k in range(self.d)]
        rows += [[self.l if i == j else 0 for j in range(self.d)] for i in range(self.d)]
        return rows

    def in_ideal(self, x: Sequence[int], gen: Sequence[int]) -> bool:
        """True iff ``x`` lies in the principal ideal generated by ``gen``."""
        return in_row_lattice(list(x), self._ideal_lattice(list(gen)))

    def ideal_basis(self, gen: Sequence[int]) -> List[List[int]]:
        """Hermite basis of the preimage lattice of the ideal in ``Z^d``."""
        return hermite_rows(self._ideal_lattice(list(gen)))


def ideal_equal(a: LaurentPoly, b: LaurentPoly, mu: TruncatedProfiniteInt, l: int, d: int) -> bool:
    """``(a(t^mu)) == (b(t))`` as ideals of ``(Z/l)[t]/(t^d - 1)``."""
    if not mu.is_unit:
        raise ValueError(f"mu = {mu} is not a unit")
    e = mu.exponent_mod(d)
    R = GroupRingQuotient(l, d)
    x, y = R.reduce(a, e), R.reduce(b)
    return R.ideal_basis(x) == R.ideal_basis(y)


# ---------------------------------------------------------------------------
# comparison of reciprocal polynomials


@dataclass(frozen=True)
class FriedVerdict:
    verdict: str  # "equivalent" | "distinguished" | "inconclusive"
    m: Optional[int] = None
    resultants_a: Tuple[int, ...] = ()
    resultants_b: Tuple[int, ...] = ()
    common_cyclotomic: Tuple[Tuple[int, int], ...] = ()

    def __str__(self) -> str:
        return f"distinguished-at {self.m}" if self.verdict == "distinguished" else self.verdict

    def to_json(self) -> Dict:
        return {
            "verdict": str(self),
            "m": self.m,
            "resultants_a": [str(x) for x in self.resultants_a],
            "resultants_b": [str(x) for x in self.resultants_b],
            "common_cyclotomic": {str(k): e for k, e in self.common_cyclotomic},
        }


def fried_compare(a: LaurentPoly, b: LaurentPoly, m_max: int) -> FriedVerdict:
    """Compare two reciprocal integer polynomials through cyclic resultants.

    Both inputs are put in canonical form (lowest exponent 0, positive lowest
    coefficient) and their common cyclotomic factors are divided out; the first
    ``m <= m_max`` at which the cyclic resultants differ separates them. Each
    resultant is a function of the canonical form, so a separation is always
    sound. Equal sequences without a monomial match give ``inconclusive``.
    """
    for name, f in (("a", a), ("b", b)):
        if f.is_zero():
            raise ValueError(f"{name} is the zero polynomial")
        if not f.is_integral():
            raise ValueError(f"{name} must have integer coefficients")
        if not is_reciprocal(f):
            raise ValueError(f"{name} = {f} is not reciprocal")
    if laurent_doteq(a, b, "pm1"):
        return FriedVerdict("equivalent")
    ca, cb = a.canonical("pm1"), b.canonical("pm1")
    ra, ka = strip_cyclotomic(ca)
    rb, kb = strip_cyclotomic(cb)
    common = {k: min(e, kb[k]) for k, e in ka.items() if k in kb}
    for k, e in common.items():
        for _ in range(e):
            ca = ca.exquo(cyclotomic(k))
            cb = cb.exquo(cyclotomic(k))
    ca, cb = ca.canonical("pm1"), cb.canonical("pm1")
    sa, sb = [], []
    for m in range(1, m_max + 1):
        x, y = cyclic_resultant(ca, m), cyclic_resultant(cb, m)
        sa.append(x)
        sb.append(y)
        if x != y:
            return FriedVerdict("distinguished", m, tuple(sa), tuple(sb), tuple(sorted(common.items())))
    return FriedVerdict("inconclusive", None, tuple(sa), tuple(sb), tuple(sorted(common.items())))


# ---------------------------------------------------------------------------
# conjugacy of matrix powers over Z/N


class InconclusiveSearch(RuntimeError):
    pass


def matrix_order_mod(B: Sequence[Sequence[int]], N: int, limit: int = 10**6) -> int:
    n = len(B)
    I = identity(n)
    X = mat_mod(B, N)
    k = 1
    while X != mat_mod(I, N):
        X = mat_mod(matmul(X, B), N)
        k += 1
        if k > limit:
            raise RuntimeError("matrix order exceeds search limit")
    return k


def _unit_mod(x: int, N: int) -> bool:
    return gcd(x % N, N) == 1


def _commuting_module(A, C, N: int):
    """Generators of ``{X mod N : X A == C X}`` as ``(gens, orders)``.

    Every solution is ``sum c_i gens[i]`` with ``0 <= c_i < orders[i]``.
    """
    r = len(A)
    # unknown X[p][q] at index p*r+q; equation (XA - CX)[i][j]
    M = []
    for i in range(r):
        for j in range(r):
            row = [0] * (r * r)
            for q in range(r):
                row[i * r + q] += A[q][j]
            for p in range(r):
                row[p * r + j] -= C[i][p]
            M.append(row)
    sd = smith_form(M)
    V = sd.V
    gens, orders = [], []
    for k in range(r * r):
        dk = sd.invariant_factors[k] if k < len(sd.invariant_factors) else 0
        g = gcd(dk, N)  # gcd(0, N) = N: free coordinate
        step = N // g
        if g == 1:
            continue
        gens.append([(step * V[i][k]) % N for i in range(r * r)])
        orders.append(g)
    return gens, orders


def find_mu_conjugator(A, B, mu: TruncatedProfiniteInt, N: int, exhaustive_limit: int = 10**6, samples: int = 20000, seed: int = 0):
    """Search for ``X`` in ``GL(r, Z/N)`` with ``X A X^-1 == B^mu``.

    Returns ``(X or None, exhaustive)``; ``exhaustive`` is True when the whole
    solution space of the linear equation ``X A = B^mu X`` was scanned.
    """
    r = len(A)
    if any(len(row) != r for row in A) or len(B) != r or any(len(row) != r for row in B):
        raise ValueError("A and B must be square of the same size")
    for name, M in (("A", A), ("B", B)):
        if not _unit_mod(det(M), N):
            raise ValueError(f"{name} is singular mod {N}")
    order = matrix_order_mod(B, N)
    n = mu.exponent_mod(order)
    C = identity(r)
    for _ in range(n):
        C = mat_mod(matmul(C, B), N)
    if _charpoly_mod(A, N) != _charpoly_mod(C, N):
        return None, True
    gens, orders = _commuting_module(mat_mod(A, N), C, N)

    def build(coeffs):
        flat = [0] * (r * r)
        for c, g in zip(coeffs, gens):
            if c:
                flat = [(x + c * y) % N for x, y in zip(flat, g)]
        return [flat[i * r : (i + 1) * r] for i in range(r)]

    size = 1
    for o in orders:
        size *= o
    if size <= exhaustive_limit:
        for coeffs in product(*[range(o) for o in orders]):
            X = build(coeffs)
            if _unit_mod(det(X), N):
                return X, True
        return None, True
    rng = random.Random(seed)
    for _ in range(samples):
        X = build([rng.randrange(o) for o in orders])
        if _unit_mod(det(X), N):
            return X, False
    return None, False


def mu_conjugacy_check(A, B, mu: TruncatedProfiniteInt, N: int, exhaustive_limit: int = 10**6, seed: int = 0) -> bool:
    """True iff ``A`` is conjugate to ``B^mu`` in ``GL(r, Z/N)``.

    ``B^mu`` is ``B^n`` with ``n = mu`` modulo the multiplicative order of
    ``B`` mod ``N``, which must divide the modulus of ``mu``. Raises
    :class:`InconclusiveSearch` when the solution space is too large to scan
    and random sampling found no invertible solution.
    """
    X, exhaustive = find_mu_conjugator(A, B, mu, N, exhaustive_limit=exhaustive_limit, seed=seed)
    if X is not None:
        return True
    if exhaustive:
        return False
    raise InconclusiveSearch("no conjugator found by sampling; solution space too large to scan")


def _charpoly_mod(A, N: int) -> LaurentPoly:
    return char_poly_reversed(A).mod(N)
