"""Twisted homology of the fiber, the monodromy action on it, and the
twisted Alexander polynomials and torsion of the mapping torus."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from ..exact.laurent import ONE, T, ZERO, LaurentPoly, char_poly_reversed, laurent_doteq, poly_gcd
from ..exact.linalg import identity, inverse, kron, matmul, solve, transpose, zeros
from ..exact.smith import QQt, integer_kernel, smith_form
from .presentation import FiberedPresentation, Representation
from .surface import fox_derivative

Matrix = List[List[int]]


# -- chain level ----------------------------------------------------------


def _ring_to_matrix(elt, rep: Representation) -> Matrix:
    k = rep.k
    out = zeros(k, k)
    for w, c in elt.items():
        m = rep.word(w)
        for i in range(k):
            for j in range(k):
                out[i][j] += c * m[i][j]
    return out


def _block(blocks: Sequence[Sequence[Matrix]], k: int, rows: int, cols: int) -> Matrix:
    out = zeros(rows * k, cols * k)
    for a in range(rows):
        for b in range(cols):
            m = blocks[a][b]
            for i in range(k):
                for j in range(k):
                    out[a * k + i][b * k + j] = m[i][j]
    return out


@dataclass(frozen=True)
class TwistedChains:
    """Row-vector chain complex ``Z^k (x) C_*`` of the fiber plus the chain-level monodromy.

    ``boundary[n]`` maps ``C_n -> C_{n-1}`` (``c -> c @ boundary[n]``);
    ``monodromy[n]`` maps ``C_n -> C_n``.
    """

    dims: Tuple[int, int, int]
    boundary: Dict[int, Matrix]
    monodromy: Dict[int, Matrix]


def twisted_chains(fp: FiberedPresentation) -> TwistedChains:
    s, rep = fp.surface, fp.rep
    k, r = rep.k, s.rank
    I = identity(k)
    closed = s.closed
    dims = (k, r * k, k if closed else 0)
    # d1: block x = rho(x) - 1
    d1 = _block([[[[a - b for a, b in zip(ra, rb)] for ra, rb in zip(rep.matrix(x + 1), I)]] for x in range(r)], k, r, 1)
    boundary = {1: d1}
    if closed:
        rel = s.relator()
        boundary[2] = _block([[_ring_to_matrix(fox_derivative(rel, y + 1), rep) for y in range(r)]], k, 1, r)
    else:
        boundary[2] = zeros(0, r * k)
    Rt = [list(x) for x in rep.t]
    mono = {0: Rt}
    if fp.monodromy_words is not None:
        words = fp.monodromy_words
        blocks = [[matmul(Rt, _ring_to_matrix(fox_derivative(words[x], y + 1), rep)) for y in range(r)] for x in range(r)]
        mono[1] = _block(blocks, k, r, r)
        if closed:
            from .presentation import conjugator_of_relator

            w, e = conjugator_of_relator(words, s.relator())
            mono[2] = [[e * v for v in row] for row in matmul(Rt, rep.word(w))]
        else:
            mono[2] = []
    else:
        # rho is trivial on the fiber, so the chain complex splits as C(S) (x) Z^k
        At = transpose([list(x) for x in fp.monodromy_on_h1]) if r else []
        mono[1] = kron(At, Rt) if r else []
        if closed:
            mono[2] = [[fp.orientation * v for v in row] for row in Rt]
        else:
            mono[2] = []
    tc = TwistedChains(dims, boundary, mono)
    _assert_chain_map(tc)
    return tc


def _assert_chain_map(tc: TwistedChains):
    for n in (1, 2):
        d = tc.boundary[n]
        if not d or not d[0]:
            continue
        lhs = matmul(tc.monodromy[n], d)
        rhs = matmul(d, tc.monodromy[n - 1])
        if lhs != rhs:
            raise AssertionError(f"monodromy is not a chain map in degree {n}")
    if tc.boundary[2] and tc.boundary[1] and tc.boundary[2][0]:
        if any(any(row) for row in matmul(tc.boundary[2], tc.boundary[1])):
            raise AssertionError("boundary of boundary is not zero")


# -- homology over Z --------------------------------------------------------


@dataclass(frozen=True)
class HomologyDegree:
    n: int
    free_rank: int
    torsion: Tuple[int, ...]
    free_basis: Tuple[Tuple[int, ...], ...]  # cycles (chain coordinates) spanning the free quotient
    action: Tuple[Tuple[int, ...], ...]  # f_n^free on column vectors in free_basis coordinates

    def to_json(self) -> Dict:
        return {
            "n": self.n,
            "free_rank": self.free_rank,
            "torsion": [str(d) for d in self.torsion],
            "f_free": [[str(x) for x in r] for r in self.action],
        }


@dataclass(frozen=True)
class TwistedHomologyResult:
    degrees: Tuple[HomologyDegree, ...]

    def __getitem__(self, n: int) -> HomologyDegree:
        return self.degrees[n]

    def to_json(self) -> Dict:
        return {"degrees": [d.to_json() for d in self.degrees]}


def _coords(basis: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    """Integer coordinates of ``v`` in the row basis ``basis``."""
    if not basis:
        if any(v):
            raise AssertionError("vector outside an empty lattice")
        return []
    x = solve(transpose([list(b) for b in basis]), list(v))
    if x is None or any(Fraction(c).denominator != 1 for c in x):
        raise AssertionError("vector outside the cycle lattice")
    return [int(c) for c in x]


def _homology_degree(n: int, d_n: Matrix, d_next: Matrix, dim: int, phi: Matrix) -> HomologyDegree:
    if dim == 0:
        return HomologyDegree(n, 0, (), (), ())
    if d_n and d_n[0]:
        Z = integer_kernel(transpose(d_n))
    else:
        Z = identity(dim)
    if not Z:
        return HomologyDegree(n, 0, (), (), ())
    Bc = [_coords(Z, b) for b in d_next if any(b)]
    if Bc:
        sd = smith_form(Bc)
        V = sd.V
        rk = sd.rank
        torsion = tuple(d for d in sd.invariant_factors[:rk] if d != 1)
    else:
        V = identity(len(Z))
        rk = 0
        torsion = ()
    Vinv = inverse(V)
    Zp = matmul([[int(x) for x in r] for r in Vinv], Z)
    free = Zp[rk:]
    rows = []
    for z in free:
        img = matmul([z], phi)[0] if phi else []
        c = _coords(Zp, img)
        rows.append(c[rk:])
    action = tuple(tuple(r) for r in transpose(rows)) if rows else ()
    return HomologyDegree(n, len(free), torsion, tuple(tuple(z) for z in free), action)


def twisted_homology(fp: FiberedPresentation) -> TwistedHomologyResult:
    """``H_n(S; Z^k)`` for ``n = 0, 1, 2`` with the monodromy on each free part."""
    tc = twisted_chains(fp)
    c0, c1, c2 = tc.dims
    b = tc.boundary
    degs = (
        _homology_degree(0, [], b[1], c0, tc.monodromy[0]),
        _homology_degree(1, b[1], b[2], c1, tc.monodromy[1]),
        _homology_degree(2, b[2], [], c2, tc.monodromy[2]),
    )
    for d in degs:
        if d.action:
            from ..exact.linalg import det

            if det([list(r) for r in d.action]) not in (1, -1):
                raise AssertionError(f"f_{d.n}^free is not invertible over Z")
    return TwistedHomologyResult(degs)


# -- polynomials ------------------------------------------------------------


def monodromy_char_poly(fp: FiberedPresentation, n: int, homology: Optional[TwistedHomologyResult] = None) -> LaurentPoly:
    """``P_n(t) = det(1 - t f_n^free)``."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if n > 2:
        return ONE
    h = homology or twisted_homology(fp)
    p = char_poly_reversed([list(r) for r in h[n].action])
    if not isinstance(p, LaurentPoly):
        p = LaurentPoly.const(p)
    if p.coeff(0) != 1 or (p.degree > 0 and p.leading() not in (1, -1)) or p.low < 0:
        raise AssertionError(f"P_{n} = {p} does not have constant term 1 and leading coefficient +-1")
    return p


def twisted_alexander(fp: FiberedPresentation, n: int, homology: Optional[TwistedHomologyResult] = None) -> LaurentPoly:
    """``Delta_n`` of the mapping torus for the distinguished class, canonical form."""
    return monodromy_char_poly(fp, n, homology).canonical("pm1")


def alexander_polynomials(fp: FiberedPresentation) -> List[LaurentPoly]:
    h = twisted_homology(fp)
    return [twisted_alexander(fp, n, h) for n in range(3)]


@dataclass(frozen=True)
class Torsion:
    numerator: LaurentPoly
    denominator: LaurentPoly

    @property
    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def __str__(self) -> str:
        if self.is_zero:
            return "zero"
        if self.denominator == ONE:
            return f"{self.numerator}"
        return f"({self.numerator})/({self.denominator})"

    def doteq(self, other: "Torsion", unit_group: str = "Q") -> bool:
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        return laurent_doteq(self.numerator * other.denominator, other.numerator * self.denominator, unit_group)

    def to_json(self) -> Dict:
        if self.is_zero:
            return {"torsion": "zero"}
        return {"numerator": str(self.numerator), "denominator": str(self.denominator), "torsion": str(self)}


def make_torsion(num: LaurentPoly, den: LaurentPoly) -> Torsion:
    if num.is_zero():
        return Torsion(ZERO, ONE)
    if den.is_zero():
        raise ZeroDivisionError("torsion with zero denominator")
    g = poly_gcd(num, den, "Z")
    if g.span > 0:
        num, den = num.exquo(g), den.exquo(g)
    return Torsion(num.canonical("pm1"), den.canonical("pm1"))


def reidemeister_torsion(fp: FiberedPresentation) -> Torsion:
    """``prod Delta_odd / prod Delta_even``; ``zero`` when some ``Delta_n = 0``."""
    deltas = alexander_polynomials(fp)
    return torsion_from_deltas(deltas)


def torsion_from_deltas(deltas: Sequence[LaurentPoly]) -> Torsion:
    num, den = ONE, ONE
    for n, d in enumerate(deltas):
        if d.is_zero():
            return Torsion(ZERO, ONE)
        if n % 2:
            num = num * d
        else:
            den = den * d
    return make_torsion(num, den)


def fiberedness_evidence(fp: FiberedPresentation, q: int) -> bool:
    """``Delta_1 mod q`` is nonzero (finite-dimensional degree-1 homology over ``F_q``)."""
    if q < 2 or any(q % p == 0 for p in range(2, int(q**0.5) + 1)):
        raise ValueError(f"{q} is not a prime")
    return not monodromy_char_poly(fp, 1).mod(q).is_zero()


@dataclass(frozen=True)
class DualityPairing:
    left: str
    right: str
    lhs: LaurentPoly
    rhs: LaurentPoly
    ok: bool


def duality_check(fp: FiberedPresentation) -> Dict:
    """Compare ``Delta_n(t)`` against ``bar Delta_m(t^-1)`` for the transpose-inverse rep."""
    d = alexander_polynomials(fp)
    db = alexander_polynomials(fp.with_rep(fp.rep.bar()))
    if fp.surface.closed:
        pairs = [(0, 2), (1, 1), (2, 0)]
    else:
        pairs = [(0, 0), (1, 1)]
    out = []
    for a, b in pairs:
        rhs = db[b].bar()
        out.append(DualityPairing(f"Delta_{a}(t)", f"barDelta_{b}(1/t)", d[a], rhs, laurent_doteq(d[a], rhs, "Q")))
    if not fp.surface.closed:
        out.append(DualityPairing("Delta_2(t)", "1", d[2], ONE, laurent_doteq(d[2], ONE, "Q")))
    orientable = fp.orientation == 1 if fp.surface.closed else fp.orientation != -1
    verdict = "pass" if all(p.ok for p in out) else "fail"
    if not orientable:
        verdict = "skipped"
    return {
        "verdict": verdict,
        "orientable": orientable,
        "pairings": [
            {"lhs": p.left, "rhs": p.right, "lhs_value": str(p.lhs), "rhs_value": str(p.rhs), "ok": p.ok} for p in out
        ],
    }


# -- independent route: mapping-torus complex over Q[t] ----------------------


def mapping_torus_orders(fp: FiberedPresentation) -> List[LaurentPoly]:
    """Orders of ``H_n(M; Q[t^+-1]^k)`` from the mapping-torus chain complex.

    ``D_n = C_n (+) C_{n-1}`` with ``(c, c') -> (c d + c'(1 - t Phi), -c' d)``;
    the order of ``H_n`` is the product of the invariant factors of
    ``D_{n+1} -> D_n`` over ``Q[t]``, or zero when ``H_n`` has positive rank.
    Used as an oracle: it never passes through the free quotients over Z.
    """
    tc = twisted_chains(fp)
    dims = list(tc.dims)

    def C(n):
        return dims[n] if 0 <= n <= 2 else 0

    def lp(x):
        return LaurentPoly.const(x)

    def bd(n):  # C_n -> C_{n-1} as LaurentPoly matrix
        if n < 1 or n > 2 or not C(n) or not C(n - 1):
            return zeros(C(n), C(n - 1), ZERO)
        return [[lp(x) for x in row] for row in tc.boundary[n]]

    def one_minus_t_phi(n):
        m = tc.monodromy[n]
        return [[(ONE if i == j else ZERO) - T * lp(m[i][j]) for j in range(C(n))] for i in range(C(n))]

    def D(n):
        return C(n) + C(n - 1)

    def dD(n):  # D_n -> D_{n-1}
        rows, cols = D(n), D(n - 1)
        M = zeros(rows, cols, ZERO)
        a = bd(n)
        for i in range(C(n)):
            for j in range(C(n - 1)):
                M[i][j] = a[i][j]
        if n - 1 >= 0 and C(n - 1):
            p = one_minus_t_phi(n - 1)
            for i in range(C(n - 1)):
                for j in range(C(n - 1)):
                    M[C(n) + i][j] = p[i][j]
        b = bd(n - 1)
        for i in range(C(n - 1)):
            for j in range(C(n - 2)):
                M[C(n) + i][C(n - 1) + j] = -b[i][j]
        return M

    orders = []
    for n in range(4):
        out_map = dD(n)
        in_map = dD(n + 1)
        rank_out = smith_form(out_map, QQt).rank if out_map and out_map[0] else 0
        ker = D(n) - rank_out
        if in_map and in_map[0]:
            sd = smith_form(in_map, QQt)
            rk, inv = sd.rank, sd.invariant_factors[: sd.rank]
        else:
            rk, inv = 0, []
        if ker > rk:
            orders.append(ZERO)
            continue
        o = ONE
        for f in inv:
            o = o * f
        orders.append(o.canonical("Q"))
    return orders
