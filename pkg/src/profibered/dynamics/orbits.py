"""Periodic orbit tables: indices, Nielsen numbers and twisted Lefschetz numbers.

A record describes one periodic point class of ``f^m`` (one record per fixed
point of ``f^m``).  A record marked ``persistent`` is also a fixed point of
every iterate ``f^(j m)``; its trajectory class there is the ``j``-th power of
its label and its homology vector is scaled by ``j``.  A boolean
``preserved`` applies to every iterate; a mapping iterate -> bool gives the
prong data one iterate at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ..exact.linalg import det, identity, inverse, matpow, sub
from ..exact.smith import smith_form
from ..groups import FiniteGroup


@dataclass(frozen=True)
class OrbitRecord:
    id: str
    period: int
    prongs: int
    preserved: Union[bool, Tuple[Tuple[int, bool], ...]]
    label: Optional[int] = None
    h1: Tuple[int, ...] = ()
    persistent: bool = False
    puncture: bool = False

    def preserved_at(self, m: int) -> bool:
        """Whether ``f^m`` preserves every prong at this point."""
        if isinstance(self.preserved, tuple):
            table = dict(self.preserved)
            if m in table:
                return table[m]
            raise ValueError(f"orbit {self.id!r}: no prong data for iterate {m}")
        return self.preserved


def periodic_index(record: OrbitRecord, m: Optional[int] = None) -> int:
    """Fixed-point index of ``f^m`` at the record: ``1 - k`` if every prong is
    preserved, else ``+1``.  Regular points use ``k = 2``."""
    k = record.prongs
    if k < 1:
        raise ValueError(f"orbit {record.id!r}: prong count must be at least 1, got {k}")
    m = record.period if m is None else m
    return 1 - k if record.preserved_at(m) else 1


@dataclass
class OrbitTable:
    group: FiniteGroup
    records: List[OrbitRecord]
    source: str = "table"

    @classmethod
    def from_json(cls, data: Mapping) -> "OrbitTable":
        grp = FiniteGroup.from_json(data.get("group", {"type": "trivial"}))
        records = []
        for i, r in enumerate(data.get("orbits", [])):
            pres = r.get("preserved", True)
            if isinstance(pres, Mapping):
                pres = tuple(sorted((int(k), bool(v)) for k, v in pres.items()))
            else:
                pres = bool(pres)
            label = r.get("class")
            period = int(r["period"])
            if period < 1:
                raise ValueError(f"orbit {i}: period must be positive")
            records.append(
                OrbitRecord(
                    id=str(r.get("id", i)),
                    period=period,
                    prongs=int(r["prongs"]),
                    preserved=pres,
                    label=None if label is None else grp.element(label),
                    h1=tuple(int(x) for x in r.get("h1", [])),
                    persistent=bool(r.get("persistent", False)),
                    puncture=bool(r.get("puncture", int(r["prongs"]) == 1)),
                )
            )
        return cls(grp, records, data.get("source", "table"))

    def to_json(self) -> Dict:
        out = []
        for r in self.records:
            d = {"id": r.id, "period": r.period, "prongs": r.prongs}
            d["preserved"] = {str(k): v for k, v in r.preserved} if isinstance(r.preserved, tuple) else r.preserved
            if r.label is not None:
                d["class"] = self.group.names[r.label]
            if r.h1:
                d["h1"] = [str(x) for x in r.h1]
            if r.persistent:
                d["persistent"] = True
            if r.puncture:
                d["puncture"] = True
            out.append(d)
        return {"group": self.group.to_json(), "orbits": out}

    def at(self, m: int) -> Iterator[Tuple[OrbitRecord, int, Optional[int], Tuple[int, ...]]]:
        """Yield ``(record, index, label, h1)`` for the fixed points of ``f^m``."""
        for r in self.records:
            if r.period == m:
                yield r, periodic_index(r, m), r.label, r.h1
            elif r.persistent and m % r.period == 0:
                j = m // r.period
                label = None if r.label is None else self.group.power(r.label, j)
                yield r, periodic_index(r, m), label, tuple(j * x for x in r.h1)

    def periods(self) -> List[int]:
        return sorted({r.period for r in self.records})


@dataclass(frozen=True)
class NielsenResult:
    m: int
    nu: Dict[int, int]
    N: int
    flagged: Tuple[str, ...] = ()  # puncture records, excluded from N when index 0

    def to_json(self) -> Dict:
        return {
            "m": self.m,
            "nu": {str(i): str(c) for i, c in sorted(self.nu.items())},
            "N": str(self.N),
            "flagged_punctures": list(self.flagged),
        }


def nielsen_numbers(table: OrbitTable, m: int) -> NielsenResult:
    """``nu_m(i)`` counts period-``m`` records of index ``i``; ``N_m`` sums them.

    Records with index 0 (a preserved one-pronged puncture) are inessential:
    they are listed in ``flagged`` and left out of the counts.
    """
    nu: Dict[int, int] = {}
    flagged = []
    for r, ind, _, _ in table.at(m):
        if r.puncture:
            flagged.append(r.id)
        if ind == 0:
            continue
        nu[ind] = nu.get(ind, 0) + 1
    return NielsenResult(m, nu, sum(nu.values()), tuple(flagged))


# -- stretch factor -----------------------------------------------------------


def _iroot_floor(n: int, k: int) -> int:
    """``floor(n ** (1/k))`` for ``n >= 0``."""
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


@dataclass(frozen=True)
class StretchEntry:
    m: int
    N: int
    lower: Fraction  # exact rational lower bound for N^(1/m), 1/scale resolution
    best_m: int  # period attaining the running max of N_m^(1/m)

    def to_json(self) -> Dict:
        return {
            "m": self.m,
            "N": str(self.N),
            "lower_bound": str(self.lower),
            "running_max_at": self.best_m,
            "display": f"{float(self.lower):.6f}",
        }


def _root_less(a: int, m: int, b: int, n: int) -> bool:
    """``a^(1/m) < b^(1/n)``."""
    return a ** n < b ** m


def stretch_estimate(table: OrbitTable, m_max: int, scale: int = 10 ** 6) -> List[StretchEntry]:
    out = []
    best = None
    for m in range(1, m_max + 1):
        N = nielsen_numbers(table, m).N
        if best is None or _root_less(best[1], best[0], N, m):
            best = (m, N)
        lower = Fraction(_iroot_floor(N * scale ** m, m), scale)
        out.append(StretchEntry(m, N, lower, best[0]))
    return out


# -- twisted Lefschetz numbers --------------------------------------------------

ClassFunction = Union[Mapping[int, Fraction], Callable[[int], Fraction]]


def _evaluate(xi: ClassFunction, g: int) -> Fraction:
    if callable(xi):
        return Fraction(xi(g))
    return Fraction(xi.get(g, 0))


def twisted_lefschetz(table: OrbitTable, m: int, xi: ClassFunction) -> Fraction:
    """``sum xi(label) * index`` over the fixed points of ``f^m``.

    ``xi`` is a function on group elements (or a mapping element -> value); it
    should be constant on conjugacy classes.
    """
    total = Fraction(0)
    for r, ind, label, _ in table.at(m):
        if label is None:
            raise ValueError(f"orbit {r.id!r} has no class label")
        total += _evaluate(xi, label) * ind
    return total


def trivial_character(_g: int) -> Fraction:
    return Fraction(1)


# -- linear model ----------------------------------------------------------------


@dataclass(frozen=True)
class LinearQuotient:
    """Homomorphism ``Z^2 x|_A Z -> Gamma`` given by images of ``e1, e2, t``.

    The semidirect product uses ``t^-1 v t = A v``.
    """

    group: FiniteGroup
    e: Tuple[int, ...]
    t: int

    def check(self, A: Sequence[Sequence[int]]) -> None:
        G = self.group
        n = len(self.e)
        for i in range(n):
            for j in range(n):
                if G.mul(self.e[i], self.e[j]) != G.mul(self.e[j], self.e[i]):
                    raise ValueError("images of the fiber generators do not commute")
        tinv = G.inv(self.t)
        for j in range(n):
            lhs = G.mul(G.mul(tinv, self.e[j]), self.t)
            if lhs != self.vector([A[i][j] for i in range(n)]):
                raise ValueError("quotient is incompatible with the monodromy")

    def vector(self, v: Sequence[int]) -> int:
        G = self.group
        g = G.identity
        for gi, c in zip(self.e, v):
            g = G.mul(g, G.power(gi, c))
        return g


def linear_model(
    A: Sequence[Sequence[int]],
    m_max: int,
    quotient: Optional[LinearQuotient] = None,
) -> OrbitTable:
    """Orbit table of the toral automorphism ``x -> A x`` on ``R^2 / Z^2``.

    Fixed points of ``A^m`` correspond to ``Z^2 / (A^m - I) Z^2``, enumerated
    through the Smith form.  For coset ``z`` the fixed point is
    ``(A^m - I)^-1 z`` and its trajectory class is ``z t^m``.  Every record is
    regular; its index is the sign of ``det(I - A^m)``.
    """
    A = [[int(x) for x in r] for r in A]
    n = len(A)
    if n != 2 or len(A[1]) != 2:
        raise ValueError("linear model needs a 2x2 matrix")
    if abs(det(A)) != 1:
        raise ValueError("matrix must be invertible over Z")
    grp = quotient.group if quotient else FiniteGroup([[0]], names=["e"], name="1")
    if quotient:
        quotient.check(A)
    records = []
    for m in range(1, m_max + 1):
        M = sub(matpow(A, m), identity(n))
        L = det(sub(identity(n), matpow(A, m)))
        if L == 0:
            raise ValueError(f"A^{m} has eigenvalue 1; fixed points are not isolated")
        sf = smith_form(M)
        d = [abs(x) for x in sf.invariant_factors]
        Uinv = [[int(x) for x in r] for r in inverse(sf.U)]
        # M^-1 = adj(M) / D; integer arithmetic keeps the enumeration fast
        D = det(M)
        sgn, D = (1, D) if D > 0 else (-1, -D)
        adj = [[sgn * M[1][1], -sgn * M[0][1]], [-sgn * M[1][0], sgn * M[0][0]]]
        for c0 in range(d[0]):
            for c1 in range(d[1]):
                z = [Uinv[0][0] * c0 + Uinv[0][1] * c1, Uinv[1][0] * c0 + Uinv[1][1] * c1]
                x = [Fraction((r[0] * z[0] + r[1] * z[1]) % D, D) for r in adj]
                label = 0
                if quotient:
                    label = grp.mul(quotient.vector(z), grp.power(quotient.t, m))
                records.append(
                    OrbitRecord(
                        id=f"m{m}:({x[0]},{x[1]})",
                        period=m,
                        prongs=2,
                        preserved=L < 0,
                        label=label,
                        h1=(m,),
                    )
                )
    return OrbitTable(grp, records, source="linear")


def find_quotients(A: Sequence[Sequence[int]], group: FiniteGroup, nontrivial_fiber: bool = True) -> List[LinearQuotient]:
    """All homomorphisms of the linear-model group onto ``group``."""
    out = []
    for e1 in group.elements():
        for e2 in group.elements():
            if nontrivial_fiber and e1 == 0 and e2 == 0:
                continue
            for t in group.elements():
                q = LinearQuotient(group, (e1, e2), t)
                try:
                    q.check(A)
                except ValueError:
                    continue
                if _generates(group, [e1, e2, t]):
                    out.append(q)
    return out


def _generates(group: FiniteGroup, gens: Sequence[int]) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == group.order
