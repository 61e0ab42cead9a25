"""Candidate pairs for the correspondence battery, read from JSON."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..cones import NormBall
from ..dynamics import LinearQuotient, OrbitTable, TransitionGraph, linear_model
from ..fibered import FiberedPresentation, Representation
from ..groups import FiniteGroup
from ..profinite import SymbolicProfiniteMap, Term, TruncatedProfiniteInt


def load_orbit_table(data: Mapping) -> OrbitTable:
    """An explicit table, or ``{"type": "linear", "matrix": ..., "m_max": ...}``
    with an optional ``quotient`` ``{"group", "e": [..], "t"}``."""
    if data.get("type") == "linear":
        q = None
        if data.get("quotient") is not None:
            qd = data["quotient"]
            grp = FiniteGroup.from_json(qd["group"])
            q = LinearQuotient(grp, tuple(grp.element(x) for x in qd["e"]), grp.element(qd["t"]))
        return linear_model(data["matrix"], int(data.get("m_max", 8)), q)
    return OrbitTable.from_json(data)


@dataclass
class Side:
    presentation: Optional[FiberedPresentation] = None
    ball: Optional[NormBall] = None
    graph: Optional[TransitionGraph] = None
    orbits: Optional[OrbitTable] = None
    fibered_class: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_json(cls, data: Mapping) -> "Side":
        return cls(
            FiberedPresentation.from_json(data["presentation"]) if data.get("presentation") else None,
            NormBall.from_json(data["ball"]) if data.get("ball") else None,
            TransitionGraph.from_json(data["graph"]) if data.get("graph") else None,
            load_orbit_table(data["orbits"]) if data.get("orbits") else None,
            tuple(int(x) for x in data["fibered_class"]) if data.get("fibered_class") is not None else None,
        )


@dataclass
class CorrespondingQuotient:
    """A finite group with maps from both fundamental groups and an integral
    representation of it (right-regular by default)."""

    group: FiniteGroup
    rep: Dict[int, Tuple[Tuple[int, ...], ...]]
    images_a: Dict[str, int]
    images_b: Dict[str, int]

    @classmethod
    def from_json(cls, data: Mapping) -> "CorrespondingQuotient":
        grp = FiniteGroup.from_json(data["group"])
        rep_in = data.get("rep", "regular")
        if rep_in == "regular":
            rep = {g: regular_matrix(grp, g) for g in grp.elements()}
        else:
            rep = {grp.element(k): tuple(tuple(int(x) for x in r) for r in v) for k, v in rep_in.items()}
            for g in grp.elements():
                for h in grp.elements():
                    prod = _mul(rep[g], rep[h])
                    if prod != rep[grp.mul(g, h)]:
                        raise ValueError("quotient rep is not a homomorphism")
        a = {str(k): grp.element(v) for k, v in data["A"].items()}
        b = {str(k): grp.element(v) for k, v in data["B"].items()}
        for side, imgs in (("A", a), ("B", b)):
            if not _generates(grp, list(imgs.values())):
                raise ValueError(f"images of side {side} do not generate the quotient")
        return cls(grp, rep, a, b)

    def representation(self, fp: FiberedPresentation, side: str) -> Representation:
        imgs = self.images_a if side == "A" else self.images_b
        names = fp.surface.generator_names()
        missing = [n for n in names + ["t"] if n not in imgs]
        if missing:
            raise ValueError(f"quotient map of side {side} misses generators {missing}")
        k = len(self.rep[0])
        return Representation(k, tuple(self.rep[imgs[n]] for n in names), self.rep[imgs["t"]], self.group.order)


def _mul(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def _generates(grp: FiniteGroup, gens: Sequence[int]) -> bool:
    seen, frontier = {0}, [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = grp.mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen) == grp.order


def regular_matrix(grp: FiniteGroup, g: int) -> Tuple[Tuple[int, ...], ...]:
    """Right-regular permutation matrix: ``e_h`` goes to ``e_{hg}`` (row vectors)."""
    n = grp.order
    return tuple(tuple(int(grp.mul(h, g) == j) for j in range(n)) for h in range(n))


@dataclass
class PairSpec:
    name: str
    A: Side
    B: Side
    mu: TruncatedProfiniteInt
    psi: Optional[SymbolicProfiniteMap] = None
    epsilon: Dict[str, Fraction] = field(default_factory=dict)
    quotient: Optional[CorrespondingQuotient] = None
    m_max: int = 6
    ladder: Optional[List[Tuple[int, int]]] = None
    fried_len: int = 6

    def __post_init__(self):
        if not self.mu.is_unit:
            raise ValueError(f"mu = {self.mu} is not a unit")

    @classmethod
    def from_json(cls, data: Mapping) -> "PairSpec":
        mu = TruncatedProfiniteInt.from_json(data.get("mu", 1))
        psi = SymbolicProfiniteMap.from_json(data["psi"]) if data.get("psi") else None
        eps = {str(k): Fraction(str(v)) for k, v in data.get("epsilon", {}).items()}
        ladder = [tuple(int(x) for x in r) for r in data["ladder"]] if data.get("ladder") else None
        return cls(
            str(data.get("name", "")),
            Side.from_json(data["A"]),
            Side.from_json(data["B"]),
            mu,
            psi,
            eps,
            CorrespondingQuotient.from_json(data["quotient"]) if data.get("quotient") else None,
            int(data.get("m_max", 6)),
            ladder,
            int(data.get("fried_len", 6)),
        )

    def homology_map(self) -> Optional[SymbolicProfiniteMap]:
        """``Psi_*`` from A-homology to B-homology; the identity times ``z``
        (residue ``mu``) when not given and the dimensions agree."""
        if self.psi is not None:
            return self.psi
        na = _dim(self.A)
        nb = _dim(self.B)
        if na is None or na != nb:
            return None
        I = tuple(tuple(int(i == j) for j in range(na)) for i in range(na))
        return SymbolicProfiniteMap(na, na, (Term(I, "z", self.mu),))

    def specialization(self, psi: SymbolicProfiniteMap) -> Dict[str, Fraction]:
        return {s: self.epsilon.get(s, Fraction(1)) for s in psi.symbols}


def _dim(side: Side) -> Optional[int]:
    if side.ball is not None:
        return side.ball.n
    if side.graph is not None:
        return side.graph.dim
    return None
