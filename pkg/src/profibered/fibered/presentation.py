"""Mapping tori of surface automorphisms together with finite-image
integral representations of their fundamental groups."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from ..exact.linalg import det, identity, inverse, matmul, transpose
from .surface import (
    SurfaceSpec,
    Word,
    exponent_sums,
    format_word,
    invert_word,
    parse_word,
    substitute,
    word_mul,
)

Matrix = List[List[int]]

ORDER_LIMIT = 10_000


def _int_matrix(m, what: str) -> Tuple[Tuple[int, ...], ...]:
    try:
        rows = tuple(tuple(int(x) for x in r) for r in m)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{what}: entries must be integers") from exc
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise ValueError(f"{what}: ragged matrix")
    return rows


def matrix_order(m: Sequence[Sequence[int]], limit: int = ORDER_LIMIT) -> Optional[int]:
    """Multiplicative order of an integer matrix, or ``None`` past ``limit``."""
    n = len(m)
    I = identity(n)
    X = [list(r) for r in m]
    for k in range(1, limit + 1):
        if X == I:
            return k
        X = matmul(X, m)
    return None


@dataclass(frozen=True)
class Representation:
    """Integral matrices for the surface generators and the stable letter.

    Matrices act on row vectors from the right: ``v . g = v rho(g)``.
    """

    k: int
    generators: Tuple[Tuple[Tuple[int, ...], ...], ...]
    t: Tuple[Tuple[int, ...], ...]
    group_order: Optional[int] = None

    @classmethod
    def trivial(cls, rank: int, k: int = 1) -> "Representation":
        I = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
        return cls(k, tuple(I for _ in range(rank)), I, 1)

    def matrix(self, x: int) -> List[List[int]]:
        """``rho`` of a signed 1-based letter."""
        m = self.generators[abs(x) - 1]
        return [list(r) for r in m] if x > 0 else _int_inverse(m)

    def word(self, w: Sequence[int]) -> List[List[int]]:
        out = identity(self.k)
        for x in w:
            out = matmul(out, self.matrix(x))
        return out

    def is_trivial_on_surface(self) -> bool:
        I = [list(r) for r in identity(self.k)]
        return all([list(r) for r in g] == I for g in self.generators)

    def bar(self) -> "Representation":
        """The transpose-inverse representation."""
        gens = tuple(_freeze(transpose(_int_inverse(g))) for g in self.generators)
        return Representation(self.k, gens, _freeze(transpose(_int_inverse(self.t))), self.group_order)

    def to_json(self, names: Sequence[str]) -> Dict:
        return {
            "k": self.k,
            "generators": {n: [[str(x) for x in r] for r in g] for n, g in zip(names, self.generators)},
            "t": [[str(x) for x in r] for r in self.t],
            "group_order": self.group_order,
        }


def _freeze(m) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in r) for r in m)


def _int_inverse(m) -> List[List[int]]:
    inv = inverse([list(r) for r in m])
    if any(isinstance(x, Fraction) for r in inv for x in r):
        raise ValueError("matrix is not invertible over Z")
    return inv


@dataclass(frozen=True)
class FiberedPresentation:
    """A surface bundle over the circle with its distinguished fibered class.

    ``monodromy_on_h1`` acts on column vectors in the generator basis of
    ``H1(S)``. ``monodromy_words``, when present, give the images of the
    surface-group generators under ``f(g) = t^-1 g t``; they are required for
    representations that are nontrivial on the fiber.
    """

    surface: SurfaceSpec
    monodromy_on_h1: Tuple[Tuple[int, ...], ...]
    rep: Representation
    monodromy_words: Optional[Tuple[Word, ...]] = None
    name: str = ""
    orientation: Optional[int] = field(default=None, compare=False)

    @classmethod
    def make(
        cls,
        surface: SurfaceSpec,
        monodromy: Optional[Sequence[Sequence[int]]] = None,
        rep: Optional[Representation] = None,
        words: Optional[Sequence] = None,
        name: str = "",
    ) -> "FiberedPresentation":
        r = surface.rank
        names = surface.generator_names()
        wtuple = None
        if words is not None:
            if isinstance(words, Mapping):
                missing = [n for n in names if n not in words]
                if missing:
                    raise ValueError(f"monodromy_words missing generators {missing}")
                words = [words[n] for n in names]
            if len(words) != r:
                raise ValueError(f"need {r} monodromy words, got {len(words)}")
            wtuple = tuple(parse_word(w, names) for w in words)
            from_words = [exponent_sums(w, r) for w in wtuple]
            wmat = transpose(from_words) if r else []
            if monodromy is None:
                monodromy = wmat
            elif [list(x) for x in _int_matrix(monodromy, "monodromy")] != wmat:
                raise ValueError("monodromy matrix disagrees with the abelianized monodromy words")
        if monodromy is None:
            if r:
                raise ValueError("need a monodromy matrix or monodromy words")
            monodromy = []
        A = _int_matrix(monodromy, "monodromy")
        if len(A) != r or any(len(row) != r for row in A):
            raise ValueError(f"monodromy must be {r}x{r} for genus {surface.genus}, {surface.punctures} punctures")
        if r and det([list(x) for x in A]) not in (1, -1):
            raise ValueError("monodromy is not invertible over Z")
        if rep is None:
            rep = Representation.trivial(r)
        _validate_rep(rep, r)
        orientation = _orientation(surface, A)
        fp = cls(surface, A, rep, wtuple, name, orientation)
        fp._check_compatibility()
        return fp

    # -- checks ---------------------------------------------------------
    def _check_compatibility(self):
        rel = self.surface.relator()
        rep = self.rep
        if rel is not None and rep.word(rel) != identity(rep.k):
            raise ValueError("representation does not kill the surface relator")
        if self.monodromy_words is None:
            if not rep.is_trivial_on_surface():
                raise ValueError("a representation nontrivial on the fiber needs monodromy_words")
            return
        if rel is not None:
            conjugator_of_relator(self.monodromy_words, rel)
        elif not generates_free_group(self.monodromy_words, self.surface.rank):
            raise ValueError("monodromy words do not define an automorphism of the free group")
        T = [list(r) for r in rep.t]
        Tinv = _int_inverse(rep.t)
        for i, w in enumerate(self.monodromy_words):
            lhs = rep.word(w)
            rhs = matmul(matmul(Tinv, rep.matrix(i + 1)), T)
            if lhs != rhs:
                name = self.surface.generator_names()[i]
                raise ValueError(f"rho(f({name})) != rho(t)^-1 rho({name}) rho(t): representation does not extend to the mapping torus")

    @property
    def k(self) -> int:
        return self.rep.k

    def with_rep(self, rep: Representation) -> "FiberedPresentation":
        return FiberedPresentation.make(self.surface, self.monodromy_on_h1, rep, self.monodromy_words, self.name)

    # -- JSON -----------------------------------------------------------
    @classmethod
    def from_json(cls, data: Mapping) -> "FiberedPresentation":
        s = data.get("surface", {})
        surface = SurfaceSpec(int(s.get("genus", 0)), int(s.get("punctures", 0)))
        names = surface.generator_names()
        rep = None
        if data.get("rep") is not None:
            rep = rep_from_json(data["rep"], names)
        return cls.make(surface, data.get("monodromy"), rep, data.get("monodromy_words"), data.get("name", ""))

    def to_json(self) -> Dict:
        names = self.surface.generator_names()
        out = {
            "name": self.name,
            "surface": {"genus": self.surface.genus, "punctures": self.surface.punctures},
            "monodromy": [[str(x) for x in r] for r in self.monodromy_on_h1],
            "rep": self.rep.to_json(names),
        }
        if self.monodromy_words is not None:
            out["monodromy_words"] = {n: format_word(w, names) for n, w in zip(names, self.monodromy_words)}
        return out


def rep_from_json(data: Mapping, names: Sequence[str]) -> Representation:
    k = int(data.get("k", 1))
    I = tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    gens_in = data.get("generators", {})
    if isinstance(gens_in, list):
        if len(gens_in) != len(names):
            raise ValueError(f"rep needs {len(names)} generator matrices")
        gens_in = dict(zip(names, gens_in))
    unknown = [n for n in gens_in if n not in names]
    if unknown:
        raise ValueError(f"rep mentions unknown generators {unknown}")
    gens = tuple(_int_matrix(gens_in[n], f"rep[{n}]") if n in gens_in else I for n in names)
    t = _int_matrix(data["t"], "rep[t]") if data.get("t") is not None else I
    order = data.get("group_order")
    return Representation(k, gens, t, int(order) if order is not None else None)


def _validate_rep(rep: Representation, rank: int):
    if len(rep.generators) != rank:
        raise ValueError(f"representation needs {rank} generator matrices")
    for label, m in [(f"generator {i + 1}", g) for i, g in enumerate(rep.generators)] + [("t", rep.t)]:
        if len(m) != rep.k or any(len(r) != rep.k for r in m):
            raise ValueError(f"rho({label}) must be {rep.k}x{rep.k}")
        if det([list(r) for r in m]) not in (1, -1):
            raise ValueError(f"rho({label}) is not invertible over Z")
        if rep.group_order:
            X = identity(rep.k)
            for _ in range(rep.group_order):
                X = matmul(X, [list(r) for r in m])
            if X != identity(rep.k):
                raise ValueError(f"rho({label}) has order not dividing the declared group order {rep.group_order}")
        elif matrix_order(m) is None:
            raise ValueError(f"rho({label}) does not have finite order")


def _orientation(surface: SurfaceSpec, A) -> Optional[int]:
    """``+1``/``-1`` when the monodromy preserves/reverses the intersection form."""
    if surface.genus == 0 or not A:
        return 1 if surface.closed else None
    J = surface.intersection_form()
    Am = [list(r) for r in A]
    AtJA = matmul(matmul(transpose(Am), J), Am)
    for d in (1, -1):
        if AtJA == [[d * x for x in r] for r in J]:
            return d
    if surface.closed:
        raise ValueError("monodromy does not preserve the intersection form up to sign")
    return None


def conjugator_of_relator(words: Sequence[Word], rel: Word) -> Tuple[Word, int]:
    """Find ``(w, e)`` with ``f(R) == w R^e w^-1`` in the free group."""
    u = substitute(rel, list(words))
    c: List[int] = []
    while len(u) >= 2 and u[0] == -u[-1]:
        c.append(u[0])
        u = u[1:-1]
    for e in (1, -1):
        r = rel if e == 1 else invert_word(rel)
        if len(r) != len(u):
            continue
        for i in range(max(len(r), 1)):
            if tuple(r[i:] + r[:i]) == tuple(u):
                a = r[:i]
                return word_mul(tuple(c), invert_word(a)), e
    raise ValueError("monodromy words do not send the surface relator to a conjugate of itself or its inverse")


def generates_free_group(words: Sequence[Word], rank: int) -> bool:
    """Stallings folding: do the words generate the free group of this rank?"""
    # graph: vertex 0 is the base; edges stored as (src, letter) -> dst for letter > 0
    nxt = 1
    edges: List[Tuple[int, int, int]] = []
    for w in words:
        if not w:
            continue
        v = 0
        for i, x in enumerate(w):
            dst = 0 if i == len(w) - 1 else nxt
            if dst:
                nxt += 1
            edges.append((v, x, dst) if x > 0 else (dst, -x, v))
            v = dst
    parent = list(range(nxt))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    changed = True
    while changed:
        changed = False
        fwd: Dict[Tuple[int, int], int] = {}
        bwd: Dict[Tuple[int, int], int] = {}
        new_edges = set()
        for s, x, d in edges:
            s, d = find(s), find(d)
            for table, key, other in ((fwd, (s, x), d), (bwd, (d, x), s)):
                if key in table and find(table[key]) != find(other):
                    a, b = find(table[key]), find(other)
                    parent[max(a, b)] = min(a, b)
                    changed = True
                else:
                    table[key] = other
            new_edges.add((find(s), x, find(d)))
        edges = sorted({(find(s), x, find(d)) for s, x, d in new_edges})
    verts = {find(v) for v in range(nxt)}
    if len(verts) != 1:
        return False
    letters = sorted(x for _, x, _ in edges)
    return letters == list(range(1, rank + 1))
