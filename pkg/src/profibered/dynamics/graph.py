"""Transition graphs of Markov partitions: cycles, Fried cones and the
polytope of balanced edge measures."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from ..cones import RationalCone

Vec = Tuple[int, ...]


@dataclass(frozen=True)
class Edge:
    name: str
    src: str
    dst: str
    h1: Vec
    label: Optional[object] = None


@dataclass(frozen=True)
class TransitionGraph:
    """Directed multigraph with edges labeled by integral homology vectors."""

    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    dim: int

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise ValueError("duplicate vertex names")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise ValueError("duplicate edge names")
        for e in self.edges:
            if e.src not in vs or e.dst not in vs:
                raise ValueError(f"edge {e.name!r} uses an unknown vertex")
            if len(e.h1) != self.dim:
                raise ValueError(f"edge {e.name!r} has homology of dimension {len(e.h1)}, expected {self.dim}")

    @classmethod
    def build(cls, edges: Sequence[Tuple[str, str, str, Sequence[int]]], dim: Optional[int] = None, vertices=None):
        es = tuple(Edge(n, s, d, tuple(int(x) for x in h)) for n, s, d, h in edges)
        if dim is None:
            dim = len(es[0].h1) if es else 0
        if vertices is None:
            seen: Dict[str, None] = {}
            for e in es:
                seen.setdefault(e.src)
                seen.setdefault(e.dst)
            vertices = tuple(seen)
        return cls(tuple(vertices), es, dim)

    @classmethod
    def from_json(cls, data: Mapping) -> "TransitionGraph":
        edges = []
        for i, e in enumerate(data["edges"]):
            edges.append(
                Edge(str(e.get("name", f"e{i}")), str(e["src"]), str(e["dst"]), tuple(int(x) for x in e.get("h1", [])), e.get("class"))
            )
        dim = int(data.get("dim", len(edges[0].h1) if edges else 0))
        verts = data.get("vertices")
        if verts is None:
            seen: Dict[str, None] = {}
            for e in edges:
                seen.setdefault(e.src)
                seen.setdefault(e.dst)
            verts = list(seen)
        return cls(tuple(str(v) for v in verts), tuple(edges), dim)

    def to_json(self) -> Dict:
        return {
            "dim": self.dim,
            "vertices": list(self.vertices),
            "edges": [
                {"name": e.name, "src": e.src, "dst": e.dst, "h1": [str(x) for x in e.h1], **({"class": e.label} if e.label is not None else {})}
                for e in self.edges
            ],
        }

    def out_edges(self) -> Dict[str, List[int]]:
        out: Dict[str, List[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            out[e.src].append(i)
        return out

    def adjacency_matrix(self) -> List[List[int]]:
        idx = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        M = [[0] * n for _ in range(n)]
        for e in self.edges:
            M[idx[e.src]][idx[e.dst]] += 1
        return M

    def subgraph(self, edge_indices) -> "TransitionGraph":
        keep = sorted(set(edge_indices))
        es = tuple(self.edges[i] for i in keep)
        used = {e.src for e in es} | {e.dst for e in es}
        return TransitionGraph(tuple(v for v in self.vertices if v in used), es, self.dim)

    def components(self) -> List[FrozenSet[str]]:
        """Strongly connected components (Kosaraju)."""
        out = self.out_edges()
        order: List[str] = []
        seen = set()
        for root in self.vertices:
            if root in seen:
                continue
            stack = [(root, iter(out[root]))]
            seen.add(root)
            while stack:
                v, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    order.append(v)
                    stack.pop()
                    continue
                w = self.edges[nxt].dst
                if w not in seen:
                    seen.add(w)
                    stack.append((w, iter(out[w])))
        rev: Dict[str, List[str]] = {v: [] for v in self.vertices}
        for e in self.edges:
            rev[e.dst].append(e.src)
        comps = []
        assigned = set()
        for v in reversed(order):
            if v in assigned:
                continue
            comp = {v}
            assigned.add(v)
            stack = [v]
            while stack:
                x = stack.pop()
                for y in rev[x]:
                    if y not in assigned:
                        assigned.add(y)
                        comp.add(y)
                        stack.append(y)
            comps.append(frozenset(comp))
        return comps

    def nonwandering(self) -> "TransitionGraph":
        """Restriction to edges lying on some cycle."""
        comp_of = {}
        for i, c in enumerate(self.components()):
            for v in c:
                comp_of[v] = i
        keep = [i for i, e in enumerate(self.edges) if comp_of[e.src] == comp_of[e.dst]]
        return self.subgraph(keep)


@dataclass(frozen=True)
class DynamicalCycle:
    edges: Tuple[int, ...]  # edge indices, lexicographically least rotation
    names: Tuple[str, ...]
    homology: Vec

    @property
    def length(self) -> int:
        return len(self.edges)


def _least_rotation(seq: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(seq[i:] + seq[:i] for i in range(len(seq)))


def _is_primitive(seq: Tuple[int, ...]) -> bool:
    n = len(seq)
    for d in range(1, n):
        if n % d == 0 and seq[:d] * (n // d) == seq:
            return False
    return True


def primitive_cycles(g: TransitionGraph, max_len: int) -> List[DynamicalCycle]:
    """All primitive cycles of length ``<= max_len`` up to rotation.

    Each cycle is listed once, starting at its lexicographically least
    rotation; the output is sorted by (length, edge sequence).
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    out_edges = g.out_edges()
    found: List[Tuple[int, ...]] = []
    for first, e0 in enumerate(g.edges):
        # a canonical rotation starts with its minimal edge index
        path = [first]

        def extend(v: str):
            if g.edges[path[-1]].dst == e0.src:
                seq = tuple(path)
                if _least_rotation(seq) == seq and _is_primitive(seq):
                    found.append(seq)
            if len(path) == max_len:
                return
            for j in out_edges[v]:
                if j >= first:
                    path.append(j)
                    extend(g.edges[j].dst)
                    path.pop()

        extend(e0.dst)
    found.sort(key=lambda s: (len(s), s))
    cycles = []
    for seq in found:
        h = [0] * g.dim
        for i in seq:
            h = [a + b for a, b in zip(h, g.edges[i].h1)]
        cycles.append(DynamicalCycle(seq, tuple(g.edges[i].name for i in seq), tuple(h)))
    return cycles


@dataclass(frozen=True)
class FriedConeResult:
    cone: RationalCone
    stabilized: bool
    stable_since: int
    max_len: int

    def to_json(self) -> Dict:
        return {
            "cone": self.cone.to_json(),
            "stabilized": self.stabilized,
            "stable_since": self.stable_since,
            "max_len": self.max_len,
        }


def fried_cone(g: TransitionGraph, max_len: int) -> FriedConeResult:
    """Conical hull of cycle homology classes, with a stabilization flag.

    ``stabilized`` is true when the hull of cycles of length ``<= max_len - 1``
    already equals the final hull; ``stable_since`` is the least such length.
    """
    cycles = primitive_cycles(g, max_len)
    by_len: Dict[int, List[Vec]] = {}
    for c in cycles:
        by_len.setdefault(c.length, []).append(c.homology)
    hulls = []
    gens: List[Vec] = []
    for L in range(0, max_len + 1):
        gens = gens + by_len.get(L, [])
        hulls.append(RationalCone.from_generators(g.dim, sorted(set(gens))))
    final = hulls[-1]
    since = next(L for L in range(max_len + 1) if hulls[L] == final)
    return FriedConeResult(final, since < max_len, since, max_len)


# -- balanced measures ------------------------------------------------------------


@dataclass(frozen=True)
class BalancedPolytope:
    """``{mu >= 0 on edges : sum mu = 1, inflow = outflow at every vertex}``."""

    edge_names: Tuple[str, ...]
    equations: Tuple[Tuple[int, ...], ...]  # rows a with a.mu = 0 (balance)
    circulation_cone: RationalCone
    vertices: Tuple[Tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        if not self.vertices:
            return -1
        return self.circulation_cone.dim - 1

    def faces(self) -> List[FrozenSet[int]]:
        """Nonempty faces, each given by its support (a set of edge indices)."""
        C = self.circulation_cone
        out = []
        for f in C.faces():
            if not f:
                continue
            support = frozenset(e for i in f for e, x in enumerate(C.rays[i]) if x)
            out.append(support)
        return sorted(set(out), key=lambda s: (len(s), sorted(s)))

    def to_json(self) -> Dict:
        return {
            "edges": list(self.edge_names),
            "dim": self.dim,
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "balance_equations": [[str(x) for x in r] for r in self.equations],
            "faces": [[self.edge_names[i] for i in sorted(f)] for f in self.faces()],
        }


def balanced_polytope(g: TransitionGraph) -> BalancedPolytope:
    E = len(g.edges)
    eqs = []
    for v in g.vertices:
        row = [0] * E
        for i, e in enumerate(g.edges):
            if e.dst == v:
                row[i] += 1
            if e.src == v:
                row[i] -= 1
        if any(row):
            eqs.append(tuple(row))
    nonneg = [[int(i == j) for j in range(E)] for i in range(E)]
    C = RationalCone.from_inequalities(E, nonneg, eqs)
    verts = tuple(tuple(Fraction(x, sum(r)) for x in r) for r in C.rays)
    return BalancedPolytope(tuple(e.name for e in g.edges), tuple(eqs), C, verts)


def support_graph(g: TransitionGraph, face) -> TransitionGraph:
    """Nonwandering subgraph carrying the face.

    ``face`` is either a support set of edge indices (from
    :meth:`BalancedPolytope.faces`) or a mapping ``{"zero": [edge names]}``
    naming the edges whose measure vanishes on the face.
    """
    P = balanced_polytope(g)
    if isinstance(face, Mapping):
        names = {e.name: i for i, e in enumerate(g.edges)}
        unknown = [x for x in face.get("zero", []) if x not in names]
        if unknown:
            raise ValueError(f"unknown edges {unknown}")
        zero = {names[x] for x in face.get("zero", [])}
        support = frozenset(
            e for r in P.circulation_cone.rays if not any(r[i] for i in zero) for e, x in enumerate(r) if x
        )
    else:
        support = frozenset(face)
        if support not in set(P.faces()):
            raise ValueError("edge set is not the support of a face")
    return g.subgraph(support)


def cycle_space_dim(g: TransitionGraph) -> int:
    """``E - V + c`` for a nonwandering graph with ``c`` strongly connected pieces."""
    nw = g.nonwandering()
    comps = [c for c in nw.components()]
    return len(nw.edges) - len(nw.vertices) + len(comps)
