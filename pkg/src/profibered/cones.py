"""Exact rational polyhedral cones, Thurston-norm balls and their fans.

Cones are converted between generator and half-space form with the
double-description method over ``Fraction``. Every stored vector is a
primitive integer vector; rays are taken modulo the lineality space and
facet normals modulo the orthogonal complement of the span.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from .exact.linalg import det, inverse, matmul, nullspace, rank, rref, transpose
from .exact.smith import hermite_rows, integer_kernel, smith_form

Vec = Tuple[int, ...]


# -- vector helpers -----------------------------------------------------------


def _dot(a, b):
    return sum((x * y for x, y in zip(a, b)), 0)


def primitive(v: Sequence) -> Vec:
    """Positive multiple of ``v`` that is a primitive integer vector."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    iv = [int(x * den) for x in fr]
    g = 0
    for x in iv:
        g = gcd(g, x)
    return tuple(x // g for x in iv) if g else tuple(iv)


def sign_canonical(v: Sequence) -> Vec:
    """Primitive integer vector with positive first nonzero coordinate."""
    p = primitive(v)
    for x in p:
        if x:
            return p if x > 0 else tuple(-y for y in p)
    return p


def subspace_basis(vectors: Iterable[Sequence]) -> List[Vec]:
    """Canonical basis of a rational span: rows of the RREF, made primitive."""
    vs = [list(map(Fraction, v)) for v in vectors]
    vs = [v for v in vs if any(v)]
    if not vs:
        return []
    r, piv = rref(vs)
    return [primitive(row) for row in r[: len(piv)]]


def _project_out(v: Sequence, basis: Sequence[Sequence]) -> List[Fraction]:
    """Orthogonal projection of ``v`` onto the complement of ``span(basis)``."""
    v = [Fraction(x) for x in v]
    if not basis:
        return v
    B = [[Fraction(x) for x in b] for b in basis]
    G = matmul(B, transpose(B))
    Ginv = inverse(G)
    c = [sum(Ginv[i][j] * _dot(B[j], v) for j in range(len(B))) for i in range(len(B))]
    return [v[k] - sum(c[i] * B[i][k] for i in range(len(B))) for k in range(len(v))]


# -- double description ---------------------------------------------------------


def double_description(inequalities: Sequence[Sequence], n: int, equations: Sequence[Sequence] = ()) -> Tuple[List[Vec], List[Vec]]:
    """Generators ``(lines, rays)`` of ``{x : a.x >= 0, e.x = 0}``.

    Constraints are inserted one at a time into the initial cone ``R^n``;
    new rays come from adjacent pairs of rays on opposite sides, adjacency
    decided by the algebraic rank test on their common tight constraints.
    """
    cons: List[List[Fraction]] = []
    for e in equations:
        cons.append([Fraction(x) for x in e])
        cons.append([-Fraction(x) for x in e])
    cons += [[Fraction(x) for x in a] for a in inequalities]
    lines: List[List[Fraction]] = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rays: List[List[Fraction]] = []
    done: List[List[Fraction]] = []
    for a in cons:
        if len(a) != n:
            raise ValueError(f"constraint of length {len(a)} in dimension {n}")
        if not any(a):
            done.append(a)
            continue
        idx = next((i for i, l in enumerate(lines) if _dot(a, l) != 0), None)
        if idx is not None:
            l0 = lines.pop(idx)
            v0 = _dot(a, l0)
            if v0 < 0:
                l0 = [-x for x in l0]
                v0 = -v0
            lines = [[x - _dot(a, l) / v0 * y for x, y in zip(l, l0)] for l in lines]
            rays = [[x - _dot(a, r) / v0 * y for x, y in zip(r, l0)] for r in rays]
            rays.append(l0)
            done.append(a)
            rays = _dedupe(rays)
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [i for i, s in enumerate(vals) if s > 0]
        neg = [i for i, s in enumerate(vals) if s < 0]
        new = [rays[i] for i, s in enumerate(vals) if s >= 0]
        if pos and neg:
            tight = [frozenset(j for j, c in enumerate(done) if _dot(c, r) == 0) for r in rays]
            target = n - len(lines) - 2
            for p in pos:
                for q in neg:
                    common = tight[p] & tight[q]
                    if len(common) < target:
                        continue
                    if any(
                        i not in (p, q) and common <= tight[i] for i in range(len(rays))
                    ):
                        continue
                    if target > 0 and rank([done[j] for j in common]) != target:
                        continue
                    sp, sq = vals[p], -vals[q]
                    new.append([sp * y + sq * x for x, y in zip(rays[p], rays[q])])
        rays = _dedupe(new)
        done.append(a)
    lines_out = subspace_basis(lines)
    rays_out = sorted({primitive(_project_out(r, lines_out)) for r in rays} - {tuple([0] * n)})
    return lines_out, rays_out


def _dedupe(rays: List[List[Fraction]]) -> List[List[Fraction]]:
    seen = set()
    out = []
    for r in rays:
        if not any(r):
            continue
        key = primitive(r)
        if key not in seen:
            seen.add(key)
            out.append([Fraction(x) for x in key])
    return out


# -- cones ------------------------------------------------------------------------


@dataclass(frozen=True)
class RationalCone:
    """A polyhedral cone ``cone(rays) + span(lines)`` in ``R^n``, both forms stored."""

    n: int
    rays: Tuple[Vec, ...]
    lines: Tuple[Vec, ...]
    inequalities: Tuple[Vec, ...]
    equations: Tuple[Vec, ...]

    @classmethod
    def from_generators(cls, n: int, rays: Iterable[Sequence], lines: Iterable[Sequence] = ()) -> "RationalCone":
        rays = [list(r) for r in rays]
        lines = [list(l) for l in lines]
        # dual cone {y : r.y >= 0, l.y = 0}; its generators are the facets
        dl, dr = double_description(rays, n, lines)
        return cls._from_both(n, dl, dr)

    @classmethod
    def from_inequalities(cls, n: int, inequalities: Iterable[Sequence], equations: Iterable[Sequence] = ()) -> "RationalCone":
        lines, rays = double_description(list(inequalities), n, list(equations))
        # recompute the irredundant H-form from the generators
        dl, dr = double_description(rays, n, lines)
        return cls(n, tuple(rays), tuple(lines), tuple(dr), tuple(dl))

    @classmethod
    def _from_both(cls, n, dual_lines, dual_rays):
        lines, rays = double_description(dual_rays, n, dual_lines)
        return cls(n, tuple(rays), tuple(lines), tuple(dual_rays), tuple(dual_lines))

    @classmethod
    def full(cls, n: int) -> "RationalCone":
        return cls.from_generators(n, [], [[int(i == j) for j in range(n)] for i in range(n)])

    # -- queries ---------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.n - len(self.equations)

    @property
    def lineality_dim(self) -> int:
        return len(self.lines)

    @property
    def is_pointed(self) -> bool:
        return not self.lines

    def contains(self, x: Sequence) -> bool:
        return all(_dot(a, x) >= 0 for a in self.inequalities) and all(_dot(e, x) == 0 for e in self.equations)

    def interior_contains(self, x: Sequence) -> bool:
        """Relative interior membership."""
        return all(_dot(a, x) > 0 for a in self.inequalities) and all(_dot(e, x) == 0 for e in self.equations)

    def interior_point(self) -> Vec:
        """A point of the relative interior (sum of the rays)."""
        s = [0] * self.n
        for r in self.rays:
            s = [x + y for x, y in zip(s, r)]
        return tuple(s)

    def key(self) -> Tuple:
        return (self.n, self.rays, self.lines)

    def __eq__(self, other):
        return isinstance(other, RationalCone) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def dual(self) -> "RationalCone":
        """``{y : y.x >= 0 for all x in C}``."""
        return RationalCone(self.n, self.inequalities, self.equations, self.rays, self.lines)

    def intersect(self, other: "RationalCone") -> "RationalCone":
        return RationalCone.from_inequalities(
            self.n, list(self.inequalities) + list(other.inequalities), list(self.equations) + list(other.equations)
        )

    def image(self, T: Sequence[Sequence]) -> "RationalCone":
        """Image under ``x -> T x``."""
        m = len(T)
        img = lambda v: [sum(Fraction(T[i][j]) * v[j] for j in range(len(v))) for i in range(m)]
        return RationalCone.from_generators(m, [img(r) for r in self.rays], [img(l) for l in self.lines])

    def faces(self) -> List[FrozenSet[int]]:
        """Face lattice as sets of ray indices (each face also contains the lineality).

        Sorted by size; the last entry is the whole cone.
        """
        inc = [frozenset(i for i, r in enumerate(self.rays) if _dot(a, r) == 0) for a in self.inequalities]
        allr = frozenset(range(len(self.rays)))
        faces = {allr}
        frontier = [allr]
        while frontier:
            nxt = []
            for f in frontier:
                for facet in inc:
                    g = f & facet
                    if g != f and g not in faces:
                        faces.add(g)
                        nxt.append(g)
            frontier = nxt
        return sorted(faces, key=lambda s: (len(s), sorted(s)))

    def face_cone(self, face: FrozenSet[int]) -> "RationalCone":
        return RationalCone.from_generators(self.n, [self.rays[i] for i in sorted(face)], self.lines)

    def to_json(self) -> Dict:
        s = lambda vs: [[str(x) for x in v] for v in vs]
        return {
            "dim": self.n,
            "rays": s(self.rays),
            "lines": s(self.lines),
            "inequalities": s(self.inequalities),
            "equations": s(self.equations),
        }


def brute_force_facets(n: int, gens: Sequence[Sequence[int]]) -> List[FrozenSet[int]]:
    """Facets of ``cone(gens)`` as sets of tight generator indices.

    Independent of :func:`double_description`: every ``(d-1)``-subset of
    generators spanning a hyperplane of the span is tested directly.
    """
    W = subspace_basis(gens)
    d = len(W)
    if d == 0:
        return []
    # coordinates in the basis W: RREF rows vanish on the other pivot columns
    _, piv = rref([list(w) for w in W])
    coords = [[Fraction(g[piv[i]], W[i][piv[i]]) for i in range(d)] for g in gens]
    facets = set()
    for sub in combinations(range(len(gens)), d - 1):
        M = [coords[i] for i in sub]
        if d > 1 and rank(M) != d - 1:
            continue
        ns = nullspace(M, d) if M else [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
        if len(ns) != 1:
            continue
        y = ns[0]
        vals = [_dot(y, c) for c in coords]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            if any(vals):
                facets.add(frozenset(i for i, v in enumerate(vals) if v == 0))
    return sorted(facets, key=sorted)


# -- norm balls -----------------------------------------------------------------


class DegenerateBall(ValueError):
    pass


@dataclass(frozen=True)
class NormBall:
    """The (semi)norm ``phi -> max_v phi(v)`` over integral dual vertices ``v``."""

    n: int
    dual_vertices: Tuple[Vec, ...]
    fibered: FrozenSet[Vec] = field(default_factory=frozenset)

    def __post_init__(self):
        vs = set(self.dual_vertices)
        if any(len(v) != self.n for v in vs):
            raise ValueError(f"dual vertices must have dimension {self.n}")
        missing = [v for v in vs if tuple(-x for x in v) not in vs]
        if missing:
            raise ValueError(f"dual vertices not symmetric about the origin: {list(missing[0])} lacks its negative")
        object.__setattr__(self, "dual_vertices", tuple(sorted(vs)))
        bad = [v for v in self.fibered if v not in vs]
        if bad:
            raise ValueError(f"fibered marking {list(bad[0])} is not a dual vertex")

    @classmethod
    def from_json(cls, data: Mapping) -> "NormBall":
        n = int(data["dim"])
        vs = [tuple(int(x) for x in v) for v in data.get("dual_vertices", [])]
        ball = cls(n, tuple(vs))
        marked = set(tuple(int(x) for x in v) for v in data.get("fibered_vertices", []))
        if data.get("fibered_cones"):
            verts = ball.vertices()
            for i in data["fibered_cones"]:
                i = int(i)
                if not 0 <= i < len(verts):
                    raise ValueError(f"fibered cone index {i} out of range (ball has {len(verts)} top cones)")
                marked.add(verts[i])
        return cls(n, tuple(vs), frozenset(marked))

    def to_json(self) -> Dict:
        verts = self.vertices() if self.dual_vertices and any(any(v) for v in self.dual_vertices) else []
        return {
            "dim": self.n,
            "dual_vertices": [[str(x) for x in v] for v in self.dual_vertices],
            "fibered_cones": [i for i, v in enumerate(verts) if v in self.fibered],
        }

    def norm(self, phi: Sequence) -> Fraction:
        return thurston_norm(self, phi)

    def kernel_dim(self) -> int:
        return self.n - len(subspace_basis(self.dual_vertices))

    def is_norm(self) -> bool:
        return self.kernel_dim() == 0

    def vertices(self) -> List[Vec]:
        """Vertices of the dual polytope, sorted; one top cone per vertex."""
        return [v for v, _ in _vertex_cones(self)]

    def transformed(self, T: Sequence[Sequence[int]]) -> "NormBall":
        """Ball whose norm is ``phi -> ||T^t phi||`` (dual vertices ``T v``)."""
        img = lambda v: tuple(sum(T[i][j] * v[j] for j in range(len(v))) for i in range(len(T)))
        return NormBall(len(T), tuple(img(v) for v in self.dual_vertices), frozenset(img(v) for v in self.fibered))


def thurston_norm(ball: NormBall, phi: Sequence) -> Fraction:
    if len(phi) != ball.n:
        raise ValueError(f"covector has dimension {len(phi)}, ball has {ball.n}")
    vals = [_dot([Fraction(x) for x in phi], v) for v in ball.dual_vertices]
    best = max(vals, default=Fraction(0))
    return max(best, Fraction(0))


def cover_pullback_norm(ball: NormBall, d: int) -> NormBall:
    if d < 1:
        raise ValueError("covering degree must be positive")
    s = lambda v: tuple(d * x for x in v)
    return NormBall(ball.n, tuple(s(v) for v in ball.dual_vertices), frozenset(s(v) for v in ball.fibered))


def _vertex_cones(ball: NormBall) -> List[Tuple[Vec, RationalCone]]:
    vs = ball.dual_vertices
    if not vs or not any(any(v) for v in vs):
        raise DegenerateBall("seminorm has full kernel")
    out = []
    for v in vs:
        ineqs = [[a - b for a, b in zip(v, w)] for w in vs if w != v]
        C = RationalCone.from_inequalities(ball.n, ineqs)
        if C.dim == ball.n:
            out.append((v, C))
    return out


@dataclass(frozen=True)
class NormCone:
    index: int
    vertex: Vec
    cone: RationalCone
    fibered: bool


def norm_cones(ball: NormBall) -> List[NormCone]:
    """Top-dimensional cones on which the norm is linear, one per dual vertex."""
    return [NormCone(i, v, C, v in ball.fibered) for i, (v, C) in enumerate(_vertex_cones(ball))]


def fan_faces(ball: NormBall) -> List[RationalCone]:
    """All cones of the norm fan (faces of the top cones), deduplicated."""
    seen = {}
    for nc in norm_cones(ball):
        for f in nc.cone.faces():
            c = nc.cone.face_cone(f)
            seen.setdefault(c.key(), c)
    return sorted(seen.values(), key=lambda c: (c.dim, c.key()))


@dataclass(frozen=True)
class ProjectiveDualPolytope:
    points: Tuple[Vec, ...]  # vertices as canonical projective points
    faces: Tuple[Tuple[int, ...], ...]
    projective_dim: int
    codim: int

    def to_json(self) -> Dict:
        return {
            "points": [[str(x) for x in p] for p in self.points],
            "faces": [list(f) for f in self.faces],
            "projective_dim": self.projective_dim,
            "codim": self.codim,
        }


def projective_dual(ball: Optional[NormBall], C: RationalCone) -> ProjectiveDualPolytope:
    """Projectivized dual cone of ``C``.

    When a ball is supplied, ``C`` must be one of its top-dimensional cones.
    """
    if C.dim != C.n:
        raise ValueError("cone is not top-dimensional")
    if ball is not None:
        if not any(nc.cone == C for nc in norm_cones(ball)):
            raise ValueError("cone is not a top-dimensional norm cone of the ball")
    D = C.dual()
    pts = [sign_canonical(r) for r in D.rays]
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    relabel = {old: new for new, old in enumerate(order)}
    faces = sorted({tuple(sorted(relabel[i] for i in f)) for f in D.faces() if f}, key=lambda f: (len(f), f))
    pdim = D.dim - 1
    return ProjectiveDualPolytope(tuple(pts[i] for i in order), tuple(faces), pdim, (C.n - 1) - pdim)


@dataclass(frozen=True)
class LatticeKernel:
    basis: Tuple[Vec, ...]

    def is_saturated(self) -> bool:
        if not self.basis:
            return True
        inv = smith_form([list(b) for b in self.basis]).invariant_factors
        return all(d == 1 for d in inv)


def lattice_kernel(covectors: Sequence[Sequence], n: int) -> LatticeKernel:
    """``{u in Z^n : phi(u) = 0 for all phi in V}`` as a Hermite-reduced basis."""
    rows = [list(primitive(v)) for v in covectors if any(Fraction(x) for x in v)]
    if any(len(r) != n for r in rows):
        raise ValueError(f"covectors must have dimension {n}")
    if not rows:
        K = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        K = integer_kernel(rows)
    return LatticeKernel(tuple(tuple(r) for r in hermite_rows(K)))


# -- correspondence --------------------------------------------------------------


class DegenerateSpecialization(ValueError):
    pass


@dataclass(frozen=True)
class CorrespondenceResult:
    ok: bool
    matching: Tuple[Tuple[int, int], ...] = ()
    witness: Optional[Dict] = None

    def to_json(self) -> Dict:
        return {"ok": self.ok, "matching": [list(p) for p in self.matching], "witness": self.witness}


def cone_correspondence(ball_a: NormBall, ball_b: NormBall, T: Sequence[Sequence]) -> CorrespondenceResult:
    """Does ``T`` (B-covectors to A-covectors) carry the fan of B onto the fan of A?

    Success returns pairs ``(index in B, index in A)``. Failure returns a
    witness naming the first B-cone whose image is not an A-cone, the A-cones
    its image rays fall into, or the fibered marking that does not match.
    """
    if len(T) != ball_a.n or any(len(r) != ball_b.n for r in T):
        raise ValueError(f"T must be {ball_a.n}x{ball_b.n}")
    if ball_a.n != ball_b.n or det([[Fraction(x) for x in r] for r in T]) == 0:
        raise DegenerateSpecialization("degenerate specialization")
    ca, cb = norm_cones(ball_a), norm_cones(ball_b)
    by_key = {nc.cone.key(): nc for nc in ca}
    matching = []
    used = set()
    for nb in cb:
        img = nb.cone.image(T)
        na = by_key.get(img.key())
        if na is None:
            hits = []
            for r in img.rays:
                hits.append({"ray": [str(x) for x in r], "a_cones": [x.index for x in ca if x.cone.contains(r)]})
            straddle = sorted({i for h in hits for i in h["a_cones"]})
            return CorrespondenceResult(
                False,
                tuple(matching),
                {"kind": "straddle", "b_cone": nb.index, "b_vertex": [str(x) for x in nb.vertex], "image_rays": hits, "a_cones_met": straddle},
            )
        if na.index in used:
            return CorrespondenceResult(False, tuple(matching), {"kind": "not injective", "b_cone": nb.index, "a_cone": na.index})
        if na.fibered != nb.fibered:
            return CorrespondenceResult(
                False,
                tuple(matching),
                {"kind": "fibered marking", "b_cone": nb.index, "a_cone": na.index, "b_fibered": nb.fibered, "a_fibered": na.fibered},
            )
        used.add(na.index)
        matching.append((nb.index, na.index))
    if len(used) != len(ca):
        return CorrespondenceResult(
            False, tuple(matching), {"kind": "not surjective", "unmatched_a_cones": sorted(set(range(len(ca))) - used)}
        )
    return CorrespondenceResult(True, tuple(matching))
