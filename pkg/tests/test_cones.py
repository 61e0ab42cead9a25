from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from profibered.cones import (
    DegenerateBall,
    DegenerateSpecialization,
    NormBall,
    RationalCone,
    brute_force_facets,
    cone_correspondence,
    cover_pullback_norm,
    fan_faces,
    lattice_kernel,
    norm_cones,
    projective_dual,
    thurston_norm,
)
from profibered.harness import load_corpus

SQUARE = NormBall.from_json(load_corpus("ball_square.json"))
HEXAGON = NormBall.from_json(load_corpus("ball_hexagon.json"))
INTERVAL = NormBall.from_json(load_corpus("ball_interval.json"))


@st.composite
def generator_sets(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, 6))
    return n, [[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(k)]


@st.composite
def balls(draw):
    n = draw(st.integers(1, 3))
    vs = draw(st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=4))
    vs = [tuple(v) for v in vs] + [tuple(-x for x in v) for v in vs]
    assume(any(any(v) for v in vs))
    return NormBall(n, tuple(vs))


# -- cones -----------------------------------------------------------------------------


def test_quadrant():
    Q = RationalCone.from_generators(2, [[1, 0], [0, 1], [1, 1]])
    assert Q.rays == ((0, 1), (1, 0))
    assert Q.contains([3, 5]) and not Q.contains([-1, 2])
    assert Q.interior_contains([1, 1]) and not Q.interior_contains([1, 0])
    assert Q.dual() == Q
    assert len(Q.faces()) == 4


def test_lines_and_full_space():
    H = RationalCone.from_generators(2, [[1, 0]], [[0, 1]])
    assert H.lineality_dim == 1 and not H.is_pointed
    F = RationalCone.full(3)
    assert F.dim == 3 and F.lineality_dim == 3
    assert RationalCone.from_inequalities(2, [[1, 0], [-1, 0]]).dim == 1


@given(generator_sets())
def test_double_dual_and_round_trip(data):
    n, gens = data
    C = RationalCone.from_generators(n, gens)
    assert C.dual().dual() == C
    assert RationalCone.from_inequalities(n, C.inequalities, C.equations) == C
    for g in gens:
        assert C.contains(g)
    for a in C.inequalities:
        assert all(sum(Fraction(x) * y for x, y in zip(a, g)) >= 0 for g in gens)


@given(generator_sets())
def test_facets_against_brute_force(data):
    n, gens = data
    C = RationalCone.from_generators(n, gens)
    assume(C.is_pointed and C.rays)
    rays = [list(r) for r in C.rays]
    brute = brute_force_facets(n, rays)
    dd = sorted(frozenset(i for i, r in enumerate(rays) if sum(Fraction(x) * y for x, y in zip(a, r)) == 0) for a in C.inequalities)
    assert sorted(dd, key=sorted) == brute


def test_image():
    Q = RationalCone.from_generators(2, [[1, 0], [0, 1]])
    assert Q.image([[1, 1], [0, 1]]).rays == ((1, 0), (1, 1))


# -- norms ----------------------------------------------------------------------------


def test_square_norm_examples():
    assert thurston_norm(SQUARE, [1, 0]) == 1
    assert thurston_norm(SQUARE, [1, 1]) == 1
    assert thurston_norm(SQUARE, [0, 0]) == 0
    assert SQUARE.norm([3, -5]) == 5


def test_norm_cone_counts():
    assert len(norm_cones(SQUARE)) == 4
    assert len(norm_cones(INTERVAL)) == 2
    assert len(norm_cones(HEXAGON)) == 6
    with pytest.raises(DegenerateBall, match="seminorm has full kernel"):
        norm_cones(NormBall(2, ((0, 0),)))


def test_ball_validation():
    with pytest.raises(ValueError):
        NormBall(2, ((1, 0),))
    with pytest.raises(ValueError):
        NormBall.from_json({"dim": 2, "dual_vertices": [[1, 0], [-1, 0]], "fibered_cones": [7]})


def test_fibered_marking_round_trip():
    again = NormBall.from_json(SQUARE.to_json())
    assert again == SQUARE
    assert sum(nc.fibered for nc in norm_cones(SQUARE)) == 1


def test_cover_pullback_examples():
    assert cover_pullback_norm(SQUARE, 1) == SQUARE
    assert (3, 0) in cover_pullback_norm(SQUARE, 3).dual_vertices


@given(balls(), st.integers(1, 5), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_cover_pullback_scales_norm(ball, d, phi):
    phi = phi[: ball.n]
    assert cover_pullback_norm(ball, d).norm(phi) == d * ball.norm(phi)


@given(balls(), st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.lists(st.integers(-5, 5), min_size=3, max_size=3), st.integers(0, 4))
def test_norm_triangle_and_homogeneity(ball, a, b, c):
    a, b = a[: ball.n], b[: ball.n]
    s = [x + y for x, y in zip(a, b)]
    assert ball.norm(s) <= ball.norm(a) + ball.norm(b)
    assert ball.norm([c * x for x in a]) == c * ball.norm(a)


@given(balls(), st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_cones_cover_covectors(ball, phi):
    phi = phi[: ball.n]
    cones = norm_cones(ball)
    hit = [nc for nc in cones if nc.cone.contains(phi)]
    assert hit
    # the norm is linear on each cone, given by its vertex
    for nc in hit:
        assert ball.norm(phi) == sum(Fraction(x) * y for x, y in zip(nc.vertex, phi))


def test_fan_faces_square():
    faces = fan_faces(SQUARE)
    assert [f.dim for f in faces].count(1) == 4
    assert [f.dim for f in faces].count(2) == 4


# -- projective duals and lattice kernels ---------------------------------------------------


def test_projective_dual_examples():
    Q = RationalCone.from_generators(2, [[1, 0], [0, 1]])
    pd = projective_dual(None, Q)
    assert pd.points == ((0, 1), (1, 0)) and pd.projective_dim == 1
    ray = RationalCone.from_generators(1, [[1]])
    assert projective_dual(None, ray).points == ((1,),)
    # seminorm with one-dimensional kernel in dimension 3
    semi = NormBall(3, ((1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0)))
    assert semi.kernel_dim() == 1
    C = norm_cones(semi)[0].cone
    assert projective_dual(semi, C).codim == 1
    with pytest.raises(ValueError):
        projective_dual(SQUARE, Q.image([[1, 1], [0, 1]]))


@given(balls())
def test_projective_dual_of_norm_is_full(ball):
    assume(ball.is_norm())
    for nc in norm_cones(ball):
        pd = projective_dual(ball, nc.cone)
        assert len(pd.points) >= ball.n
        assert pd.codim == 0
        # every dual point is, up to sign, nonnegative on the cone
        for p in pd.points:
            vals = [sum(Fraction(x) * y for x, y in zip(p, r)) for r in nc.cone.rays]
            assert all(v >= 0 for v in vals) or all(v <= 0 for v in vals)


def test_lattice_kernel_examples():
    assert lattice_kernel([[1, 0]], 2).basis == ((0, 1),)
    assert lattice_kernel([], 2).basis == ((1, 0), (0, 1))
    K = lattice_kernel([[2, 4]], 2)
    assert K.basis in (((2, -1),), ((-2, 1),))
    assert K.is_saturated()


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), max_size=2))
def test_lattice_kernel_saturated(V):
    K = lattice_kernel(V, 3)
    assert K.is_saturated()
    for u in K.basis:
        assert all(sum(a * b for a, b in zip(v, u)) == 0 for v in V)
    # brute-force: every small kernel vector lies in the span of the basis
    import sympy

    B = sympy.Matrix([list(b) for b in K.basis]) if K.basis else None
    for u in product(range(-2, 3), repeat=3):
        if all(sum(a * b for a, b in zip(v, u)) == 0 for v in V) and any(u):
            assert B is not None
            sol = B.T.gauss_jordan_solve(sympy.Matrix(u))[0]
            assert all(x.is_integer for x in sol.subs({s: 0 for s in sol.free_symbols}))


# -- correspondence --------------------------------------------------------------------------


def test_correspondence_examples():
    I = [[1, 0], [0, 1]]
    r = cone_correspondence(SQUARE, SQUARE, I)
    assert r.ok and len(r.matching) == 4 and all(a == b for a, b in r.matching)
    plain = NormBall(2, SQUARE.dual_vertices)
    rot = cone_correspondence(plain, plain, [[0, -1], [1, 0]])
    assert rot.ok and any(a != b for a, b in rot.matching)
    shear = cone_correspondence(SQUARE, SQUARE, [[1, 1], [0, 1]])
    assert not shear.ok and shear.witness["kind"] == "straddle"
    with pytest.raises(DegenerateSpecialization):
        cone_correspondence(SQUARE, SQUARE, [[1, 1], [1, 1]])


def test_correspondence_fibered_marking():
    plain = NormBall(2, SQUARE.dual_vertices)
    r = cone_correspondence(SQUARE, plain, [[1, 0], [0, 1]])
    assert not r.ok and r.witness["kind"] == "fibered marking"


@given(balls())
def test_identity_correspondence(ball):
    assume(ball.is_norm())
    I = [[int(i == j) for j in range(ball.n)] for i in range(ball.n)]
    r = cone_correspondence(ball, ball, I)
    assert r.ok and all(a == b for a, b in r.matching)
