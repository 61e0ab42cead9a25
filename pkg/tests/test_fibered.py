
import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from profibered.exact.laurent import LaurentPoly, char_poly_reversed, laurent_doteq
from profibered.fibered import (
    FiberedPresentation,
    Representation,
    SurfaceSpec,
    alexander_polynomials,
    duality_check,
    fiberedness_evidence,
    fox_derivative,
    fox_identity_holds,
    mapping_torus_orders,
    monodromy_char_poly,
    realize_over_z,
    reidemeister_torsion,
    surface_chain_complex,
    twisted_homology,
)
from profibered.fibered.homology import make_torsion
from profibered.fibered.surface import augmentation, format_word, invert_word, parse_word, word_mul
from profibered.harness import PairSpec, load_corpus

P = LaurentPoly.parse
CAT = [[2, 1], [1, 1]]
t = sympy.Symbol("t")


def punctured_cat():
    return FiberedPresentation.from_json(load_corpus("presentation_cat.json"))


def closed_torus(A):
    return FiberedPresentation.make(SurfaceSpec(1, 0), A)


# -- surfaces and Fox calculus ---------------------------------------------------------


def test_chain_complex_ranks():
    assert surface_chain_complex(SurfaceSpec(1, 0))["ranks"] == (1, 2, 1)
    assert surface_chain_complex(SurfaceSpec(1, 1))["ranks"] == (1, 2, 0)
    cc = surface_chain_complex(SurfaceSpec(2, 0))
    assert len(cc["d2"][0]) == 4
    assert all(augmentation(e) == 0 for e in cc["d2"][0])


@pytest.mark.parametrize("g,p", [(0, 1), (0, 3), (1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (3, 0)])
def test_euler_characteristic_bookkeeping(g, p):
    s = SurfaceSpec(g, p)
    r = surface_chain_complex(s)["ranks"]
    assert r[0] - r[1] + r[2] == s.euler_characteristic


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12))
def test_fox_fundamental_identity(w):
    assert fox_identity_holds(w, 3)


def test_fox_derivative_example():
    # d(aba^-1)/da = 1 - aba^-1
    assert fox_derivative((1, 2, -1), 1) == {(): 1, (1, 2, -1): -1}


def test_words():
    names = ["a1", "b1"]
    w = parse_word("a1 b1^-1 a1^2", names)
    assert w == (1, -2, 1, 1)
    assert parse_word(format_word(w, names), names) == w
    assert word_mul(w, invert_word(w)) == ()
    with pytest.raises(ValueError):
        parse_word("a1 x", names)


# -- homology -----------------------------------------------------------------------------


def test_closed_torus_identity_monodromy():
    h = twisted_homology(closed_torus([[1, 0], [0, 1]]))
    assert [h[n].free_rank for n in range(3)] == [1, 2, 1]
    assert [list(r) for r in h[1].action] == [[1, 0], [0, 1]]


def test_punctured_cat_homology():
    fp = punctured_cat()
    h = twisted_homology(fp)
    assert h[0].free_rank == 1 and h[0].torsion == ()
    assert h[1].free_rank == 2
    assert h[2].free_rank == 0
    # the free H_1 action is conjugate to the monodromy
    assert char_poly_reversed([list(r) for r in h[1].action]) == char_poly_reversed(CAT)


def test_sign_representation_homology_against_brute_force():
    # a1 -> a1, b1 -> b1 a1^2 keeps the parity character a1, b1 -> -1
    rep = Representation(1, (((-1,),), ((-1,),)), ((1,),))
    fp = FiberedPresentation.make(SurfaceSpec(1, 1), None, rep, {"a1": "a1", "b1": "b1 a1 a1"})
    h = twisted_homology(fp)
    d1 = sympy.Matrix([[-2], [-2]])  # edge x -> rho(x) - 1
    assert h[1].free_rank == len(d1.T.nullspace())
    assert h[0].torsion == (2,)
    assert h[0].free_rank == 0


def test_char_poly_examples():
    fp = punctured_cat()
    assert monodromy_char_poly(fp, 1) == P("1 - 3t + t^2")
    assert monodromy_char_poly(fp, 2) == P("1")
    assert monodromy_char_poly(closed_torus([[1, 0], [0, 1]]), 1) == P("(1 - t)^2")


def test_torsion_examples():
    tau = reidemeister_torsion(punctured_cat())
    assert tau.doteq(make_torsion(P("t^2 - 3t + 1"), P("1 - t")), "pm1")
    tau = reidemeister_torsion(closed_torus(CAT))
    assert tau.doteq(make_torsion(P("t^2 - 3t + 1"), P("(1 - t)^2")), "pm1")
    sphere = FiberedPresentation.make(SurfaceSpec(0, 1))
    assert alexander_polynomials(sphere)[1] == P("1")


def test_fiberedness_evidence():
    assert fiberedness_evidence(punctured_cat(), 5)
    with pytest.raises(ValueError):
        fiberedness_evidence(punctured_cat(), 4)


def test_invalid_monodromy_rejected():
    with pytest.raises(ValueError, match="not invertible"):
        FiberedPresentation.make(SurfaceSpec(1, 1), [[2, 0], [0, 1]])
    with pytest.raises(ValueError, match="disagrees"):
        FiberedPresentation.make(SurfaceSpec(1, 1), [[1, 0], [0, 1]], words={"a1": "a1 a1 b1", "b1": "a1 b1"})


def test_duality():
    rep = duality_check(punctured_cat())
    assert rep["verdict"] == "pass"
    rep = duality_check(closed_torus(CAT))
    assert rep["verdict"] == "pass"


# -- random punctured-torus bundles ---------------------------------------------------------

MOVES = [
    {"a1": "a1 b1", "b1": "b1"},
    {"a1": "a1", "b1": "b1 a1"},
    {"a1": "b1", "b1": "a1"},
    {"a1": "a1^-1", "b1": "b1"},
]


def _compose(f, g, names=("a1", "b1")):
    # (f after g) on the free group
    fw = {n: parse_word(f[n], names) for n in names}
    out = {}
    for n in names:
        w = []
        for x in parse_word(g[n], names):
            img = fw[names[abs(x) - 1]]
            w += list(img) if x > 0 else list(invert_word(img))
        out[n] = format_word(word_mul(w), names)
    return out


@given(st.lists(st.integers(0, 3), min_size=1, max_size=6))
def test_alexander_matches_char_poly_and_mapping_torus(seq):
    f = {"a1": "a1", "b1": "b1"}
    for i in seq:
        f = _compose(MOVES[i], f)
    fp = FiberedPresentation.make(SurfaceSpec(1, 1), None, None, f)
    A = sympy.Matrix(fp.monodromy_on_h1)
    d = alexander_polynomials(fp)
    oracle = sympy.Poly((sympy.eye(2) - t * A).det(), t)
    assert d[1] == LaurentPoly({m[0]: int(c) for m, c in zip(oracle.monoms(), oracle.coeffs())})
    for a, b in zip(d, mapping_torus_orders(fp)):
        assert laurent_doteq(a, b, "Q")


def test_nontrivial_rep_dual_route():
    pair = PairSpec.from_json(load_corpus("selfpair_s3.json"))
    fp = pair.A.presentation
    fp = fp.with_rep(pair.quotient.representation(fp, "A"))
    d = alexander_polynomials(fp)
    for a, b in zip(d, mapping_torus_orders(fp)):
        assert laurent_doteq(a, b, "Q")
    assert duality_check(fp)["verdict"] in ("pass", "skipped")


def test_realize_over_z():
    # order-3 rotation with a half-integral basis change
    r = [[0, -1], [1, -1]]
    C = sympy.Matrix([[2, 1], [0, 1]])
    conj = C * sympy.Matrix(r) * C.inv()
    assert any(x.q != 1 for x in conj)
    T, sigma = realize_over_z({"g": conj.tolist()})
    assert all(isinstance(x, int) for row in sigma["g"] for x in row)
    Tm = sympy.Matrix(T)
    assert Tm.inv() * conj * Tm == sympy.Matrix(sigma["g"])
