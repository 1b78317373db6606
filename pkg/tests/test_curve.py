import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import model, rand_func
from oracles import (
    char2_affine_count,
    count_irreducible,
    places_from_counts,
    residue_at_infinity,
    residue_at_rational,
    weierstrass_count,
    zeta_inv_sq_genus1,
    zeta_inv_sq_p1,
)
from tamemaps.curve import (
    Differential,
    d,
    divisor_of,
    is_separating,
    local_expand,
    residue,
    residue_sum,
    riemann_roch_basis,
    support_places,
    valuation,
    zeta_inv_sq,
)
from tamemaps.errors import CurveError
from tamemaps.poly import Poly, RatFunc


MODELS = [
    ("P1", 2, 1, 0, 0), ("P1", 2, 2, 0, 0), ("P1", 3, 1, 0, 0), ("P1", 5, 1, 0, 0),
    ("EO", 2, 1, 0, 1), ("EO", 2, 1, 1, 1), ("EO", 2, 2, 2, 3),
    ("ES", 2, 1, 0, 1), ("ES", 2, 1, 1, 0), ("ES", 2, 2, 2, 1),
    ("W", 5, 1, 1, 1), ("W", 7, 1, 2, 3),
]


# --- fixed examples ------------------------------------------------------------

def test_separating_examples():
    P1 = model("P1")
    assert is_separating(P1.x())
    assert not is_separating(P1.x() ** 2)
    for a, b in [(0, 1), (1, 1)]:
        assert is_separating(model("EO", 2, 1, a, b).y())


def test_places_examples():
    P1 = model("P1")
    assert [P.literal() for P in P1.places_of_degree(1)] == ["(x; 0)", "(x+1; 1)", "inf"]
    assert [P.literal() for P in P1.places_of_degree(2)] == ["(x^2+x+1; x)"]
    C = model("EO", 2, 1, 0, 1)
    lits = {P.literal() for P in C.places_of_degree(1)}
    assert lits == {"inf", "(x; 0, 1)", "(x+1; 1, 0)", "(x+1; 1, 1)"}


def test_valuation_examples():
    P1 = model("P1")
    x = P1.x()
    assert valuation(x, P1.infinity()) == -1
    zero = P1.places_of_degree(1)[0]
    assert valuation(x ** 2 / (x + 1), zero) == 2
    C = model("EO", 2, 1, 0, 1)
    Q = next(P for P in C.places_of_degree(1) if P.literal() == "(x; 0, 1)")
    assert valuation(C.x(), Q) == 2


def test_local_expand_examples():
    P1 = model("P1")
    x = P1.x()
    s = local_expand(x ** 2 + x ** 3, P1.places_of_degree(1)[0], 8)
    assert [s.coeff(i) for i in range(8)] == [0, 0, 1, 1, 0, 0, 0, 0]
    s = local_expand(x, P1.infinity(), 4)
    assert s.val == -1 and s.coeff(-1) == 1
    S = model("ES", 2, 1, 0, 1)
    s = local_expand(S.x(), S.infinity(), 4)
    assert s.val == -2 and s.coeff(-2) == 1


def test_residue_examples():
    P1 = model("P1")
    x = P1.x()
    zero, one, inf = P1.places_of_degree(1)
    assert residue(Differential(1 / x), zero) == 1
    assert residue(Differential(x ** 2 + 1), zero) == 0
    om = Differential(x / (x ** 2 + x))
    assert residue(om, one) == 1 and residue(om, inf) == 1
    assert residue_sum(om) == 0


def test_riemann_roch_examples():
    P1 = model("P1")
    x = P1.x()
    assert riemann_roch_basis(P1, 3) == [P1.one(), x, x ** 2, x ** 3]
    C = model("ES", 2, 1, 0, 1)
    assert riemann_roch_basis(C, 2) == [C.one(), C.x()]
    assert riemann_roch_basis(C, 3) == [C.one(), C.x(), C.y()]
    for n in range(0, 7):
        assert len(riemann_roch_basis(C, n)) == max(1, n)
        assert len(riemann_roch_basis(P1, n)) == n + 1


def test_zeta_examples():
    assert zeta_inv_sq(model("P1", 3)) == Fraction(256, 729)
    assert zeta_inv_sq(model("P1", 2)) == Fraction(9, 64)
    C = model("EO", 2, 1, 0, 1)
    n1 = char2_affine_count("EO", 0, 1, 1, 0b11) + 1
    assert n1 == 4
    assert zeta_inv_sq(C) == zeta_inv_sq_genus1(2, n1)


def test_model_validation():
    with pytest.raises(CurveError):
        model("EO", 2, 1, 1, 0)
    with pytest.raises(CurveError):
        model("W", 5, 1, 0, 0)
    with pytest.raises(CurveError):
        model("EO", 3, 1, 0, 1)


# --- oracle comparisons --------------------------------------------------------

GF2_MODS = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011}


@pytest.mark.parametrize("kind,a,b", [("EO", 0, 1), ("EO", 1, 1), ("ES", 0, 1), ("ES", 1, 0), ("ES", 1, 1), ("ES", 0, 0)])
def test_place_counts_match_point_enumeration(kind, a, b):
    counts = [char2_affine_count(kind, a, b, m, GF2_MODS[m]) + 1 for m in range(1, 5)]
    C = model(kind, 2, 1, a, b)
    assert [C.count_places(d) for d in range(1, 5)] == places_from_counts(counts)
    assert [len(C.places_of_degree(d)) for d in range(1, 5)] == places_from_counts(counts)
    assert zeta_inv_sq(C) == zeta_inv_sq_genus1(2, counts[0])


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_p1_place_counts(q):
    p = 2 if q in (2, 4, 8) else q
    m = {2: 1, 4: 2, 8: 3}.get(q, 1)
    X = model("P1", p, m)
    assert zeta_inv_sq(X) == zeta_inv_sq_p1(q)
    for dd in range(1, 4 if q <= 5 else 3):
        got = X.count_places(dd)
        counts = [q ** e + 1 for e in range(1, dd + 1)]
        assert got == places_from_counts(counts)[dd - 1]
    if m == 1:
        assert X.count_places(2) == count_irreducible(p, 2)


@pytest.mark.parametrize("A,B,p", [(1, 1, 5), (2, 3, 7), (1, 0, 5)])
def test_weierstrass_points(A, B, p):
    C = model("W", p, 1, A, B)
    assert C.count_places(1) == weierstrass_count(A, B, p)


def test_every_place_has_uniformizer():
    for spec in MODELS:
        C = model(*spec)
        for dd in (1, 2):
            for P in C.places_of_degree(dd):
                assert valuation(P.uniformizer, P) == 1


# --- residues against partial fractions ---------------------------------------

@pytest.mark.parametrize("p", [2, 3, 5])
def test_residues_on_p1_match_oracle(p):
    X = model("P1", p)
    k = X.k
    rng = random.Random(p)
    for _ in range(40):
        num = [rng.randrange(p) for _ in range(rng.randint(1, 5))]
        den = [rng.randrange(p) for _ in range(rng.randint(1, 4))] + [1]
        if not any(num):
            num = [1]
        h = RatFunc(Poly(k, num), Poly(k, den))
        om = Differential(X.elem(h))
        for P in X.places_of_degree(1):
            if P.is_infinite:
                want = residue_at_infinity(list(h.num.c), list(h.den.c), p)
            else:
                want = residue_at_rational(list(h.num.c), list(h.den.c), P.x0, p)
            assert residue(om, P) == want


# --- property tests ------------------------------------------------------------

model_st = st.sampled_from(MODELS)


@settings(max_examples=60, deadline=None)
@given(model_st, st.integers(0, 10 ** 6))
def test_valuation_axioms_and_degree_zero(spec, seed):
    C = model(*spec)
    rng = random.Random(seed)
    f, g = rand_func(C, rng, 2), rand_func(C, rng, 2)
    places = set(support_places(f)) | set(support_places(g)) | {C.infinity()}
    for P in places:
        assert valuation(f * g, P) == valuation(f, P) + valuation(g, P)
        if not (f + g).is_zero():
            assert valuation(f + g, P) >= min(valuation(f, P), valuation(g, P))
    assert divisor_of(f).degree == 0


@settings(max_examples=40, deadline=None)
@given(model_st, st.integers(0, 10 ** 6))
def test_expansion_is_multiplicative(spec, seed):
    C = model(*spec)
    rng = random.Random(seed)
    f, g = rand_func(C, rng, 2), rand_func(C, rng, 2)
    P = rng.choice(C.places_of_degree(1))
    sf, sg, sfg = local_expand(f, P, 6), local_expand(g, P, 6), local_expand(f * g, P, 6)
    assert (sf * sg).equal_to_prec(sfg)


@settings(max_examples=40, deadline=None)
@given(model_st, st.integers(0, 10 ** 6))
def test_residue_theorem_property(spec, seed):
    C = model(*spec)
    rng = random.Random(seed)
    f, g = rand_func(C, rng, 2), rand_func(C, rng, 2)
    assert residue_sum(Differential(f)) == 0
    assert residue_sum(d(g) * f) == 0
