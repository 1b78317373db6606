import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import model, rand_func
from tamemaps.curve import pole_places, valuation
from tamemaps.errors import NotPseudotame, NotSeparating, OddIndexRequired
from tamemaps.symbol import GammaElem, gamma_apply, same_orbit, sy
from tamemaps.tame import (
    belyi_map,
    branch_locus,
    dx_order,
    is_pseudotame,
    is_simply_ramified,
    is_tame,
    map_degree,
    pseudotame_at,
    pseudotame_to_tame,
    ramification_profile,
    riemann_hurwitz_check,
)


def profile(f):
    pr = ramification_profile(f)
    return pr.degree, [(en.place.literal(), en.e, en.wild, en.image.literal()) for en in pr.entries]


def lits(places):
    return sorted(P.literal() for P in places)


# --- fixed examples ------------------------------------------------------------

def test_profile_examples():
    x3 = model("P1", 3).x()
    assert profile(x3 ** 2) == (2, [("(x; 0)", 2, False, "(x; 0)"), ("inf", 2, False, "inf")])
    x = model("P1").x()
    assert profile(x ** 2) == (2, [("(x; 0)", 2, True, "(x; 0)"), ("inf", 2, True, "inf")])
    assert profile(x ** 3 + x) == (3, [("(x+1; 1)", 2, True, "(x; 0)"), ("inf", 3, False, "inf")])


def test_tame_and_simple_examples():
    x3 = model("P1", 3).x()
    assert is_tame(x3 ** 2) and is_simply_ramified(x3 ** 2)
    x = model("P1").x()
    assert not is_tame(x ** 2)
    assert is_tame(x ** 3) and not is_simply_ramified(x ** 3)


def test_pseudotame_examples():
    C = model("P1")
    x = C.x()
    zero = C.places_of_degree(1)[0]
    assert pseudotame_at(x ** 3 + x ** 6, zero)
    assert not pseudotame_at(x ** 2, zero)
    assert pseudotame_at(x ** 4 + x ** 5, zero)
    assert is_pseudotame(x ** 4 + x ** 5)
    assert not is_pseudotame(x ** 2)
    assert is_pseudotame(x ** 3)


def test_lift_examples():
    C = model("P1")
    x = C.x()
    assert pseudotame_to_tame(x) == x
    f = x ** 4 + x ** 5
    g = pseudotame_to_tame(f)
    assert is_tame(g) and same_orbit(f, g) and riemann_hurwitz_check(g).holds
    with pytest.raises(NotPseudotame):
        pseudotame_to_tame(x ** 2 + x ** 3)


def test_rh_examples():
    x3 = model("P1", 3).x()
    rep = riemann_hurwitz_check(x3 ** 2)
    assert rep.holds and (rep.lhs, rep.rhs) == (-2, -2)
    with pytest.raises(OddIndexRequired):
        rep.divisor()
    x = model("P1").x()
    assert not riemann_hurwitz_check(x ** 2).holds
    assert not riemann_hurwitz_check(x ** 3 + x).holds
    rep = riemann_hurwitz_check(x ** 3)
    assert rep.holds and rep.divisor().degree == 2


@pytest.mark.parametrize("p", [2, 3, 5])
def test_wild_fixture_branch(p):
    x = model("P1", p).x()
    assert lits(branch_locus(x ** p + 1 / x)) == ["inf"]


def test_branch_examples():
    x3 = model("P1", 3).x()
    assert lits(branch_locus(x3 ** 2)) == ["(x; 0)", "inf"]
    G = model("P1", 2, 2)
    x, w = G.x(), G.const(G.k.gen)
    # the ramified points w and inf map to 0 and inf
    assert lits(branch_locus((x + w) ** 3)) == ["(x; 0)", "inf"]
    with pytest.raises(NotSeparating):
        branch_locus(G.one())


def test_belyi_examples():
    assert belyi_map(model("P1"), seed=0) == model("P1").x()
    G = model("P1", 2, 2)
    x, w = G.x(), G.const(G.k.gen)
    f = belyi_map(G, f0=(x + w) ** 3)
    assert f == (x + w) ** 9
    assert is_tame(f)
    assert {en.e for en in ramification_profile(f).entries} == {9}
    allowed = {"(x; 0)", "(x+1; 1)", "inf"}
    S = model("ES", 2, 1, 0, 1)
    f = belyi_map(S, seed=0)
    assert is_tame(f) and set(lits(branch_locus(f))) <= allowed


def test_fiber_degrees_sum_to_degree():
    rng = random.Random(11)
    for spec in [("P1", 2, 1), ("P1", 3, 1), ("EO", 2, 1, 0, 1), ("ES", 2, 1, 0, 1), ("W", 5, 1, 1, 1)]:
        C = model(*spec)
        for _ in range(5):
            f = rand_func(C, rng, 2)
            pr = ramification_profile(f)
            assert pr.degree == map_degree(f)
            inf = C.infinity()
            # the fiber over infinity is the pole divisor
            total = sum(-valuation(f, P) * P.degree for P in set(pole_places(f)) | {inf} if valuation(f, P) < 0)
            assert total == pr.degree


# --- property tests ------------------------------------------------------------

CHAR2 = [("P1", 2, 1, 0, 0), ("P1", 2, 2, 0, 0), ("EO", 2, 1, 0, 1), ("ES", 2, 1, 0, 1), ("ES", 2, 2, 1, 1)]
spec_st = st.sampled_from(CHAR2)


@settings(max_examples=40, deadline=None)
@given(spec_st, st.integers(0, 10 ** 9))
def test_pseudotame_is_gamma_invariant(spec, seed):
    C = model(*spec)
    rng = random.Random(seed)
    f, t = rand_func(C, rng, 2), rand_func(C, rng, 1)
    P = rng.choice(C.places_of_degree(1))
    one, zero = C.one(), C.zero()
    for gam in (GammaElem(t, zero, zero, one), GammaElem(one, t, zero, one), GammaElem(zero, one, one, zero)):
        assert pseudotame_at(f, P) == pseudotame_at(gamma_apply(gam, f), P)


@settings(max_examples=40, deadline=None)
@given(spec_st, st.integers(0, 10 ** 9))
def test_pseudotame_iff_symbol_regular(spec, seed):
    C = model(*spec)
    rng = random.Random(seed)
    f = rand_func(C, rng, 3)
    P = rng.choice(C.places_of_degree(1) + C.places_of_degree(2))
    g = P.uniformizer
    om = sy(f, g)
    regular = om.is_zero() or valuation(om.h, P) + dx_order(P) >= 0
    assert pseudotame_at(f, P) == regular


def test_tame_implies_pseudotame():
    rng = random.Random(21)
    found = 0
    while found < 100:
        C = model(*rng.choice(CHAR2))
        f = rand_func(C, rng, 2)
        if is_tame(f):
            found += 1
            assert is_pseudotame(f)


@pytest.mark.slow
@pytest.mark.parametrize("a,b,c", [(1, 0, 0), (1, 1, 0), (1, 1, 1)])
def test_slow_supersingular_lifts(a, b, c):
    from tamemaps.conic import symbol_solve
    S = model("ES", 2, 1, a, b)
    x = S.x()
    f = symbol_solve(x, x ** 3 + S.const(c) * x)
    g = pseudotame_to_tame(f)
    assert is_tame(g) and same_orbit(f, g) and riemann_hurwitz_check(g).holds
