import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import count_irreducible, gf2m_mul, gf2m_trace, is_irreducible_trial
from tamemaps.errors import CharacteristicMismatch, FieldError, NotASquare, ZeroPolynomial
from tamemaps.fields import (
    FieldElem,
    artin_schreier_solve_field,
    field,
    inv_frobenius,
    trace_to_prime,
)
from tamemaps.poly import Poly, RatFunc, derivative, factor_poly, sqrt_ratfunc
from tamemaps.series import Laurent


def E(k, v):
    return FieldElem(k, v)


GF4 = field(2, 2)
W = GF4.gen


# --- fixed examples ------------------------------------------------------------

def test_inv_frobenius_examples():
    assert inv_frobenius(E(field(2), 1)) == E(field(2), 1)
    assert inv_frobenius(E(GF4, W)) == E(GF4, GF4.add(W, 1))
    assert inv_frobenius(E(field(3), 2)) == E(field(3), 2)


def test_trace_examples():
    assert trace_to_prime(E(GF4, W)) == 1
    assert trace_to_prime(E(field(2, 3), 0)) == 0
    k8 = field(2, 3, (1, 1, 0, 1))
    assert trace_to_prime(E(k8, k8.gen)) == 0


def test_artin_schreier_examples():
    k2 = field(2)
    assert artin_schreier_solve_field(E(k2, 0)) == E(k2, 0)
    assert artin_schreier_solve_field(E(k2, 1)) is None
    assert artin_schreier_solve_field(E(GF4, 1)) == E(GF4, W)
    with pytest.raises(CharacteristicMismatch):
        artin_schreier_solve_field(E(field(3), 1))


def P(k, *c):
    return Poly(k, list(c))


def test_factor_examples():
    k2, k3 = field(2), field(3)
    assert factor_poly(P(k2, 1, 0, 1)) == [(P(k2, 1, 1), 2)]
    assert factor_poly(P(k2, 1, 1, 1)) == [(P(k2, 1, 1, 1), 1)]
    got = sorted(factor_poly(P(k3, 0, 2, 0, 1)), key=lambda t: t[0].c)
    assert got == [(P(k3, 0, 1), 1), (P(k3, 1, 1), 1), (P(k3, 2, 1), 1)]
    with pytest.raises(ZeroPolynomial):
        factor_poly(P(k2))


def test_sqrt_and_derivative_examples():
    k2 = field(2)
    x = RatFunc.x(k2)
    assert sqrt_ratfunc(x * x) == x
    assert sqrt_ratfunc(x ** 4 + x ** 2) == x ** 2 + x
    with pytest.raises(NotASquare):
        sqrt_ratfunc(x)
    assert derivative(x ** 3 + x) == x ** 2 + RatFunc.const(k2, 1)
    assert derivative(x.inv()) == (x * x).inv()
    assert derivative(x * x).is_zero()


def test_field_literal_and_validation():
    assert field(2, 3).literal() == "GF(2^3; mod=w^3+w+1; gen=w)"
    assert field(3).literal() == "GF(3^1)"
    with pytest.raises(FieldError):
        field(4)
    with pytest.raises(FieldError):
        field(2, 2, (1, 0, 1))  # w^2+1 is reducible


# --- exhaustive invariants -----------------------------------------------------

@pytest.mark.parametrize("m", [1, 2, 3, 4, 5, 6, 7, 8])
def test_gf2m_exhaustive(m):
    k = field(2, m)
    mod = sum(c << i for i, c in enumerate(k.modulus_prime))
    els = list(range(k.order))
    # multiplication agrees with the bit-mask oracle on a sample of pairs
    rng = random.Random(m)
    for _ in range(300):
        a, b = rng.choice(els), rng.choice(els)
        assert k.mul(a, b) == gf2m_mul(a, b, mod)
    for c in els:
        r = inv_frobenius(E(k, c))
        assert r ** 2 == E(k, c)
        assert (inv_frobenius(r)) ** 4 == E(k, c)
        t = trace_to_prime(E(k, c))
        assert t.value == gf2m_trace(c, mod)
        u = artin_schreier_solve_field(E(k, c))
        assert (u is not None) == (t == 0)
        if u is not None:
            assert u * u + u == E(k, c)


@pytest.mark.parametrize("p,m", [(3, 1), (3, 2), (5, 1), (5, 2), (7, 1), (3, 4)])
def test_odd_fields_frobenius(p, m):
    k = field(p, m)
    for v in range(k.order):
        c = E(k, k.from_index(v))
        assert inv_frobenius(c) ** p == c


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)])
def test_irreducible_counts_match_trial_division(p, d):
    from tamemaps.curve import monic_irreducibles
    k = field(p)
    ours = monic_irreducibles(k, d)
    assert len(ours) == count_irreducible(p, d)
    for f in ours:
        assert is_irreducible_trial(list(f.c), p)


# --- property tests ------------------------------------------------------------

fields_small = st.sampled_from([(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)])


@st.composite
def poly_st(draw, max_deg=8):
    p, m = draw(fields_small)
    k = field(p, m)
    n = draw(st.integers(1, max_deg))
    c = draw(st.lists(st.integers(0, k.order - 1), min_size=n + 1, max_size=n + 1))
    f = Poly(k, [k.from_index(i) for i in c])
    return f


@settings(max_examples=150, deadline=None)
@given(poly_st())
def test_factor_reconstructs(f):
    if f.is_zero():
        return
    fac = factor_poly(f)
    prod = Poly.const(f.F, f.lead)
    seen = set()
    for g, e in fac:
        assert g.lead == f.F.one
        assert g.is_irreducible()
        assert g not in seen
        seen.add(g)
        prod = prod * g ** e
    assert prod == f


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([1, 2, 3, 4]), st.integers(0, 255), st.integers(0, 255))
def test_trace_additive(m, a, b):
    k = field(2, m)
    a, b = a % k.order, b % k.order
    assert trace_to_prime(E(k, a)) + trace_to_prime(E(k, b)) == trace_to_prime(E(k, k.add(a, b)))


@settings(max_examples=100, deadline=None)
@given(poly_st(max_deg=5), poly_st(max_deg=4))
def test_square_roots_and_derivative_of_squares(f, g):
    if f.F.p != 2 or g.F != f.F or g.is_zero():
        return
    h = RatFunc(f, g.monic())
    assert derivative(h * h).is_zero()
    assert sqrt_ratfunc(h * h) ** 2 == h * h


@settings(max_examples=80, deadline=None)
@given(poly_st(max_deg=6), poly_st(max_deg=6))
def test_ratfunc_canonical(f, g):
    if g.F != f.F or g.is_zero():
        return
    h = RatFunc(f, g)
    assert h.den.lead == f.F.one
    assert h.num.gcd(h.den).is_one() or h.num.is_zero()
    assert RatFunc(f * g, g * g) == h


def test_laurent_inverse_and_product():
    for p, m in [(2, 1), (2, 3), (3, 1), (5, 1)]:
        k = field(p, m)
        rng = random.Random(p * 10 + m)
        for _ in range(20):
            c = [k.random_element(rng) for _ in range(12)]
            c[0] = k.one
            s = Laurent(k, rng.randint(-3, 3), c, 9)
            one = s * s.inv()
            assert one.equal_to_prec(Laurent.const(k, k.one, one.prec))
