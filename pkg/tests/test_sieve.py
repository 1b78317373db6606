import random
from fractions import Fraction

import pytest

from conftest import model
from oracles import gf3_bad_jets, p1_gf3_simple_fraction
from tamemaps.curve import riemann_roch_basis, zeta_inv_sq
from tamemaps.errors import DimensionTooSmall, OddCharacteristicOnly
from tamemaps.sieve import (
    SieveStats,
    exhaustive_simple_fraction,
    jet_bad_count,
    pair_is_simple,
    pair_is_simple_generic,
    per_place_simple_probability,
    predicted_density,
    random_simply_ramified_search,
)
from tamemaps.tame import is_simply_ramified, is_tame, riemann_hurwitz_check

# frozen from the GF(9) ramification oracle in tests/oracles.py
P1_GF3_N2_FRACTION = Fraction(16, 27)


def test_per_place_examples():
    X = model("P1", 3)
    assert per_place_simple_probability(X.places_of_degree(1)[0]) == Fraction(64, 81)
    assert per_place_simple_probability(X.places_of_degree(2)[0]) == Fraction(6400, 6561)


def test_jet_count():
    k = model("P1", 3).k
    assert jet_bad_count(k) == 2 * 3 ** 4 - 3 ** 2 == gf3_bad_jets() == 153
    assert Fraction(3 ** 6 - 153, 3 ** 6) == Fraction(64, 81)


def test_predicted_density_examples():
    X = model("P1", 3)
    assert predicted_density(X, 1) == Fraction(64, 81) ** 4
    assert predicted_density(X, 0) == 1
    Y = model("P1", 5)
    z = zeta_inv_sq(Y)
    assert abs(predicted_density(Y, 4) - z) / z < Fraction(2, 100)


@pytest.mark.parametrize("spec", [("P1", 3), ("P1", 5), ("W", 5, 1, 1, 1)])
def test_predicted_density_monotone(spec):
    X = model(*spec)
    vals = [predicted_density(X, e) for e in range(0, 5)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert vals[-1] >= zeta_inv_sq(X)


def test_exhaustive_fraction_matches_oracle():
    assert P1_GF3_N2_FRACTION == p1_gf3_simple_fraction(2)
    assert exhaustive_simple_fraction(model("P1", 3), 2) == P1_GF3_N2_FRACTION


def test_search_errors():
    with pytest.raises(OddCharacteristicOnly):
        random_simply_ramified_search(model("P1", 2), 3, 10)
    with pytest.raises(DimensionTooSmall):
        random_simply_ramified_search(model("P1", 3), 0, 10)
    with pytest.raises(DimensionTooSmall):
        random_simply_ramified_search(model("W", 5, 1, 1, 1), 1, 10)


def test_search_p1_gf5():
    X = model("P1", 5)
    f, stats = random_simply_ramified_search(X, 3, 2000, seed=3)
    assert f is not None
    assert is_simply_ramified(f) and is_tame(f) and riemann_hurwitz_check(f).holds
    assert abs(float(stats.empirical - stats.predicted)) <= 3 * stats.sigma()
    assert stats.predicted == predicted_density(X, 2)


def test_search_is_deterministic_and_workers_merge():
    X = model("P1", 3)
    a = random_simply_ramified_search(X, 2, 300, seed=9)
    b = random_simply_ramified_search(X, 2, 300, seed=9)
    assert a[0] == b[0] and a[1] == b[1]
    _, par = random_simply_ramified_search(X, 2, 300, seed=9, workers=2)
    assert par.trials == 300 and 0 <= par.successes <= 300


def test_stats_merge():
    s = SieveStats(10, 4, Fraction(4, 10), Fraction(1, 2), Fraction(1, 3), 2)
    t = SieveStats(30, 20, Fraction(20, 30), Fraction(1, 2), Fraction(1, 3), 2)
    m = s.merge(t)
    assert (m.trials, m.successes, m.empirical) == (40, 24, Fraction(24, 40))
    assert m.as_dict()["empirical"] == "3/5"


def test_fast_path_agrees_with_generic():
    rng = random.Random(17)
    for p, n in [(3, 2), (3, 3), (5, 2), (5, 3)]:
        X = model("P1", p)
        basis = riemann_roch_basis(X, n)
        k = X.k
        for _ in range(60):
            c0 = [k.random_element(rng) for _ in basis]
            c1 = [k.random_element(rng) for _ in basis]
            assert pair_is_simple(X, basis, n, c0, c1) == pair_is_simple_generic(X, basis, n, c0, c1)


def test_elliptic_search_small():
    X = model("W", 5, 1, 1, 1)
    f, stats = random_simply_ramified_search(X, 4, 40, seed=2)
    assert stats.trials == 40
    if f is not None:
        assert is_simply_ramified(f) and riemann_hurwitz_check(f).holds
