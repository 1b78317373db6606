"""Random everywhere simply ramified morphisms in odd characteristic.

A pair of sections (s0, s1) of O(n inf) gives f = s0/s1.  At a place with
residue field of size N the 2-jets of (s0, s1) are bad (base point, or
ramification index above 2) with probability 1 - (1 - N^-2)^2, and the
product over all places is zeta_X(2)^-2.
"""
from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .curve import CurveModel, is_separating, riemann_roch_basis, support_places, valuation, zeta_inv_sq
from .errors import DimensionTooSmall, OddCharacteristicOnly
from .fields import field
from .poly import Poly
from .tame import is_simply_ramified


@dataclass
class SieveStats:
    trials: int
    successes: int
    empirical: Fraction
    predicted: Fraction
    zeta_limit: Fraction
    e: int

    def sigma(self):
        """Binomial standard deviation of the empirical density around the prediction."""
        p = float(self.predicted)
        return sqrt(p * (1 - p) / self.trials) if self.trials else 0.0

    def merge(self, other):
        t = self.trials + other.trials
        s = self.successes + other.successes
        return SieveStats(t, s, Fraction(s, t) if t else Fraction(0), self.predicted, self.zeta_limit, self.e)

    def as_dict(self):
        return {
            "trials": self.trials,
            "successes": self.successes,
            "empirical": str(self.empirical),
            "predicted": str(self.predicted),
            "zeta_limit": str(self.zeta_limit),
            "e": self.e,
        }


def per_place_simple_probability(P):
    N = P.size
    return (1 - Fraction(1, N * N)) ** 2


def predicted_density(X, e):
    """Product of the per-place probabilities over places of degree at most e."""
    q = X.k.order
    out = Fraction(1)
    for d in range(1, e + 1):
        N = q ** d
        out *= ((1 - Fraction(1, N * N)) ** 2) ** X.count_places(d)
    return out


def jet_bad_count(k):
    """Number of 2-jet tuples (s00, s01, s02, s10, s11, s12) over k that are bad.

    Bad means s00 s11 - s01 s10 = 0 and s00 s12 - s10 s02 = 0, which covers
    both base points and ramification of index at least 3.
    """
    els = [k.from_index(i) for i in range(k.order)]
    mul, sub, zero = k.mul, k.sub, k.zero
    bad = 0
    for s00, s01, s02, s10, s11, s12 in itertools.product(els, repeat=6):
        if sub(mul(s00, s11), mul(s01, s10)) == zero and sub(mul(s00, s12), mul(s10, s02)) == zero:
            bad += 1
    return bad


def _require(X, n):
    if X.k.p == 2:
        raise OddCharacteristicOnly("the simply ramified sieve needs odd characteristic")
    basis = riemann_roch_basis(X, n)
    if len(basis) < 2:
        raise DimensionTooSmall(f"L({n} inf) has dimension {len(basis)} < 2")
    return basis


def _combine(X, basis, vec):
    k = X.k
    f = X.zero()
    for c, b in zip(vec, basis):
        if c != k.zero:
            f = f + b.scale(c)
    return f


def _p1_simple(k, n, c0, c1):
    """Fast test on P^1: s0/s1 has no base point and its Wronskian is squarefree."""
    s0, s1 = Poly(k, c0), Poly(k, c1)
    if s1.is_zero() or s0.is_zero():
        return False
    if max(s0.degree, s1.degree) < n:
        return False  # common zero at infinity
    if not s0.gcd(s1).is_const():
        return False
    W = s0.derivative() * s1 - s0 * s1.derivative()
    if W.is_zero() or W.degree < 2 * n - 3:
        return False
    return W.gcd(W.derivative()).is_const()


def _has_base_point(X, s0, s1, n):
    inf = X.infinity()
    if valuation(s0, inf) > -n and valuation(s1, inf) > -n:
        return True
    for P in support_places(s1):
        if P.is_infinite:
            continue
        if valuation(s1, P) > 0 and valuation(s0, P) > 0:
            return True
    return False


def pair_is_simple(X, basis, n, c0, c1):
    """Whether the coefficient vectors give an everywhere simply ramified s0/s1."""
    if not X.is_elliptic:
        return _p1_simple(X.k, n, c0, c1)
    return pair_is_simple_generic(X, basis, n, c0, c1)


def pair_is_simple_generic(X, basis, n, c0, c1):
    """The same test through the full ramification profile (slow, any model)."""
    s0, s1 = _combine(X, basis, c0), _combine(X, basis, c1)
    if s0.is_zero() or s1.is_zero() or _has_base_point(X, s0, s1, n):
        return False
    f = s0 / s1
    if f.is_const() or not is_separating(f):
        return False
    return is_simply_ramified(f)


def exhaustive_simple_fraction(X, n):
    """Exact fraction of all section pairs that are everywhere simply ramified."""
    basis = _require(X, n)
    k = X.k
    els = [k.from_index(i) for i in range(k.order)]
    vecs = list(itertools.product(els, repeat=len(basis)))
    good = sum(1 for c0 in vecs for c1 in vecs if pair_is_simple(X, basis, n, c0, c1))
    return Fraction(good, len(vecs) ** 2)


def _run_trials(X, basis, n, trials, seed):
    rng = random.Random(seed)
    k = X.k
    dim = len(basis)
    good, first = 0, None
    for _ in range(trials):
        c0 = [k.random_element(rng) for _ in range(dim)]
        c1 = [k.random_element(rng) for _ in range(dim)]
        if pair_is_simple(X, basis, n, c0, c1):
            good += 1
            if first is None:
                first = (c0, c1)
    return good, first


def _worker(args):
    kind, p, m, a, b, n, trials, seed = args
    X = CurveModel(kind, field(p, m), a, b)
    return _run_trials(X, riemann_roch_basis(X, n), n, trials, seed)


def random_simply_ramified_search(X, n, trials, seed=0, workers=1, e=2):
    """Sample section pairs; return the first simply ramified f and the statistics."""
    basis = _require(X, n)
    if workers <= 1:
        good, first = _run_trials(X, basis, n, trials, seed)
    else:
        per = [trials // workers + (1 if i < trials % workers else 0) for i in range(workers)]
        jobs = [(X.kind, X.k.p, X.k.degree, X.a, X.b, n, t, seed * 1000003 + i) for i, t in enumerate(per)]
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_worker, jobs))
        good = sum(g for g, _ in parts)
        first = next((f for _, f in parts if f is not None), None)
    stats = SieveStats(trials, good, Fraction(good, trials) if trials else Fraction(0),
                       predicted_density(X, e), zeta_inv_sq(X), e)
    f = None
    if first is not None:
        f = _combine(X, basis, first[0]) / _combine(X, basis, first[1])
    return f, stats
