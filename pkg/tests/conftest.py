import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from tamemaps.curve import CurveModel, is_separating  # noqa: E402
from tamemaps.fields import field  # noqa: E402
from tamemaps.poly import Poly, RatFunc  # noqa: E402


def model(kind, p=2, m=1, a=0, b=0):
    return CurveModel(kind, field(p, m), a, b)


def rand_poly(k, rng, deg, monic=False):
    c = [k.random_element(rng) for _ in range(deg + 1)]
    if monic:
        c[-1] = k.one
    return Poly(k, c)


def rand_ratfunc(k, rng, dn, dd):
    num = rand_poly(k, rng, rng.randint(0, dn))
    den = rand_poly(k, rng, rng.randint(0, dd), monic=True)
    if num.is_zero():
        num = Poly.x(k)
    return RatFunc(num, den)


def rand_func(C, rng, deg=3):
    """A random separable nonconstant u + v*y with small numerator/denominator degrees."""
    k = C.k
    while True:
        u = rand_ratfunc(k, rng, deg, max(0, deg - 1))
        v = rand_ratfunc(k, rng, deg - 1, max(0, deg - 2)) if C.is_elliptic and rng.random() < 0.6 else None
        f = C.elem(u, v)
        if not f.is_const() and is_separating(f):
            return f


def rand_poly_func(C, rng, deg):
    """A random separable polynomial in x (and y) of bounded degree."""
    k = C.k
    while True:
        u = rand_poly(k, rng, rng.randint(1, deg))
        v = rand_poly(k, rng, rng.randint(0, max(0, deg - 2))) if C.is_elliptic and rng.random() < 0.5 else None
        f = C.elem(u, v)
        if not f.is_const() and is_separating(f):
            return f


def rng_for(*key):
    return random.Random("|".join(map(str, key)))
