"""Fourth-power Moebius action, quartic decomposition and the symbol SY(f, g).

Everything here lives in characteristic 2.  For f, g separating, the
elements 1, g, g^2, g^3 form a basis of k(X) over fourth powers, and

    f = f0^4 + f1^4 g + f2^4 g^2 + f3^4 g^3,
    SY(f, g) = ((f1 f3 + f2^2) / (f1^2 + f3^2 g))^2 dg.
"""
from __future__ import annotations

from dataclasses import dataclass

from .curve import Differential, FuncElem, d, is_separating, local_expand, residue, valuation
from .errors import CharacteristicMismatch, DegenerateGamma, NotPseudotame, NotSeparating


def _require_char2(f):
    if f.curve.k.p != 2:
        raise CharacteristicMismatch("the symbol is defined in characteristic 2")


def _require_sep(*fs):
    for f in fs:
        if f.is_const() or not is_separating(f):
            raise NotSeparating(f"{f.literal()} is not a separating function")


class GammaElem:
    """Projective 2x2 matrix [[a, b], [c, d]] acting by (a^4 f + b^4)/(c^4 f + d^4)."""

    def __init__(self, a, b, c, d):
        C = next(e.curve for e in (a, b, c, d) if isinstance(e, FuncElem))
        a, b, c, d = (e if isinstance(e, FuncElem) else C.const(C.k.from_int(e)) for e in (a, b, c, d))
        self.a, self.b, self.c, self.d = a, b, c, d
        if (a * d - b * c).is_zero():
            raise DegenerateGamma("matrix entries have ad + bc = 0")

    @classmethod
    def identity(cls, C):
        return cls(C.one(), C.zero(), C.zero(), C.one())

    @classmethod
    def scaling(cls, t):
        C = t.curve
        return cls(t, C.zero(), C.zero(), C.one())

    @classmethod
    def translation(cls, t):
        C = t.curve
        return cls(C.one(), t, C.zero(), C.one())

    @classmethod
    def inversion(cls, C):
        return cls(C.zero(), C.one(), C.one(), C.zero())

    def __mul__(self, other):
        a, b, c, d = self.a, self.b, self.c, self.d
        e, f, g, h = other.a, other.b, other.c, other.d
        return GammaElem(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)

    def is_identity(self):
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def literal(self):
        return f"[[{self.a.literal()},{self.b.literal()}],[{self.c.literal()},{self.d.literal()}]]"

    def __repr__(self):
        return self.literal()


def _fourth(e):
    e2 = e * e
    return e2 * e2


def gamma_apply(gamma, f):
    num = _fourth(gamma.a) * f + _fourth(gamma.b)
    den = _fourth(gamma.c) * f + _fourth(gamma.d)
    if den.is_zero():
        raise DegenerateGamma("denominator vanishes identically")
    return num / den


@dataclass(frozen=True)
class QuarticDecomp:
    f0: FuncElem
    f1: FuncElem
    f2: FuncElem
    f3: FuncElem
    g: FuncElem

    def recompose(self):
        g = self.g
        return (_fourth(self.f0) + _fourth(self.f1) * g + _fourth(self.f2) * g * g
                + _fourth(self.f3) * g * g * g)

    def components(self):
        return (self.f0, self.f1, self.f2, self.f3)


def d_by(f, g):
    """df/dg."""
    return f.derivative() / g.derivative()


def quartic_decompose(f, g):
    _require_char2(f)
    _require_sep(f, g)
    r = d_by(f, g).sqrt()
    f3 = d_by(r, g).sqrt()
    f1 = (r + f3 * f3 * g).sqrt()
    s = (f + r * r * g).sqrt()
    f2 = d_by(s, g).sqrt()
    f0 = (s + f2 * f2 * g).sqrt()
    return QuarticDecomp(f0, f1, f2, f3, g)


def sy(f, g):
    """The symbol SY(f, g) as a differential h dx."""
    q = quartic_decompose(f, g)
    f1, f2, f3 = q.f1, q.f2, q.f3
    num = f1 * f3 + f2 * f2
    if num.is_zero():
        return Differential(f.curve.zero())
    ratio = num / (f1 * f1 + f3 * f3 * g)
    return Differential(ratio * ratio * g.derivative())


def same_orbit(f, g):
    return sy(f, g).is_zero()


def orbit_uniformizer_at(f, P, max_steps=10000):
    """An element of the orbit of f with valuation exactly 1 at P."""
    _require_char2(f)
    if f.is_const():
        raise NotSeparating("constant functions define no morphism")
    if not is_separating(f):
        # a p-th power has even index everywhere
        raise NotPseudotame(f"{f.literal()} is not pseudotame at {P.literal()}")
    u = P.uniformizer
    g = f
    v = valuation(g, P)
    if v < 0:
        g, v = g.inv(), -v
    if v == 0:
        c = P.value(g)
        g = g - _fourth(P.lift(P.kappa.root_p(P.kappa.root_p(c))))
        v = valuation(g, P)
    for _ in range(max_steps):
        if v % 4 == 0:
            lead = local_expand(g, P, v + 1).coeff(v)
            root = P.kappa.root_p(P.kappa.root_p(lead))
            g = g - _fourth(P.lift(root) * u ** (v // 4))
            v = valuation(g, P)
            continue
        if v % 2 == 0:
            raise NotPseudotame(f"{f.literal()} is not pseudotame at {P.literal()}")
        if v % 4 == 1:
            return g * u ** (1 - v)
        return g.inv() * u ** (v + 1)
    raise NotPseudotame("fourth-power reduction did not terminate")


def residue_pairing(g1, f, places):
    """Sum over the given places of Res(g1 df)."""
    k = f.curve.k
    omega = d(f) * g1
    acc = k.zero
    for P in places:
        acc = k.add(acc, residue(omega, P))
    return acc
