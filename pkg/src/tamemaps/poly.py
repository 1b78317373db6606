"""Univariate polynomials and rational functions over a base field k.

Coefficients are raw field values (see :mod:`tamemaps.fields`), lowest degree
first.  Rational functions are kept reduced with a monic denominator, so two
equal functions always have identical representations.
"""
from __future__ import annotations

from . import polyops
from .errors import CharacteristicMismatch, NotASquare, ZeroPolynomial


class Poly:
    __slots__ = ("F", "c")

    def __init__(self, F, coeffs=()):
        self.F = F
        self.c = tuple(polyops.trim(coeffs, F.zero))

    @classmethod
    def _raw(cls, F, coeffs):
        obj = cls.__new__(cls)
        obj.F = F
        obj.c = tuple(coeffs)
        return obj

    @classmethod
    def const(cls, F, v):
        return cls._raw(F, () if v == F.zero else (v,))

    @classmethod
    def x(cls, F):
        return cls._raw(F, (F.zero, F.one))

    @classmethod
    def monomial(cls, F, n, v=None):
        v = F.one if v is None else v
        return cls._raw(F, (F.zero,) * n + (v,))

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def is_one(self):
        return self.c == (self.F.one,)

    def is_const(self):
        return len(self.c) <= 1

    @property
    def lead(self):
        return self.c[-1] if self.c else self.F.zero

    def coeff(self, i):
        return self.c[i] if 0 <= i < len(self.c) else self.F.zero

    def __len__(self):
        return len(self.c)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __bool__(self):
        return bool(self.c)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        return Poly._raw(self.F, polyops.add(self.F, self.c, other.c))

    def __sub__(self, other):
        return Poly._raw(self.F, polyops.sub(self.F, self.c, other.c))

    def __neg__(self):
        return Poly._raw(self.F, polyops.neg(self.F, self.c))

    def __mul__(self, other):
        return Poly._raw(self.F, polyops.mul(self.F, self.c, other.c))

    def scale(self, v):
        return Poly._raw(self.F, polyops.scale(self.F, self.c, v))

    def square(self):
        return Poly._raw(self.F, polyops.square(self.F, self.c))

    def __pow__(self, n):
        return Poly._raw(self.F, polyops.pow_(self.F, self.c, n))

    def __divmod__(self, other):
        q, r = polyops.divmod_(self.F, self.c, other.c)
        return Poly._raw(self.F, q), Poly._raw(self.F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        return Poly._raw(self.F, polyops.monic(self.F, self.c))

    def gcd(self, other):
        return Poly._raw(self.F, polyops.gcd(self.F, self.c, other.c))

    def derivative(self):
        return Poly._raw(self.F, polyops.derivative(self.F, self.c))

    def compose(self, other):
        return Poly._raw(self.F, polyops.compose(self.F, self.c, other.c))

    def pth_root(self):
        """g with g^p = self; raises NotASquare-style error when impossible."""
        p = self.F.p
        if any(self.c[i] != self.F.zero for i in range(len(self.c)) if i % p):
            raise NotASquare("polynomial is not a p-th power")
        return Poly._raw(self.F, polyops.pth_root(self.F, self.c))

    def __call__(self, v):
        return polyops.evaluate(self.F, self.c, v)

    def eval_in(self, K, v):
        """Evaluate at v in an extension K of the coefficient field."""
        acc = K.zero
        emb = K.embed
        for c in reversed(self.c):
            acc = K.add(K.mul(acc, v), emb(c))
        return acc

    def valuation_at(self, pi):
        """Multiplicity of the irreducible pi in self (self nonzero)."""
        if not self.c:
            raise ZeroPolynomial("valuation of the zero polynomial")
        n = 0
        a = self.c
        while True:
            q, r = polyops.divmod_(self.F, a, pi.c)
            if r:
                return n
            a = q
            n += 1

    def factor(self, seed=0):
        if not self.c:
            raise ZeroPolynomial("cannot factor the zero polynomial")
        return [(Poly._raw(self.F, g), e) for g, e in polyops.factor(self.F, self.c, seed)]

    def is_irreducible(self):
        return polyops.is_irreducible(self.F, self.c)

    def roots(self):
        return polyops.roots(self.F, self.c)

    def sort_key(self):
        F = self.F
        return (len(self.c), [F.sort_key(v) for v in reversed(self.c)])

    def __repr__(self):
        return format_poly(self, "x")


def format_poly(P, sym="x"):
    F = P.F
    terms = []
    for i in range(len(P.c) - 1, -1, -1):
        v = P.c[i]
        if v == F.zero:
            continue
        cs = F.format(v)
        composite = "+" in cs or "*" in cs
        mono = "" if i == 0 else (sym if i == 1 else f"{sym}^{i}")
        if not mono:
            terms.append(cs)
        elif v == F.one:
            terms.append(mono)
        else:
            terms.append(f"({cs})*{mono}" if composite else f"{cs}*{mono}")
    return "+".join(terms) if terms else "0"


class RatFunc:
    """Reduced quotient num/den with den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduced=False):
        F = num.F
        if den is None:
            self.num, self.den = num, Poly._raw(F, (F.one,))
            return
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = num, Poly._raw(F, (F.one,))
            return
        if not reduced and not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num // g
                den = den // g
        if den.lead != F.one:
            inv = F.inv(den.lead)
            num = num.scale(inv)
            den = den.scale(inv)
        self.num, self.den = num, den

    @classmethod
    def const(cls, F, v):
        return cls(Poly.const(F, v))

    @classmethod
    def x(cls, F):
        return cls(Poly.x(F))

    @property
    def F(self):
        return self.num.F

    def is_zero(self):
        return self.num.is_zero()

    def is_poly(self):
        return self.den.is_one()

    def is_const(self):
        return self.den.is_one() and self.num.is_const()

    @property
    def degree(self):
        """deg num - deg den (the negated valuation at infinity)."""
        return self.num.degree - self.den.degree

    def __eq__(self, other):
        return isinstance(other, RatFunc) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __add__(self, other):
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduced=True)

    def __mul__(self, other):
        if self.num.is_zero() or other.num.is_zero():
            return RatFunc(Poly._raw(self.F, ()))
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num)
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n = (self.num // g1) * (other.num // g2)
        d = (self.den // g2) * (other.den // g1)
        return RatFunc(n, d, reduced=True)

    def scale(self, v):
        return RatFunc(self.num.scale(v), self.den, reduced=True)

    def inv(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, n):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, reduced=True)

    def square(self):
        return RatFunc(self.num.square(), self.den.square(), reduced=True)

    def derivative(self):
        n, d = self.num, self.den
        if d.is_one():
            return RatFunc(n.derivative())
        return RatFunc(n.derivative() * d - n * d.derivative(), d.square())

    def sqrt(self):
        """Square root in characteristic 2 (the inverse Frobenius on k(x))."""
        if self.F.p != 2:
            raise CharacteristicMismatch("sqrt_ratfunc needs characteristic 2")
        try:
            return RatFunc(self.num.pth_root(), self.den.pth_root(), reduced=True)
        except NotASquare:
            raise NotASquare("rational function is not a square (nonzero derivative)") from None

    def valuation_at(self, pi):
        if self.num.is_zero():
            return None
        return self.num.valuation_at(pi) - self.den.valuation_at(pi)

    def __repr__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"


# module-level names used by the public API

def factor_poly(f, seed=0):
    """Monic irreducible factors of a nonzero Poly with multiplicities."""
    return f.factor(seed)


def sqrt_ratfunc(h):
    return h.sqrt()


def derivative(h):
    return h.derivative()
