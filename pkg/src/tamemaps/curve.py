"""Curve models, their function fields, places, expansions and residues.

Every supported curve has the shape y^2 + h(x) y = F(x):

    P1   no y at all
    EO   h = x, F = x^3 + a x^2 + b          (characteristic 2, b != 0)
    ES   h = 1, F = x^3 + a x + b            (characteristic 2)
    W    h = 0, F = x^3 + A x + B            (characteristic >= 5)

A function u + v*y is stored with u, v in k(x).  Places are Galois orbits
with one representative point over the residue field.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from . import fields, polyops
from .errors import CurveError, NotASquare, PrecisionExhausted
from .poly import Poly, RatFunc, format_poly
from .series import Laurent

PRECISION_CAP = 1 << 12


class CurveModel:
    def __init__(self, kind, k, a=None, b=None):
        self.kind = kind
        self.k = k
        zero = k.zero
        self.a = zero if a is None else a
        self.b = zero if b is None else b
        p = k.p
        if kind == "P1":
            self.h = self.F = None
        elif kind in ("EO", "ES"):
            if p != 2:
                raise CurveError(f"{kind} models need characteristic 2")
            if kind == "EO":
                if self.b == zero:
                    raise CurveError("ordinary model needs b != 0")
                self.h = Poly.x(k)
                self.F = Poly(k, [self.b, zero, self.a, k.one])
            else:
                self.h = Poly.const(k, k.one)
                self.F = Poly(k, [self.b, self.a, zero, k.one])
        elif kind == "W":
            if p < 5:
                raise CurveError("short Weierstrass models need characteristic >= 5")
            A, B = self.a, self.b
            disc = k.add(k.mul(k.from_int(4), k.pow(A, 3)), k.mul(k.from_int(27), k.mul(B, B)))
            if disc == zero:
                raise CurveError("singular Weierstrass model (4A^3 + 27B^2 = 0)")
            self.h = Poly(k, [])
            self.F = Poly(k, [B, A, zero, k.one])
        else:
            raise CurveError(f"unknown curve kind {kind!r}")
        self._places_over = {}
        self._places_deg = {}
        self._irreducibles = {}
        self._dy = None

    # -- identity ---------------------------------------------------------
    @property
    def is_elliptic(self):
        return self.kind != "P1"

    @property
    def genus(self):
        return 0 if self.kind == "P1" else 1

    def literal(self):
        k = self.k
        if self.kind == "P1":
            return "P1"
        names = ("A", "B") if self.kind == "W" else ("a", "b")
        return f"{self.kind}({names[0]}={k.format(self.a)},{names[1]}={k.format(self.b)})"

    def __repr__(self):
        return self.literal()

    def __eq__(self, other):
        return (
            isinstance(other, CurveModel)
            and self.kind == other.kind
            and self.k == other.k
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.kind, self.k, self.a, self.b))

    # -- elements ---------------------------------------------------------
    def const(self, v):
        return FuncElem(self, RatFunc.const(self.k, v), None)

    def zero(self):
        return self.const(self.k.zero)

    def one(self):
        return self.const(self.k.one)

    def x(self):
        return FuncElem(self, RatFunc.x(self.k), None)

    def y(self):
        if not self.is_elliptic:
            raise CurveError("P1 has no y coordinate")
        k = self.k
        return FuncElem(self, RatFunc.const(k, k.zero), RatFunc.const(k, k.one))

    def elem(self, u, v=None):
        if isinstance(u, Poly):
            u = RatFunc(u)
        if isinstance(v, Poly):
            v = RatFunc(v)
        return FuncElem(self, u, v)

    def dydx(self):
        """dy/dx = (F' - h' y)/(2y + h) as a function on the curve."""
        if self._dy is None:
            k = self.k
            num = FuncElem(self, RatFunc(self.F.derivative()), RatFunc(-self.h.derivative()))
            den = FuncElem(self, RatFunc(self.h), RatFunc.const(k, k.from_int(2)))
            self._dy = num / den
        return self._dy

    # -- places -----------------------------------------------------------
    def infinity(self):
        key = "inf"
        if key not in self._places_over:
            self._places_over[key] = [Place(self, None, None, None, None, "inf")]
        return self._places_over[key][0]

    def places_over(self, pi):
        """The places lying over the monic irreducible pi(x) (1 or 2 of them)."""
        key = pi.c
        hit = self._places_over.get(key)
        if hit is not None:
            return hit
        k = self.k
        n = pi.degree
        if n == 1:
            K1, x0 = k, k.neg(pi.c[0])
        else:
            K1 = fields.extension(k, list(pi.c), "x")
            x0 = K1.gen
        if not self.is_elliptic:
            out = [Place(self, pi, K1, x0, None, "p1")]
        else:
            h0 = self.h.eval_in(K1, x0)
            F0 = self.F.eval_in(K1, x0)
            out = self._classify(pi, K1, x0, h0, F0)
        self._places_over[key] = out
        return out

    def _classify(self, pi, K1, x0, h0, F0):
        if self.k.p == 2:
            if h0 == K1.zero:
                return [Place(self, pi, K1, x0, K1.sqrt(F0), "ramified")]
            c = K1.div(F0, K1.mul(h0, h0))
            s = fields.as_solve_value(K1, c)
            if s is not None:
                y0 = K1.mul(h0, s)
                y1 = K1.add(y0, h0)
                return [Place(self, pi, K1, x0, y, "split") for y in sorted((y0, y1), key=K1.sort_key)]
            modulus = [K1.neg(F0), h0, K1.one]
        else:
            if F0 == K1.zero:
                return [Place(self, pi, K1, x0, K1.zero, "ramified")]
            r = K1.sqrt(F0)
            if r is not None:
                return [Place(self, pi, K1, x0, y, "split") for y in sorted((r, K1.neg(r)), key=K1.sort_key)]
            modulus = [K1.neg(F0), K1.zero, K1.one]
        kappa = fields.extension(K1, modulus, "y")
        return [Place(self, pi, kappa, kappa.from_base(x0), kappa.gen, "inert", base_field=K1)]

    def irreducibles(self, n):
        """Monic irreducible polynomials of degree n over k, sorted."""
        hit = self._irreducibles.get(n)
        if hit is None:
            hit = monic_irreducibles(self.k, n)
            self._irreducibles[n] = hit
        return hit

    def places_of_degree(self, d):
        hit = self._places_deg.get(d)
        if hit is not None:
            return hit
        out = []
        if not self.is_elliptic:
            out = [self.places_over(pi)[0] for pi in self.irreducibles(d)]
        else:
            for n in (d, d // 2) if d % 2 == 0 else (d,):
                for pi in self.irreducibles(n):
                    out.extend(P for P in self.places_over(pi) if P.degree == d)
            out.sort(key=lambda P: P.sort_key())
        if d == 1:
            out.append(self.infinity())
        self._places_deg[d] = out
        return out

    def count_places(self, d):
        return len(self.places_of_degree(d))

    def point_count(self, m):
        """#X(GF(q^m)) from place counts."""
        return sum(d * self.count_places(d) for d in range(1, m + 1) if m % d == 0)


def monic_irreducibles(k, n):
    out = []
    zero, one = k.zero, k.one
    elems = list(k.elements())
    if n == 1:
        return [Poly(k, [k.neg(c), one]) for c in sorted(elems, key=lambda v: k.sort_key(k.neg(v)))]
    for tail in itertools.product(elems, repeat=n):
        if tail[0] == zero:
            continue
        c = list(tail) + [one]
        if polyops.is_irreducible(k, c):
            out.append(Poly(k, c))
    out.sort(key=lambda P: P.sort_key())
    return out


# ---------------------------------------------------------------------------
# function field elements

class FuncElem:
    """u + v*y with u, v in k(x); v is always zero on P1."""

    __slots__ = ("curve", "u", "v")

    def __init__(self, curve, u, v=None):
        self.curve = curve
        k = curve.k
        self.u = u
        if v is None or (not curve.is_elliptic):
            if v is not None and not v.is_zero():
                raise CurveError("P1 elements cannot involve y")
            v = RatFunc.const(k, k.zero)
        self.v = v

    def _mk(self, u, v):
        return FuncElem(self.curve, u, v)

    def is_zero(self):
        return self.u.is_zero() and self.v.is_zero()

    def is_const(self):
        return self.v.is_zero() and self.u.is_const()

    def const_value(self):
        assert self.is_const()
        return self.u.num.coeff(0)

    def __eq__(self, other):
        if not isinstance(other, FuncElem):
            return NotImplemented
        return self.u == other.u and self.v == other.v

    def __hash__(self):
        return hash((self.u, self.v))

    def __bool__(self):
        return not self.is_zero()

    def _coerce(self, other):
        if isinstance(other, FuncElem):
            return other
        if isinstance(other, int):
            return self.curve.const(self.curve.k.from_int(other))
        if isinstance(other, RatFunc):
            return FuncElem(self.curve, other, None)
        if isinstance(other, fields.FieldElem):
            return self.curve.const(other.value)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return self._mk(self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self._mk(self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return self._mk(-self.u, -self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if self.v.is_zero() and o.v.is_zero():
            return self._mk(self.u * o.u, None)
        C = self.curve
        h, F = RatFunc(C.h), RatFunc(C.F)
        vv = self.v * o.v
        u = self.u * o.u + vv * F
        v = self.u * o.v + o.u * self.v - vv * h
        return self._mk(u, v)

    __rmul__ = __mul__

    def scale(self, c):
        """Multiply by a raw constant of k."""
        return self._mk(self.u.scale(c), self.v.scale(c))

    def norm(self):
        """u^2 - u v h - v^2 F, an element of k(x)."""
        if self.v.is_zero():
            return self.u.square()
        C = self.curve
        return self.u.square() - self.u * self.v * RatFunc(C.h) - self.v.square() * RatFunc(C.F)

    def conj(self):
        if self.v.is_zero():
            return self
        return self._mk(self.u - self.v * RatFunc(self.curve.h), -self.v)

    def inv(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero function")
        if self.v.is_zero():
            return self._mk(self.u.inv(), None)
        n = self.norm().inv()
        c = self.conj()
        return self._mk(c.u * n, c.v * n)

    def __truediv__(self, other):
        o = self._coerce(other)
        return self * o.inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        result = self.curve.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def frob(self):
        """Raise to the p-th power."""
        return self ** self.curve.k.p

    def derivative(self):
        """d/dx of this function."""
        du = self.u.derivative()
        if self.v.is_zero():
            return self._mk(du, None)
        return self._mk(du, self.v.derivative()) + self._mk(self.v, None) * self.curve.dydx()

    def sqrt(self):
        """Square root in characteristic 2: (a + b y)^2 = a^2 + b^2 F + b^2 h y."""
        C = self.curve
        if C.k.p != 2:
            raise NotASquare("square roots are only implemented in characteristic 2")
        if self.v.is_zero():
            return self._mk(self.u.sqrt(), None)
        b = (self.v / RatFunc(C.h)).sqrt()
        a = (self.u + b.square() * RatFunc(C.F)).sqrt()
        return self._mk(a, b)

    def common_form(self):
        """(A, B, C) polynomials with self = (A + B y)/C, C monic."""
        u, v = self.u, self.v
        C = _lcm(u.den, v.den)
        A = u.num * (C // u.den)
        B = v.num * (C // v.den)
        return A, B, C

    def pole_degree(self):
        """-v_inf(self): pole order at infinity."""
        return -valuation(self, self.curve.infinity())

    def literal(self):
        return format_func(self)

    def __repr__(self):
        return self.literal()


def _lcm(a, b):
    if a == b:
        return a
    return (a * b) // a.gcd(b)


def _fmt_rat(r):
    if r.den.is_one():
        return format_poly(r.num)
    return f"({format_poly(r.num)})/({format_poly(r.den)})"


def format_func(f):
    if f.v.is_zero():
        return _fmt_rat(f.u)
    parts = []
    if not f.u.is_zero():
        parts.append(_fmt_rat(f.u))
    v = f.v
    vn = format_poly(v.num)
    if v.num.is_one():
        term = "y"
    else:
        term = f"({vn})*y"
    if not v.den.is_one():
        term = f"{term}/({format_poly(v.den)})"
    parts.append(term)
    return "+".join(parts)


class Differential:
    """omega = h dx."""

    __slots__ = ("h",)

    def __init__(self, h):
        self.h = h

    @property
    def curve(self):
        return self.h.curve

    def is_zero(self):
        return self.h.is_zero()

    def __add__(self, other):
        return Differential(self.h + other.h)

    def __sub__(self, other):
        return Differential(self.h - other.h)

    def __neg__(self):
        return Differential(-self.h)

    def __mul__(self, f):
        return Differential(self.h * f)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Differential) and self.h == other.h

    def __hash__(self):
        return hash(self.h)

    def literal(self):
        return f"({self.h.literal()}) dx"

    def __repr__(self):
        return self.literal()


def d(f):
    """Exterior derivative df = (df/dx) dx."""
    return Differential(f.derivative())


def is_separating(f):
    return not f.derivative().is_zero()


# ---------------------------------------------------------------------------
# places

class Place:
    def __init__(self, curve, pi, kappa, x0, y0, kind, base_field=None):
        self.curve = curve
        self.pi = pi
        self.kappa = kappa if kappa is not None else curve.k
        self.x0 = x0
        self.y0 = y0
        self.kind = kind
        self.base_field = base_field
        k = curve.k
        if kind == "inf":
            self.degree = 1
            self.e = 2 if curve.is_elliptic else 1
        else:
            self.degree = pi.degree * (2 if kind == "inert" else 1)
            self.e = 2 if kind == "ramified" else 1
        self._local = {}
        self.uniformizer = self._choose_uniformizer()

    # identity
    def key(self):
        if self.kind == "inf":
            return ("inf",)
        return ("fin", self.pi.c, self.y0 if self.kind == "split" else None)

    def __eq__(self, other):
        return isinstance(other, Place) and other.curve is self.curve and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def sort_key(self):
        if self.kind == "inf":
            return (1,)
        y = self.kappa.sort_key(self.y0) if self.y0 is not None else ()
        return (0, self.pi.sort_key(), y)

    @property
    def is_infinite(self):
        return self.kind == "inf"

    @property
    def size(self):
        """#kappa(P)."""
        return self.curve.k.order ** self.degree

    def literal(self):
        if self.kind == "inf":
            return "inf"
        K = self.kappa
        parts = [format_poly(self.pi), K.format(self.x0)]
        if self.y0 is not None:
            parts.append(K.format(self.y0))
        return f"({parts[0]}; {', '.join(parts[1:])})"

    def __repr__(self):
        return self.literal()

    # uniformizer
    def _choose_uniformizer(self):
        C = self.curve
        k = C.k
        if self.kind == "inf":
            if not C.is_elliptic:
                return C.x().inv()
            cands = [C.x() / C.y()]
            if C.kind == "EO":
                B4 = k.sqrt(C.b)
                cands.append(C.x() / (C.y() + C.const(B4)))
        elif self.kind == "ramified":
            # y0 lies in k whenever x is ramified (h(x0) = 0 or F(x0) = 0 over k)
            y0 = self.kappa.in_ground(self.y0)
            cands = [C.y() - C.const(y0)] if y0 is not None and self.pi.degree == 1 else []
            cands.append(C.y())
        else:
            cands = [FuncElem(C, RatFunc(self.pi), None)]
        for u in cands:
            if valuation(u, self) == 1:
                return u
        raise CurveError(f"no uniformizer found at {self.literal()}")

    def value(self, f):
        """f(P) in the residue field; None at a pole."""
        v = valuation(f, self)
        if v is None:
            return self.kappa.zero
        if v < 0:
            return None
        if v > 0:
            return self.kappa.zero
        if self.kind != "inf":
            A, B, Cc = f.common_form()
            K = self.kappa
            c = Cc.eval_in(K, self.x0)
            if c != K.zero:
                num = A.eval_in(K, self.x0)
                if not B.is_zero():
                    num = K.add(num, K.mul(B.eval_in(K, self.x0), self.y0))
                return K.div(num, c)
        return local_expand(f, self, 1).coeff(0)

    def lift(self, alpha):
        """A global function whose value at P is alpha (alpha in the residue field)."""
        C = self.curve
        k = C.k
        K = self.kappa
        if self.kind == "inf" or self.pi.degree == 1 and self.kind != "inert":
            v = K.in_ground(alpha)
            return C.const(v)
        if self.kind == "inert":
            K1 = self.base_field
            a0, a1 = K.rel_coords(alpha)
            if K1 is k:
                return C.const(a0) + C.y().scale(a1)
            p0 = Poly(k, K1.rel_coords(a0))
            p1 = Poly(k, K1.rel_coords(a1))
            return FuncElem(C, RatFunc(p0), RatFunc(p1))
        return FuncElem(C, RatFunc(Poly(k, K.rel_coords(alpha))), None)

    def embed_value(self, c):
        """A raw element of k as an element of the residue field."""
        return self.kappa.embed(c)


class Divisor:
    """Finite formal sum of places."""

    def __init__(self, coeffs=None):
        self.coeffs = {}
        for P, n in (coeffs or {}).items():
            if n:
                self.coeffs[P] = self.coeffs.get(P, 0) + n

    def __getitem__(self, P):
        return self.coeffs.get(P, 0)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda t: t[0].sort_key())

    def __add__(self, other):
        out = dict(self.coeffs)
        for P, n in other.coeffs.items():
            out[P] = out.get(P, 0) + n
        return Divisor({P: n for P, n in out.items() if n})

    def __neg__(self):
        return Divisor({P: -n for P, n in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, m):
        return Divisor({P: m * n for P, n in self.coeffs.items()})

    @property
    def degree(self):
        return sum(n * P.degree for P, n in self.coeffs.items())

    def is_effective(self):
        return all(n >= 0 for n in self.coeffs.values())

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.coeffs == other.coeffs

    def literal(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{n}*{P.literal()}" for P, n in self.items())

    def __repr__(self):
        return self.literal()


# ---------------------------------------------------------------------------
# valuations

def valuation(f, P):
    """Order of f at P; None for f = 0 (that is, +infinity)."""
    if f.is_zero():
        return None
    C = P.curve
    if P.kind == "inf":
        if not C.is_elliptic:
            return -f.u.degree
        A, B, Cc = f.common_form()
        cands = []
        if not A.is_zero():
            cands.append(-2 * A.degree)
        if not B.is_zero():
            cands.append(-2 * B.degree - 3)
        return min(cands) + 2 * Cc.degree
    pi = P.pi
    if not C.is_elliptic:
        return f.u.valuation_at(pi)
    A, B, Cc = f.common_form()
    vc = Cc.valuation_at(pi) * P.e
    return _val_poly_pair(C, P, A, B) - vc


def _val_poly_pair(C, P, A, B):
    """v_P(A + B y) for polynomials A, B not both zero."""
    pi = P.pi
    if B.is_zero():
        return A.valuation_at(pi) * P.e
    if A.is_zero():
        return B.valuation_at(pi) * P.e + _val_y(C, P)
    if P.kind == "split":
        s = 0
        while True:
            qa, ra = divmod(A, pi)
            qb, rb = divmod(B, pi)
            if ra.is_zero() and rb.is_zero():
                A, B, s = qa, qb, s + 1
            else:
                break
        K = P.kappa
        val_at = K.add(A.eval_in(K, P.x0), K.mul(B.eval_in(K, P.x0), P.y0))
        if val_at != K.zero:
            return s
        N = A.square() - A * B * C.h - B.square() * C.F
        return s + N.valuation_at(pi)
    N = A.square() - A * B * C.h - B.square() * C.F
    vn = N.valuation_at(pi)
    if P.kind == "inert":
        return vn // 2
    return vn


def _val_y(C, P):
    N = -C.F
    if P.kind == "split":
        K = P.kappa
        return 0 if P.y0 != K.zero else N.valuation_at(P.pi)
    vn = N.valuation_at(P.pi)
    return vn // 2 if P.kind == "inert" else vn


def divisor_of(f):
    """div(f) as a Divisor."""
    C = f.curve
    out = {}
    for P in support_places(f):
        v = valuation(f, P)
        if v:
            out[P] = v
    return Divisor(out)


def places_over_poly(C, g):
    """All places lying over the roots of the nonzero polynomial g."""
    out = []
    if g.is_const():
        return out
    for pi, _ in g.factor():
        out.extend(C.places_over(pi))
    return out


def support_places(f):
    """Places where f may have a zero or pole (a superset of supp div f)."""
    C = f.curve
    A, B, Cc = f.common_form()
    if C.is_elliptic:
        N = A.square() - A * B * C.h - B.square() * C.F
    else:
        N = A
    seen = {}
    for P in places_over_poly(C, Cc) + places_over_poly(C, N):
        seen[P] = None
    seen[C.infinity()] = None
    return sorted(seen, key=lambda P: P.sort_key())


def pole_places(f):
    C = f.curve
    out = [P for P in places_over_poly(C, f.common_form()[2])]
    out.append(C.infinity())
    return [P for P in out if (valuation(f, P) or 0) < 0]


# ---------------------------------------------------------------------------
# local expansions

def _poly_series(P, poly, S):
    """poly(S) where poly has coefficients in k and S is a series over kappa."""
    K = P.kappa
    big = S.prec + 10 ** 6
    acc = Laurent(K, 0, [], big)
    emb = K.embed
    for c in reversed(poly.c):
        acc = acc * S + Laurent(K, 0, [emb(c)], big)
    if not poly.c:
        acc = Laurent(K, big, [], big)
    return acc


def _rat_series(P, r, S):
    num = _poly_series(P, r.num, S)
    if r.den.is_one():
        return num
    return num / _poly_series(P, r.den, S)


def _elem_series(P, f, X, Y):
    s = _rat_series(P, f.u, X)
    if f.v.is_zero():
        return s
    return s + _rat_series(P, f.v, X) * Y


def _newton(P, G, dG, start, prec):
    """Solve G(Z) = 0 for a power series Z with Z(0) = start."""
    K = P.kappa
    Z = Laurent(K, 0, [start], prec)
    for _ in range(prec.bit_length() + 3):
        g = G(Z)
        if g.is_zero() and g.prec >= prec:
            break
        Z = (Z - g / dG(Z)).truncate(prec)
    return Z


def _internal_param(P, prec):
    """(X(t), Y(t)) for an internal local parameter t, both to precision prec."""
    C = P.curve
    K = P.kappa
    t = Laurent.gen(K, prec + 10 ** 6)
    big = prec + 10 ** 6
    if P.kind == "inf":
        if not C.is_elliptic:
            return Laurent(K, -1, [K.one], prec), None
        # Weierstrass coordinates z = -x/y, w = -1/y with w(z) by fixed point
        a1 = C.h.coeff(1)
        a3 = C.h.coeff(0)
        a2, a4, a6 = C.F.coeff(2), C.F.coeff(1), C.F.coeff(0)
        emb = K.embed
        k = C.k
        N = prec + 6
        z = Laurent.gen(K, N)

        def cst(c):
            return Laurent(K, 0, [emb(c)], big)

        c1, c2, c3, c4, c6 = (cst(c) for c in (a1, a2, a3, a4, a6))
        one, two, three = cst(k.one), cst(k.from_int(2)), cst(k.from_int(3))
        z2, z3 = z * z, z * z * z

        def G(w):
            w2 = w * w
            return w - (z3 + c1 * z * w + c2 * z2 * w + c3 * w2 + c4 * z * w2 + c6 * w2 * w)

        def dG(w):
            return one - c1 * z - c2 * z2 - two * c3 * w - two * c4 * z * w - three * c6 * w * w

        w = Laurent(K, 3, [K.one], N)
        for _ in range(N.bit_length() + 3):
            g = G(w)
            if g.is_zero():
                break
            w = (w - g / dG(w)).truncate(N)
        X = z / w
        Y = -(w.inv())
        return X, Y
    x0 = P.x0
    if not C.is_elliptic:
        return Laurent(K, 0, [x0, K.one], prec), None
    h, F = C.h, C.F
    if P.kind != "ramified":
        X = Laurent(K, 0, [x0, K.one], prec)
        hX = _poly_series(P, h, X).truncate(prec)
        FX = _poly_series(P, F, X).truncate(prec)
        two = Laurent(K, 0, [K.from_int(2)], big)

        def G(Y):
            return Y * Y + hX * Y - FX

        def dG(Y):
            return two * Y + hX

        return X, _newton(P, G, dG, P.y0, prec)
    Y = Laurent(K, 0, [P.y0, K.one], prec)
    dh, dF = h.derivative(), F.derivative()

    def G2(X):
        return Y * Y + _poly_series(P, h, X) * Y - _poly_series(P, F, X)

    def dG2(X):
        return _poly_series(P, dh, X) * Y - _poly_series(P, dF, X)

    return _newton(P, G2, dG2, x0, prec), Y


def _local_coords(P, prec):
    """(X(u), Y(u)) in the stored uniformizer u, cached per working precision."""
    hit = P._local.get(prec)
    if hit is not None:
        return hit
    X, Y = _internal_param(P, prec)
    X = X.truncate(X.val + prec)
    if Y is not None:
        Y = Y.truncate(Y.val + prec)
    U = _elem_series(P, P.uniformizer, X, Y)
    if not (U.val == 1 and U.c == [P.kappa.one]):
        T = U.reversion()
        X = X.compose(T)
        if Y is not None:
            Y = Y.compose(T)
    P._local[prec] = (X, Y)
    return X, Y


def _expand_at_work(f, P, work):
    X, Y = _local_coords(P, work)
    return _elem_series(P, f, X, Y)


def lead_at_infinity(f):
    """(v, c): f = c u^v + ... at infinity, read off from degrees.

    For every supported model the uniformizer at infinity makes x = u^-2 + ...
    and y = u^-3 + ... (or x = u^-1 on P1), so no series is needed.
    """
    C = f.curve
    if f.is_zero():
        return None, C.k.zero
    A, B, D = f.common_form()
    k = C.k
    if not C.is_elliptic:
        return D.degree - A.degree, k.div(A.lead, D.lead)
    da = 2 * A.degree if not A.is_zero() else None
    db = 2 * B.degree + 3 if not B.is_zero() else None
    if db is None or (da is not None and da > db):
        return 2 * D.degree - da, k.div(A.lead, D.lead)
    return 2 * D.degree - db, k.div(B.lead, D.lead)


def local_expand(f, P, precision):
    """Laurent expansion of f in the stored uniformizer at P, known below u^precision."""
    work = max(8, 2 * abs(precision))
    while True:
        try:
            s = _expand_at_work(f, P, work)
            if s.prec >= precision:
                return s.truncate(precision)
        except PrecisionExhausted:
            pass
        if work >= PRECISION_CAP:
            raise PrecisionExhausted(f"could not reach precision {precision} at {P.literal()}")
        work = min(2 * work, PRECISION_CAP)


def residue(omega, P):
    """Residue of omega = h dx at P, traced down to k."""
    h = omega.h
    if h.is_zero():
        return P.curve.k.zero
    v = valuation(h, P)
    work = max(8, 2 * abs(v) + 8)
    K = P.kappa
    while True:
        try:
            X, Y = _local_coords(P, work)
            s = _elem_series(P, h, X, Y) * X.derivative()
            if s.prec > -1:
                return K.trace_to_ground(s.coeff(-1))
        except PrecisionExhausted:
            pass
        if work >= PRECISION_CAP:
            raise PrecisionExhausted(f"residue at {P.literal()} needs more precision")
        work = min(2 * work, PRECISION_CAP)


def differential_poles(omega):
    """Places where omega = h dx has a pole (dx is regular off infinity)."""
    if omega.h.is_zero():
        return []
    C = omega.curve
    inf = C.infinity()
    out = [P for P in pole_places(omega.h) if not P.is_infinite]
    dx_val = local_expand(C.x(), inf, 4).derivative().val
    if valuation(omega.h, inf) + dx_val < 0:
        out.append(inf)
    return out


def residue_sum(omega):
    """Sum of all residues of omega (zero by the residue theorem)."""
    C = omega.curve
    k = C.k
    places = set(pole_places(omega.h)) | {C.infinity()}
    acc = k.zero
    for P in places:
        acc = k.add(acc, residue(omega, P))
    return acc


# ---------------------------------------------------------------------------
# Riemann-Roch spaces

def riemann_roch_basis(C, n):
    """Basis of L(n*inf) sorted by pole order."""
    if n < 0:
        return []
    x = C.x()
    if not C.is_elliptic:
        return [x ** i for i in range(n + 1)]
    y = C.y()
    out = []
    for m in range(n + 1):
        if m == 1:
            continue
        if m % 2 == 0:
            out.append(x ** (m // 2))
        else:
            out.append(x ** ((m - 3) // 2) * y)
    return out


def pole_order_basis_element(C, m):
    """The basis monomial of exact pole order m at infinity (None if m is a gap)."""
    if not C.is_elliptic:
        return C.x() ** m
    if m == 1:
        return None
    if m % 2 == 0:
        return C.x() ** (m // 2)
    return C.x() ** ((m - 3) // 2) * C.y()


def jet_rows(P, basis, m):
    """k-linear conditions for v_P(sum c_i b_i) >= m, as rows over k."""
    K = P.kappa
    if m <= 0:
        return []
    exps = [local_expand(b, P, m) for b in basis]
    rows = []
    for j in range(m):
        coords = [K.ground_coords(s.coeff(j)) for s in exps]
        for l in range(len(coords[0])):
            rows.append([c[l] for c in coords])
    return rows


def riemann_roch_space(C, D):
    """Basis of L(D) = {f : div f + D >= 0} for a Divisor D."""
    k = C.k
    inf = C.infinity()
    n_inf = D[inf]
    finite = [(P, n) for P, n in D.coeffs.items() if P != inf]
    # clear allowed poles with a polynomial in x
    Cp = Poly.const(k, k.one)
    pis = {}
    for P, n in finite:
        if n > 0:
            need = -(-n // P.e)
            pis[P.pi.c] = max(pis.get(P.pi.c, 0), need)
    for c, m in pis.items():
        Cp = Cp * (Poly(k, list(c)) ** m)
    M = n_inf + inf.e * Cp.degree
    if M < 0:
        return []
    basis = riemann_roch_basis(C, M)
    Cf = FuncElem(C, RatFunc(Cp), None)
    conds = {}
    for c in pis:
        for P in C.places_over(Poly(k, list(c))):
            conds[P] = valuation(Cf, P) - D[P]
    for P, n in finite:
        if P not in conds:
            conds[P] = -n
    rows = []
    for P, m in conds.items():
        rows.extend(jet_rows(P, basis, m))
    from .linalg import nullspace
    if rows:
        null = nullspace(k, rows, len(basis))
    else:
        null = [[k.one if i == j else k.zero for i in range(len(basis))] for j in range(len(basis))]
    Cinv = Cf.inv()
    out = []
    for vec in null:
        g = C.zero()
        for c, b in zip(vec, basis):
            if c != k.zero:
                g = g + b.scale(c)
        out.append(g * Cinv)
    return out


# ---------------------------------------------------------------------------
# zeta data

def zeta_numerator(C):
    """(a, q) with L(T) = 1 - a T + q T^2 (a = 0 and L = 1 for P1)."""
    q = C.k.order
    if not C.is_elliptic:
        return 0, q
    n1 = C.point_count(1)
    a = q + 1 - n1
    n2 = C.point_count(2)
    if n2 != q * q + 1 - (a * a - 2 * q):
        raise CurveError("point counts inconsistent with a genus-1 zeta function")
    return a, q


def zeta_inv_sq(C):
    """zeta_X(2)^(-2) as an exact Fraction."""
    q = C.k.order
    base = (1 - Fraction(1, q * q)) * (1 - Fraction(1, q))
    if C.is_elliptic:
        a, _ = zeta_numerator(C)
        base /= 1 - Fraction(a, q * q) + Fraction(1, q ** 3)
    return base * base
