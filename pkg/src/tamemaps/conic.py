"""Conic fibers C_{g,da}, Artin-Schreier solving in k(X) and the elliptic analyses.

A point (f1 : f2 : f3) on T1 T3 + T2^2 + b (T1^2 + g T3^2) = 0 gives a
solution f = f1^4 g + f2^4 g^2 + f3^4 g^3 of SY(f, g) = da, where a = b^2 g.

Internally a fiber is stored as T1 T3 + T2^2 + alpha T1^2 + beta T3^2 together
with the substitution T2 -> T2 + s T1 + t T3 that produced it from the
(b, b g) form.  Shifting changes alpha by s^2 and beta by t^2, which is how
square parts are removed before searching for points with constant
coordinates.
"""
from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from . import linalg
from .curve import (CurveModel, Differential, Divisor, FuncElem, d, is_separating,
                    pole_places, riemann_roch_basis, riemann_roch_space, valuation)
from .errors import CharacteristicMismatch, NotPseudotame, NotSeparating, SearchExhausted
from .fields import FieldElem, as_solve_value
from .poly import Poly, RatFunc
from .symbol import d_by, sy
from .tame import _dx_places, dx_order, is_tame, pseudotame_at, pseudotame_to_tame


def _require_char2(C):
    if C.k.p != 2:
        raise CharacteristicMismatch("conic fibers are a characteristic-2 construction")


def _fourth(e):
    e2 = e * e
    return e2 * e2


def _as_func(C, v):
    if isinstance(v, FuncElem):
        return v
    if isinstance(v, FieldElem):
        v = v.value
    return C.const(v)


def _raw(k, v):
    return v.value if isinstance(v, FieldElem) else v


# ---------------------------------------------------------------------------
# fibers and points

class ConicFiber:
    """T1 T3 + T2^2 + b (T1^2 + g T3^2), possibly after a T2 shift."""

    def __init__(self, g, b, alpha=None, beta=None, shift=None):
        self.g, self.b = g, b
        self.alpha = b if alpha is None else alpha
        self.beta = b * g if beta is None else beta
        C = g.curve
        self.shift = shift or (C.zero(), C.zero())

    @property
    def curve(self):
        return self.g.curve

    def is_degenerate(self):
        return self.alpha.is_zero() and self.beta.is_zero()

    def shifted(self, s, t):
        """The same conic in coordinates T2' = T2 + s T1 + t T3."""
        s0, t0 = self.shift
        return ConicFiber(self.g, self.b, self.alpha + s * s, self.beta + t * t, (s0 + s, t0 + t))

    def to_base(self, pt):
        """Express a point of this fiber in the original (b, b g) coordinates."""
        s, t = self.shift
        return ConicPoint(pt.t1, pt.t2 + s * pt.t1 + t * pt.t3, pt.t3)

    def evaluate(self, pt):
        t1, t2, t3 = pt.t1, pt.t2, pt.t3
        return t1 * t3 + t2 * t2 + self.alpha * t1 * t1 + self.beta * t3 * t3

    def literal(self):
        return f"T1*T3+T2^2+({self.alpha.literal()})*T1^2+({self.beta.literal()})*T3^2"

    def __repr__(self):
        return self.literal()


@dataclass(frozen=True)
class ConicPoint:
    t1: FuncElem
    t2: FuncElem
    t3: FuncElem

    def is_trivial(self):
        return self.t1.is_zero() and self.t2.is_zero() and self.t3.is_zero()

    def normalized(self):
        """Scale so that the last nonzero coordinate is 1."""
        for c in (self.t3, self.t1, self.t2):
            if not c.is_zero():
                inv = c.inv()
                return ConicPoint(self.t1 * inv, self.t2 * inv, self.t3 * inv)
        return self

    def cleared(self):
        """Scale by a polynomial in x so that no coordinate has a denominator."""
        C = self.t1.curve
        L = None
        for c in (self.t1, self.t2, self.t3):
            den = c.common_form()[2]
            L = den if L is None else (L * den) // L.gcd(den)
        if L.is_one():
            return self
        m = FuncElem(C, RatFunc(L), None)
        return ConicPoint(self.t1 * m, self.t2 * m, self.t3 * m)

    def literal(self):
        return f"({self.t1.literal()} : {self.t2.literal()} : {self.t3.literal()})"

    def __repr__(self):
        return self.literal()


def conic_fiber(g, a):
    """The fiber for SY(f, g) = da: b is the square root of a/g."""
    C = g.curve
    _require_char2(C)
    a = _as_func(C, a)
    if a.is_zero():
        return ConicFiber(g, C.zero())
    b = (a / g).sqrt()
    return ConicFiber(g, b)


def conic_contains(fiber, pt):
    if pt.is_trivial():
        return False
    return fiber.evaluate(pt).is_zero()


# ---------------------------------------------------------------------------
# Artin-Schreier equations z^2 + z = w in k(X)

def forced_pole_divisor(w):
    """Half the pole divisor of w; None when some pole order is odd (no solution)."""
    out = {}
    for P in pole_places(w):
        n = -valuation(w, P)
        if n % 2:
            return None
        out[P] = n // 2
    return Divisor(out)


def _dominates(D, E):
    return all(D[P] >= n for P, n in E.coeffs.items())


def _flatten(k, polys, length):
    out = []
    for P in polys:
        for i in range(length):
            out.extend(k.prime_coords(P.coeff(i)))
    return out


def _as_linear(w, basis):
    """GF(2)-linear solve of z^2 + z = w for z in the span of basis."""
    C = w.curve
    k = C.k
    m = k.degree
    units = [k.from_prime_coords([1 if j == i else 0 for j in range(m)]) for i in range(m)]
    imgs = []
    for e in basis:
        for beta in units:
            z = e.scale(beta)
            imgs.append(z * z + z)
    forms = [f.common_form() for f in imgs + [w]]
    L = Poly.const(k, k.one)
    for _, _, den in forms:
        if not (L % den).is_zero():
            L = (L * den) // L.gcd(den)
    pairs = []
    for A, B, den in forms:
        q = L // den
        pairs.append((A * q, B * q))
    length = max(max(len(A), len(B)) for A, B in pairs)
    vecs = [_flatten(k, pr, length) for pr in pairs]
    sol = linalg.solve_gf2(vecs[:-1], vecs[-1])
    if sol is None:
        return None
    z = C.zero()
    for i, e in enumerate(basis):
        c = k.from_prime_coords(sol[i * m:(i + 1) * m])
        if c != k.zero:
            z = z + e.scale(c)
    return z


def _canonical(z):
    """Of the two solutions z, z + 1 keep the one with the shorter literal."""
    alt = z + z.curve.one()
    return min((z, alt), key=lambda f: (len(f.literal()), f.literal()))


def as_solve_status(w, D=None):
    """(z, conclusive): z solves z^2 + z = w inside L(D), or is None.

    With D omitted the search space is L(forced pole divisor), which is
    complete.  Absence is reported as conclusive when some pole order of w is
    odd, or when D dominates the forced pole divisor.
    """
    C = w.curve
    _require_char2(C)
    if w.is_zero():
        return C.zero(), True
    if w.is_const():
        z = as_solve_value(C.k, w.const_value())
        return (None if z is None else C.const(z)), True
    Dw = forced_pole_divisor(w)
    if Dw is None:
        return None, True
    if D is None:
        D = Dw
    conclusive = _dominates(D, Dw)
    basis = riemann_roch_space(C, D)
    if not basis:
        return None, conclusive
    z = _as_linear(w, basis)
    if z is None:
        return None, conclusive
    assert z * z + z == w
    return _canonical(z), True


def as_solve_funcfield(w, D=None):
    """z in L(D) with z^2 + z = w, or None."""
    return as_solve_status(w, D)[0]


# ---------------------------------------------------------------------------
# rational points

def _square_reduce(fiber):
    """Shift T2 so alpha and beta lose their square parts relative to g."""
    g = fiber.g
    parts = []
    for c in (fiber.alpha, fiber.beta):
        if c.is_const():
            parts.append(c.sqrt())
            continue
        c1 = d_by(c, g).sqrt()
        parts.append((c + c1 * c1 * g).sqrt())
    return fiber.shifted(*parts)


def _try_uv(fiber, bound, u, v):
    """Point of the form (T1 : u T1 + v T3 : T3); returns (point, conclusive)."""
    C = fiber.curve
    lam = fiber.alpha + u * u
    mu = fiber.beta + v * v
    if lam.is_zero():
        return ConicPoint(C.one(), u, C.zero()), True
    s, conclusive = as_solve_status(lam * mu, bound)
    if s is None:
        return None, conclusive
    t1 = s / lam
    return ConicPoint(t1, u * t1 + v, C.one()), True


def default_uv_list(C):
    """The substitutions tried first: the standard choices on ordinary models."""
    zero, one = C.zero(), C.one()
    if C.kind == "EO":
        k = C.k
        B = k.root_p(k.root_p(k.root_p(C.b)))
        Bf = C.const(B)
        return [(zero, zero), (one, Bf), (one, C.x().scale(k.inv(B)))]
    return [(zero, zero)]


def _fallback_candidates(C, seed, tries):
    k = C.k
    consts = [k.from_index(i) for i in range(k.order)]
    out = [(C.const(u), C.const(v)) for u in consts for v in consts] if k.order <= 16 else []
    rng = random.Random(seed)
    basis = riemann_roch_basis(C, 4)
    for _ in range(tries):
        u = C.const(k.random_element(rng))
        v = C.zero()
        for b in basis:
            c = k.random_element(rng)
            if c != k.zero:
                v = v + b.scale(c)
        out.append((u, v))
    return out


def _search_chunk(fiber, bound, chunk):
    for u, v in chunk:
        pt, _ = _try_uv(fiber, bound, u, v)
        if pt is not None:
            return pt
    return None


def _point_search(fiber, bound=None, uv_list=None, seed=0, workers=1, tries=64):
    """(point in base coordinates, how, conclusive-for-uv_list)."""
    C = fiber.curve
    _require_char2(C)
    if fiber.is_degenerate():
        return ConicPoint(C.zero(), C.zero(), C.one()), "degenerate", True
    uv_list = default_uv_list(C) if uv_list is None else uv_list
    conclusive = True
    for u, v in uv_list:
        u, v = _as_func(C, u), _as_func(C, v)
        pt, conc = _try_uv(fiber, bound, u, v)
        conclusive = conclusive and conc
        if pt is not None:
            return fiber.to_base(pt), f"uv=({u.literal()},{v.literal()})", conclusive
    # reduce square parts, then sweep constant and low-degree substitutions
    red = _square_reduce(fiber)
    cands = _fallback_candidates(C, seed, tries)
    if workers <= 1:
        pt = _search_chunk(red, bound, cands)
    else:
        size = -(-len(cands) // workers)
        chunks = [cands[i:i + size] for i in range(0, len(cands), size)]
        with ThreadPoolExecutor(max_workers=workers) as ex:
            hits = list(ex.map(lambda ch: _search_chunk(red, bound, ch), chunks))
        pt = next((h for h in hits if h is not None), None)
    if pt is not None:
        return red.to_base(pt), "fallback", conclusive
    return None, "none", conclusive


def conic_point_search(fiber, bound=None, uv_list=None, seed=0, workers=1):
    """First point found through the (u, v) substitutions, then the fallback sweep."""
    pt, _, _ = _point_search(fiber, bound, uv_list, seed, workers)
    if pt is None:
        raise SearchExhausted("no rational point found on the conic fiber")
    assert conic_contains(fiber, pt)
    return pt


def point_to_function(fiber, pt):
    """f = f1^4 g + f2^4 g^2 + f3^4 g^3 for a point (f1 : f2 : f3); f0 is 0."""
    g = fiber.g
    pt = pt.cleared()
    return _fourth(pt.t1) * g + _fourth(pt.t2) * g * g + _fourth(pt.t3) * g * g * g


def symbol_solve(g, a, bound=None, uv_list=None, seed=0, workers=1):
    """f with SY(f, g) = da, built from a point of the conic fiber."""
    C = g.curve
    _require_char2(C)
    if g.is_const() or not is_separating(g):
        raise NotSeparating(f"{g.literal()} is not a separating function")
    a = _as_func(C, a)
    if d(a).is_zero():
        return g
    fiber = conic_fiber(g, a)
    pt = conic_point_search(fiber, bound, uv_list, seed, workers)
    f = point_to_function(fiber, pt)
    if sy(f, g) != d(a):
        raise SearchExhausted("point did not yield a solution of the symbol equation")
    return f


# ---------------------------------------------------------------------------
# elliptic curve analyses

@dataclass
class ECReport:
    curve: CurveModel
    symbol: Differential = None
    symbol_ok: bool = False
    coboundary_ok: bool = False
    conic: ConicFiber = None
    conic_ok: bool = False
    trace_cases: dict = dc_field(default_factory=dict)
    point: ConicPoint = None
    point_ok: bool = False
    pseudotame: FuncElem = None
    tame: FuncElem = None
    conclusive: bool = True
    notes: list = dc_field(default_factory=list)

    @property
    def success(self):
        return self.point is not None and self.pseudotame is not None

    def as_dict(self):
        lit = lambda o: None if o is None else o.literal()
        return {
            "curve": self.curve.literal(),
            "symbol": lit(self.symbol),
            "symbol_ok": self.symbol_ok,
            "coboundary_ok": self.coboundary_ok,
            "conic": lit(self.conic),
            "conic_ok": self.conic_ok,
            "point": lit(self.point),
            "pseudotame": lit(self.pseudotame),
            "tame": lit(self.tame),
            "trace_cases": dict(self.trace_cases),
            "conclusive": self.conclusive,
            "notes": list(self.notes),
        }


def _diff_val(omega, P):
    h = omega.h
    if h.is_zero():
        return None
    return valuation(h, P) + dx_order(P)


def _candidate_places(C, omegas, extra=()):
    cands = {C.infinity(): None}
    for om in omegas:
        if not om.h.is_zero():
            for P in pole_places(om.h):
                cands[P] = None
    for P in list(_dx_places(C)) + list(extra):
        cands[P] = None
    return sorted(cands, key=lambda P: P.sort_key())


def _good_chart(gen, P):
    """P lies in the open set where gen is regular and pseudotame."""
    if valuation(gen, P) < 0:
        return False
    return pseudotame_at(gen, P)


def _regular_on_chart(omega, gen, places):
    for P in places:
        if _good_chart(gen, P):
            v = _diff_val(omega, P)
            if v is not None and v < 0:
                return False
    return True


def _lift(f, seed, lift, report):
    if not lift:
        return None
    try:
        g = pseudotame_to_tame(f, seed=seed)
    except (SearchExhausted, NotPseudotame) as exc:
        report.notes.append(f"lift failed: {exc}")
        return None
    return g if is_tame(g) else None


def _trace_zero(k, v):
    return k.absolute_trace(v) == 0


def ec_ordinary_analysis(a, b, k=None, seed=0, lift=True, bound=None):
    """Obstruction analysis for y^2 + xy = x^3 + a x^2 + b."""
    if isinstance(a, FieldElem):
        k = a.field
    elif isinstance(b, FieldElem):
        k = b.field
    if k is None:
        raise ValueError("pass FieldElem parameters or the field k")
    a, b = _raw(k, a), _raw(k, b)
    C = CurveModel("EO", k, a, b)
    _require_char2(C)
    rep = ECReport(C)
    x, y = C.x(), C.y()
    B = k.root_p(k.root_p(k.root_p(b)))
    B2, B4 = k.mul(B, B), k.pow(B, 4)
    # the closed-form symbol of x/(y + B^4) against x
    fv = x / (y + C.const(B4))
    closed = ((x * x + x.scale(B) + C.const(B4)) / (x * (x + C.const(B2)))) ** 2
    rep.symbol = sy(fv, x)
    rep.symbol_ok = rep.symbol == Differential(closed)
    # coboundary split into a part regular on U (chart x) and one on V (chart fv)
    part_u = Differential((x * x + C.const(B4)) / (x * x))
    part_v = Differential(C.const(B2) / (x * x + C.const(B4)))
    places = _candidate_places(C, [part_u, part_v])
    rep.coboundary_ok = (part_u + part_v == rep.symbol
                         and _regular_on_chart(part_u, x, places)
                         and _regular_on_chart(part_v, fv, places))
    # the conic C_{x, d(x + B^4/x)}
    target = x + x.inv().scale(B4)
    fiber = conic_fiber(x, target)
    rep.conic = fiber
    rep.conic_ok = (fiber.alpha == C.one() + x.inv().scale(B2) and fiber.beta == x + C.const(B2))
    rep.trace_cases = {"a": _trace_zero(k, a), "b": _trace_zero(k, b),
                       "a+b": _trace_zero(k, k.add(a, b))}
    pt, how, conclusive = _point_search(fiber, bound, default_uv_list(C), seed)
    rep.conclusive = conclusive
    if pt is None:
        rep.notes.append("no point from the standard substitutions or the fallback sweep")
        return rep
    rep.notes.append(f"point via {how}")
    rep.point = pt
    rep.point_ok = conic_contains(fiber, pt)
    f = point_to_function(fiber, pt)
    if sy(f, x) != d(target):
        rep.notes.append("symbol equation check failed")
        return rep
    rep.pseudotame = f
    rep.tame = _lift(f, seed, lift, rep)
    return rep


def ec_supersingular_analysis(a, b, c, k=None, seed=0, lift=True):
    """Analysis of y^2 + y = x^3 + a x + b with the conic family d(x^3 + c^2 x)."""
    for v in (a, b, c):
        if isinstance(v, FieldElem):
            k = v.field
    if k is None:
        raise ValueError("pass FieldElem parameters or the field k")
    a, b, c = _raw(k, a), _raw(k, b), _raw(k, c)
    C = CurveModel("ES", k, a, b)
    rep = ECReport(C)
    x, y = C.x(), C.y()
    r = k.root_p
    a2, a4, b2, b4 = r(a), r(r(a)), r(b), r(r(b))
    c2, c4 = r(c), r(r(c))
    fv = y / (x * x)
    num = x.scale(a4) + y * y + C.const(k.add(b2, b))
    closed = (num / (x * (x + C.const(a2)))) ** 2
    rep.symbol = sy(fv, x)
    rep.symbol_ok = rep.symbol == Differential(closed)
    part_u = Differential(x * x + C.const(a))
    part_v = Differential((x * x).scale(a2) + y + x ** 3 + x.scale(a))
    part_v = Differential(part_v.h / (x * x * (x * x + C.const(a))))
    places = _candidate_places(C, [part_u, part_v])
    rep.coboundary_ok = (part_u + part_v == rep.symbol
                         and _regular_on_chart(part_u, x, places)
                         and _regular_on_chart(part_v, fv, places))
    target = x ** 3 + x.scale(k.mul(c, c))
    fiber = conic_fiber(x, target)
    # T2 -> T2 + c^(1/2) T1 + x T3 gives T1 T3 + T2^2 + x T1^2 + c x T3^2
    simple = fiber.shifted(C.const(c2), x)
    rep.conic = simple
    rep.conic_ok = simple.alpha == x and simple.beta == x.scale(c)
    rep.trace_cases = {"a": _trace_zero(k, a), "b": _trace_zero(k, b),
                       "a+b": _trace_zero(k, k.add(a, b))}
    pt = ConicPoint(C.const(c2), C.const(c4), C.one())
    rep.point_ok = conic_contains(simple, pt)
    rep.point = pt
    f = point_to_function(fiber, simple.to_base(pt))
    if sy(f, x) != d(target):
        rep.notes.append("symbol equation check failed")
        return rep
    rep.pseudotame = f
    if a == k.zero:
        rep.notes.append(f"y tame: {is_tame(y)}")
    rep.tame = _lift(f, seed, lift, rep)
    return rep
