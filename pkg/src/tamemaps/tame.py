"""Ramification, pseudotameness, the pseudotame-to-tame lift and Belyi maps."""
from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass, field as dc_field

from . import linalg
from .curve import (
    CurveModel,
    Divisor,
    FuncElem,
    is_separating,
    lead_at_infinity,
    local_expand,
    places_over_poly,
    pole_order_basis_element,
    pole_places,
    riemann_roch_basis,
    support_places,
    valuation,
)
from .errors import (
    CharacteristicMismatch,
    NotPseudotame,
    NotSeparating,
    OddIndexRequired,
    PrecisionExhausted,
    SearchExhausted,
)
from .poly import Poly, RatFunc


@functools.lru_cache(maxsize=None)
def target_line(k):
    """The target P^1 over k (shared so that image places compare equal)."""
    return CurveModel("P1", k)


def _require_sep(f):
    if f.is_const() or not is_separating(f):
        raise NotSeparating(f"{f.literal()} is not separating")


def dx_order(P):
    """v_P(dx)."""
    C = P.curve
    if not C.is_elliptic:
        return -2 if P.is_infinite else 0
    # dx/(2y + h) is a nowhere-vanishing invariant differential
    inv = C.y().scale(C.k.from_int(2)) + FuncElem(C, RatFunc(C.h), None)
    return valuation(inv, P)


def _dx_places(C):
    if not C.is_elliptic:
        return []
    if C.kind == "EO":
        return places_over_poly(C, Poly.x(C.k))
    if C.kind == "W":
        return places_over_poly(C, C.F)
    return []


def image_place(P, c):
    """The place of the target line under the residue value c (None means infinity)."""
    T = target_line(P.curve.k)
    if c is None:
        return T.infinity()
    mu = Poly(P.curve.k, P.kappa.minimal_polynomial(c))
    return T.places_over(mu)[0]


@dataclass
class RamEntry:
    place: object
    e: int
    wild: bool
    image: object

    def literal(self):
        return f"{self.place.literal()} e={self.e} {'wild' if self.wild else 'tame'} -> {self.image.literal()}"


@dataclass
class RamificationProfile:
    degree: int
    entries: list = dc_field(default_factory=list)
    inseparable: bool = False

    def is_tame(self):
        return not self.inseparable and not any(en.wild for en in self.entries)

    def is_simply_ramified(self):
        return all(en.e <= 2 for en in self.entries)

    def branch(self):
        seen = {}
        for en in self.entries:
            seen[en.image] = None
        return sorted(seen, key=lambda Q: Q.sort_key())


def _first_index(s, lo, hi):
    for i in range(lo, hi):
        if s.coeff(i) != s.K.zero:
            return i
    return None


def _inseparable_profile(f):
    # every point ramifies; report the zeros and poles of f
    C = f.curve
    entries, degree = [], 0
    for P in support_places(f):
        v = valuation(f, P)
        if v < 0:
            degree += -v * P.degree
            entries.append(RamEntry(P, -v, True, image_place(P, None)))
        elif v > 0:
            entries.append(RamEntry(P, v, True, image_place(P, P.kappa.zero)))
    return RamificationProfile(degree, entries, inseparable=True)


def ramification_profile(f):
    """Every ramified place of f : X -> P^1 with its index and image.

    A nonconstant inseparable f is ramified everywhere; its profile lists the
    zeros and poles of f and is flagged ``inseparable``.
    """
    if f.is_const():
        raise NotSeparating("constant functions define no morphism")
    if not is_separating(f):
        return _inseparable_profile(f)
    C = f.curve
    p = C.k.p
    fp = f.derivative()
    cands = {}
    for P in support_places(fp) + _dx_places(C) + pole_places(f) + [C.infinity()]:
        cands[P] = None
    entries = []
    degree = 0
    for P in sorted(cands, key=lambda P: P.sort_key()):
        v = valuation(f, P)
        if v < 0:
            degree += -v * P.degree
            e, img = -v, image_place(P, None)
        else:
            vd = valuation(fp, P) + dx_order(P)
            if vd < 1:
                continue
            c = P.value(f)
            cg = P.kappa.in_ground(c)
            if cg is not None:
                e = valuation(f - C.const(cg), P)
            else:
                s = local_expand(f, P, vd + 2)
                e = _first_index(s, 1, vd + 2)
                if e is None:
                    raise PrecisionExhausted("ramification index beyond the expected bound")
            img = image_place(P, c)
        if e >= 2:
            entries.append(RamEntry(P, e, e % p == 0, img))
    prof = RamificationProfile(degree, entries)
    # fiber bookkeeping over each branch point
    for Q in prof.branch():
        tot = sum(en.e * en.place.degree for en in entries if en.image == Q)
        assert tot <= degree * Q.degree, "fiber exceeds the degree of the map"
    return prof


def is_tame(f):
    return ramification_profile(f).is_tame()


def is_simply_ramified(f):
    return ramification_profile(f).is_simply_ramified()


def branch_locus(f):
    return ramification_profile(f).branch()


def map_degree(f):
    return sum(-valuation(f, P) * P.degree for P in pole_places(f))


# ---------------------------------------------------------------------------
# pseudotameness

def _require_char2(f):
    if f.curve.k.p != 2:
        raise CharacteristicMismatch("pseudotameness is a characteristic-2 notion")


def pseudotame_at(f, P):
    """The first expansion index not divisible by 4 with nonzero coefficient is odd."""
    _require_char2(f)
    if f.is_const():
        raise NotSeparating("constant functions define no morphism")
    if not is_separating(f):
        return False
    g = f.inv() if valuation(f, P) < 0 else f
    vd = valuation(g.derivative(), P) + dx_order(P)
    s = local_expand(g, P, vd + 2)
    for i in range(1, vd + 2):
        if i % 4 and s.coeff(i) != s.K.zero:
            return i % 2 == 1
    raise PrecisionExhausted("no index found below the derivative bound")


def is_pseudotame(f):
    prof = ramification_profile(f)
    if prof.inseparable:
        return False
    return all(pseudotame_at(f, en.place) for en in prof.entries if en.wild)


# ---------------------------------------------------------------------------
# Riemann-Hurwitz

@dataclass
class RHReport:
    holds: bool
    lhs: int
    rhs: int
    D: object = None
    note: str = ""

    def divisor(self):
        if self.D is None:
            raise OddIndexRequired(self.note or "some ramification index is even")
        return self.D


def riemann_hurwitz_check(f):
    prof = ramification_profile(f)
    C = f.curve
    lhs = 2 * C.genus - 2
    rhs = -2 * prof.degree + sum((en.e - 1) * en.place.degree for en in prof.entries)
    rep = RHReport(lhs == rhs and not prof.inseparable, lhs, rhs)
    if prof.is_tame() and all(en.e % 2 == 1 for en in prof.entries):
        rep.D = Divisor({en.place: (en.e - 1) // 2 for en in prof.entries})
    else:
        rep.note = "D needs every ramification index odd (and f tame)"
    if prof.inseparable:
        rep.note = "f is inseparable, so the tame formula does not apply; " + rep.note
    return rep


# ---------------------------------------------------------------------------
# the lift

def _affine_solve_in_L(C, conditions, max_pole):
    """Least pole order h in L(n inf), n <= max_pole, with prescribed jets.

    conditions: list of (place, [target jet coefficients in kappa]).
    """
    k = C.k
    if max_pole < 0:
        return None
    basis = riemann_roch_basis(C, max_pole)
    jets = []
    for P, targets in conditions:
        J = len(targets)
        exps = [local_expand(b, P, J) for b in basis]
        jets.append((P, targets, exps))
    for n in range(len(basis)):
        cols = n + 1
        rows, rhs = [], []
        for P, targets, exps in jets:
            K = P.kappa
            for j, t in enumerate(targets):
                coords = [K.ground_coords(exps[i].coeff(j)) for i in range(cols)]
                tc = K.ground_coords(t)
                for l in range(len(tc)):
                    rows.append([c[l] for c in coords])
                    rhs.append(tc[l])
        if not rows:
            return C.zero()
        sol = linalg.solve(k, rows, rhs, cols)
        if sol is not None:
            h = C.zero()
            for c, b in zip(sol, basis):
                if c != k.zero:
                    h = h + b.scale(c)
            return h
    return None


def _zeros_off_infinity(f):
    return [P for P in support_places(f) if not P.is_infinite and (valuation(f, P) or 0) > 0]


def _differential_zeros(f):
    """Places off infinity where df vanishes."""
    C = f.curve
    fp = f.derivative()
    cands = {P: None for P in support_places(fp) + _dx_places(C) if not P.is_infinite}
    return [P for P in sorted(cands, key=lambda P: P.sort_key()) if valuation(fp, P) + dx_order(P) > 0]


def _fourth(e):
    e2 = e * e
    return e2 * e2


def _odd_pole_step(f1, max_e=64):
    C = f1.curve
    inf = C.infinity()
    k = C.k
    for e1 in range(max_e):
        F = f1 ** (2 * e1 + 1)
        h = C.zero()
        while True:
            N = F.pole_degree()
            if N % 2 == 1:
                return F, e1, h
            if N % 4 == 2 or N <= 0:
                raise NotPseudotame("pole at infinity has order 2 mod 4 after reduction")
            b = pole_order_basis_element(C, N // 4)
            if b is None:
                break
            _, lead = lead_at_infinity(F)
            _, lb = lead_at_infinity(b)
            c = k.root_p(k.root_p(k.div(lead, k.pow(lb, 4))))
            hb = b.scale(c)
            F = F + _fourth(hb)
            h = h + hb
    raise SearchExhausted("no odd pole order reached at infinity")


def _avoid_step(f2, rng, budget):
    C = f2.curve
    g = C.genus
    d2 = f2.pole_degree()
    Y = {P: None for P in _zeros_off_infinity(f2) + _differential_zeros(f2)}
    Y = sorted(Y, key=lambda P: P.sort_key())
    e2 = 0
    while (2 * e2 + 1) * d2 <= 12 * g - 2:
        e2 += 1
    attempts = 0
    while attempts < budget:
        n = (2 * e2 + 1) * d2
        base = f2 ** (2 * e2 + 1)
        vals = {P: P.value(base) for P in Y}
        for trial in range(8):
            if attempts >= budget:
                break
            attempts += 1
            conds = []
            for P in Y:
                K = P.kappa
                if trial == 0:
                    t = K.one if vals[P] == K.zero else K.zero
                else:
                    while True:
                        t = K.random_element(rng)
                        if K.pow(t, 4) != vals[P]:
                            break
                conds.append((P, [t]))
            h3 = _affine_solve_in_L(C, conds, (n - 1) // 4)
            if h3 is None:
                continue
            f3 = base + _fourth(h3)
            if all(P.value(f3) != P.kappa.zero for P in Y):
                return f3, e2, h3, Y
        e2 += 1
    raise SearchExhausted(f"h3 search used its budget of {budget} attempts")


def _cube_step(f3):
    C = f3.curve
    Y = _differential_zeros(f3)
    F = f3 ** 3
    f3p = f3.derivative()
    conds = []
    for P in Y:
        K = P.kappa
        m = valuation(f3p, P) + dx_order(P)
        J = m // 4
        s = local_expand(F, P, 4 * J + 1)
        conds.append((P, [K.root_p(K.root_p(s.coeff(4 * j))) for j in range(J + 1)]))
    bound = (3 * f3.pole_degree() - 1) // 4
    h4 = _affine_solve_in_L(C, conds, bound)
    if h4 is None:
        raise SearchExhausted("no h4 with 4 deg(h4) < 3 deg(f3) solves the jet conditions")
    return F + _fourth(h4), h4


@dataclass
class LiftTrace:
    f1: object = None
    e1: int = 0
    h2: object = None
    f2: object = None
    e2: int = 0
    h3: object = None
    f3: object = None
    h4: object = None
    result: object = None


def pseudotame_to_tame(f, seed=0, budget=256, trace=None, check=True):
    """A tame element of the orbit of the pseudotame function f."""
    _require_char2(f)
    _require_sep(f)
    if is_tame(f):
        if trace is not None:
            trace.result = f
        return f
    if not is_pseudotame(f):
        raise NotPseudotame(f"{f.literal()} is not pseudotame")
    C = f.curve
    rng = random.Random(seed)
    tr = trace if trace is not None else LiftTrace()
    _, _, den = f.common_form()
    f1 = f * _fourth(FuncElem(C, RatFunc(den), None))
    tr.f1 = f1
    f2, tr.e1, tr.h2 = _odd_pole_step(f1)
    tr.f2 = f2
    f3, tr.e2, tr.h3, _ = _avoid_step(f2, rng, budget)
    tr.f3 = f3
    f4, tr.h4 = _cube_step(f3)
    tr.result = f4
    if check and not is_tame(f4):
        raise SearchExhausted("lift did not produce a tame function")
    return f4


# ---------------------------------------------------------------------------
# Belyi maps

def _branch_extension_degree(prof):
    s = 1
    for Q in prof.branch():
        if not Q.is_infinite:
            s = s * Q.degree // math.gcd(s, Q.degree)
    return s


def compose_power(f0, prof=None):
    """x^(q'-1) composed with f0, where GF(q') holds every branch point of f0."""
    prof = prof or ramification_profile(f0)
    s = _branch_extension_degree(prof)
    q = f0.curve.k.order ** s
    return f0 ** (q - 1), s


def _low_degree_tame(C, rng, max_pole=9, tries=400, max_s=4):
    """Seeded search for a tame function of small degree with rational-ish branch points."""
    k = C.k
    best = None
    for n in range(2 if C.is_elliptic else 1, max_pole + 1):
        basis = riemann_roch_basis(C, n)
        top = basis[-1]
        for _ in range(tries // max_pole + 1):
            f = top.scale(k.one)
            for b in basis[1:-1]:
                c = k.random_element(rng)
                if c != k.zero:
                    f = f + b.scale(c)
            if f.is_const() or not is_separating(f):
                continue
            try:
                prof = ramification_profile(f)
            except PrecisionExhausted:
                continue
            if not prof.is_tame():
                continue
            s = _branch_extension_degree(prof)
            if s <= max_s and (best is None or (s, n) < best[0]):
                best = ((s, n), f, prof)
                if s == 1:
                    return best[1], best[2]
        if best is not None:
            return best[1], best[2]
    return None


def tame_seed_function(C, seed=0):
    """A tame morphism X -> P^1 used as the Belyi input."""
    k = C.k
    if not C.is_elliptic:
        return C.x()
    if k.p != 2:
        return C.x()
    if C.kind == "ES":
        return C.y()
    rng = random.Random(seed)
    hit = _low_degree_tame(C, rng)
    if hit is not None:
        return hit[0]
    from .conic import ec_ordinary_analysis
    rep = ec_ordinary_analysis(C.a, C.b, seed=seed)
    if rep.tame is None:
        raise SearchExhausted("no tame morphism found for the Belyi construction")
    return rep.tame


def belyi_map(C, seed=0, f0=None):
    """A tame map branched only over {0, 1, infinity}."""
    if f0 is None:
        f0 = tame_seed_function(C, seed)
    prof = ramification_profile(f0)
    if not prof.is_tame():
        raise NotPseudotame("the seed function is not tame")
    f, _ = compose_power(f0, prof)
    return f
