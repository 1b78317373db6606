"""Parsing and printing of fields, curves, functions, places, divisors and friends.

Every literal the library prints can be read back here:

    GF(2^3; mod=w^3+w+1; gen=w)      GF(3^1)      GF(4)
    P1   EO(a=0,b=1)   ES(a=w, b=1)   W(A=1,B=1)
    y/x^2 + (w+1)*x^3                 (functions in x, y and the generator)
    (x^2+x+1; x)   (x; 0, 1)   inf    (places)
    2*(x; 0) + -1*inf                 (divisors)
    [[1,x],[0,1]]                     (fourth-power Moebius matrices)
    (x^2+1) dx                        (differentials)
    (1/x : 0 : 1)                     (conic points)
    T1*T3+T2^2+(x)*T1^2+(x+1)*T3^2    (conics)
    [a; b; c]                         (lists of any of the above)
"""
from __future__ import annotations

import re

from .conic import ConicPoint
from .curve import CurveModel, Differential, Divisor
from .errors import FieldError, TameMapsError, UsageError
from .fields import field
from .poly import Poly
from .symbol import GammaElem

FIELD_GRAMMAR = "GF(p^m; mod=<poly in w>; gen=w) or GF(q)"
CURVE_GRAMMAR = "P1 | EO(a=<elem>, b=<elem>) | ES(a=<elem>, b=<elem>) | W(A=<elem>, B=<elem>)"
FUNCTION_GRAMMAR = "expression in x, y, field constants with + - * / ^ and parentheses"
PLACE_GRAMMAR = "(minpoly; x0) | (minpoly; x0, y0) | inf"
DIVISOR_GRAMMAR = "0 | n*<place> + m*<place> + ..."
CONIC_GRAMMAR = "T1*T3+T2^2+(<alpha>)*T1^2+(<beta>)*T3^2"


def _strip(s):
    return re.sub(r"\s+", "", s)


# ---------------------------------------------------------------------------
# expressions

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|[-+*/^()])")


def _tokenize(s, what):
    pos, out = 0, []
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise UsageError(f"cannot parse {what} {s!r} at position {pos}; expected {FUNCTION_GRAMMAR}")
        out.append(m.group(1))
        pos = m.end()
    return out


class _ExprParser:
    """Recursive descent over tokens; `atom` maps names and integers to values."""

    def __init__(self, tokens, atom, what):
        self.toks, self.i, self.atom, self.what = tokens, 0, atom, what

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        t = self.peek()
        if t is None or (expected is not None and t != expected):
            raise UsageError(f"malformed {self.what}: expected {expected or 'more input'}, got {t!r}")
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise UsageError(f"malformed {self.what}: unexpected {self.peek()!r}")
        return v

    def expr(self):
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        v = self.term()
        if neg:
            v = -v
        while self.peek() in ("+", "-"):
            op = self.take()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.power()
        while self.peek() in ("*", "/"):
            op = self.take()
            w = self.power()
            v = v * w if op == "*" else v / w
        return v

    def power(self):
        v = self.primary()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            t = self.take()
            if not t.isdigit():
                raise UsageError(f"malformed {self.what}: exponent must be an integer")
            v = v ** (sign * int(t))
        return v

    def primary(self):
        t = self.take()
        if t == "(":
            v = self.expr()
            self.take(")")
            return v
        if t == "-":
            return -self.primary()
        return self.atom(t)


# ---------------------------------------------------------------------------
# fields

_FIELD = re.compile(r"^GF\((\d+)(?:\^(\d+))?((?:;[^;)]*)*)\)$")


def _factor_prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            while q % p == 0:
                q //= p
                m += 1
            return (p, m) if q == 1 else None
    return None


def parse_field(s):
    m = _FIELD.match(_strip(s))
    if not m:
        raise UsageError(f"cannot parse field {s!r}; expected {FIELD_GRAMMAR}")
    base, exp, rest = int(m.group(1)), m.group(2), m.group(3)
    if exp is None:
        pm = _factor_prime_power(base) if base > 1 else None
        if pm is None:
            raise UsageError(f"field order {base} is not a prime power; expected {FIELD_GRAMMAR}")
        p, deg = pm
    else:
        p, deg = base, int(exp)
    opts = {}
    for part in filter(None, rest.split(";")):
        if "=" not in part:
            raise UsageError(f"field option {part!r} is not key=value; expected {FIELD_GRAMMAR}")
        key, val = part.split("=", 1)
        if key not in ("mod", "gen"):
            raise UsageError(f"unknown field option {key!r}; expected {FIELD_GRAMMAR}")
        opts[key] = val
    sym = opts.get("gen", "w")
    if not re.fullmatch(r"[a-wz]", sym):
        raise UsageError("the generator must be a single letter other than x and y")
    modulus = None
    if "mod" in opts:
        modulus = tuple(_parse_prime_poly(opts["mod"], p, sym))
    try:
        return field(p, deg, modulus, sym)
    except FieldError as exc:
        raise UsageError(f"invalid field {s!r}: {exc}") from None


def _parse_prime_poly(s, p, sym):
    F = field(p)
    X = Poly.x(F)

    def atom(t):
        if t.isdigit():
            return Poly.const(F, int(t) % p)
        if t == sym:
            return X
        raise UsageError(f"unknown symbol {t!r} in modulus")

    class _P:
        # thin wrapper so the expression parser can use + - * ^ on Poly
        def __init__(self, v):
            self.v = v

        def __add__(self, o):
            return _P(self.v + o.v)

        def __sub__(self, o):
            return _P(self.v - o.v)

        def __mul__(self, o):
            return _P(self.v * o.v)

        def __neg__(self):
            return _P(-self.v)

        def __pow__(self, n):
            if n < 0:
                raise UsageError("negative exponent in modulus")
            return _P(self.v ** n)

        def __truediv__(self, o):
            raise UsageError("division in modulus")

    v = _ExprParser(_tokenize(s, "modulus"), lambda t: _P(atom(t)), "modulus").parse().v
    return list(v.c)


def format_field(k):
    return k.literal()


def _field_atom(k, t):
    if t.isdigit():
        return k.from_int(int(t))
    if k.degree > 1 and t == k.symbol:
        return k.gen
    return None


def parse_element(k, s):
    """A raw value of k from a literal such as w^2+1 or 3."""
    C = CurveModel("P1", k)

    def atom(t):
        v = _field_atom(k, t)
        if v is None:
            raise UsageError(f"unknown symbol {t!r} in field element; expected a polynomial in the generator")
        return C.const(v)

    try:
        f = _ExprParser(_tokenize(s, "field element"), atom, "field element").parse()
    except ZeroDivisionError:
        raise UsageError(f"division by zero in {s!r}") from None
    return f.const_value()


def format_element(k, v):
    return k.format(v)


# ---------------------------------------------------------------------------
# curves

_CURVE = re.compile(r"^(EO|ES|W)\((.*)\)$")


def parse_curve(k, s):
    t = _strip(s)
    if t == "P1":
        return CurveModel("P1", k)
    m = _CURVE.match(t)
    if not m:
        raise UsageError(f"cannot parse curve {s!r}; expected {CURVE_GRAMMAR}")
    kind, body = m.group(1), m.group(2)
    names = ("A", "B") if kind == "W" else ("a", "b")
    vals = {}
    for part in filter(None, body.split(",")):
        if "=" not in part:
            raise UsageError(f"curve parameter {part!r} is not name=value; expected {CURVE_GRAMMAR}")
        key, val = part.split("=", 1)
        if key not in names:
            raise UsageError(f"unknown curve parameter {key!r}; expected {CURVE_GRAMMAR}")
        vals[key] = parse_element(k, val)
    try:
        return CurveModel(kind, k, vals.get(names[0]), vals.get(names[1]))
    except TameMapsError as exc:
        raise UsageError(f"invalid curve {s!r}: {exc}") from None


def format_curve(C):
    return C.literal()


# ---------------------------------------------------------------------------
# functions and differentials

def parse_function(C, s):
    k = C.k

    def atom(t):
        if t == "x":
            return C.x()
        if t == "y":
            if not C.is_elliptic:
                raise UsageError("y is not available on P1")
            return C.y()
        v = _field_atom(k, t)
        if v is None:
            raise UsageError(f"unknown symbol {t!r}; expected {FUNCTION_GRAMMAR}")
        return C.const(v)

    try:
        return _ExprParser(_tokenize(s, "function"), atom, "function").parse()
    except ZeroDivisionError:
        raise UsageError(f"division by zero in {s!r}") from None


def format_function(f):
    return f.literal()


def parse_differential(C, s):
    t = s.strip()
    if not t.endswith("dx"):
        raise UsageError(f"cannot parse differential {s!r}; expected (<function>) dx")
    return Differential(parse_function(C, t[:-2]))


def format_differential(om):
    return om.literal()


# ---------------------------------------------------------------------------
# places and divisors

def parse_place(C, s):
    t = _strip(s)
    if t == "inf":
        return C.infinity()
    if not (t.startswith("(") and t.endswith(")") and ";" in t):
        raise UsageError(f"cannot parse place {s!r}; expected {PLACE_GRAMMAR}")
    pi_s = t[1:-1].split(";", 1)[0]
    P1 = CurveModel("P1", C.k)
    pi = parse_function(P1, pi_s)
    if not pi.u.is_poly() or pi.u.num.degree < 1:
        raise UsageError(f"place {s!r}: the minimal polynomial must be a nonconstant polynomial in x")
    pi = pi.u.num.monic()
    if not pi.is_irreducible():
        raise UsageError(f"place {s!r}: {pi} is not irreducible")
    for P in C.places_over(pi):
        if _strip(P.literal()) == t:
            return P
    opts = ", ".join(P.literal() for P in C.places_over(pi))
    raise UsageError(f"no place {s!r} on {C.literal()}; places over {pi}: {opts}")


def format_place(P):
    return P.literal()


def _split_top(s, sep):
    out, depth, cur = [], 0, []
    for ch in s:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def parse_divisor(C, s):
    t = _strip(s)
    if t in ("", "0"):
        return Divisor()
    coeffs = {}
    for term in _split_top(t, "+"):
        if not term:
            raise UsageError(f"cannot parse divisor {s!r}; expected {DIVISOR_GRAMMAR}")
        m = re.match(r"^(-?\d+)\*(.*)$", term)
        n, pl = (int(m.group(1)), m.group(2)) if m else (1, term)
        P = parse_place(C, pl)
        coeffs[P] = coeffs.get(P, 0) + n
    return Divisor(coeffs)


def format_divisor(D):
    return D.literal()


# ---------------------------------------------------------------------------
# gamma

def parse_gamma(C, s):
    t = _strip(s)
    if not (t.startswith("[[") and t.endswith("]]")):
        raise UsageError(f"cannot parse matrix {s!r}; expected [[a,b],[c,d]]")
    rows = _split_top(t[1:-1], ",")
    if len(rows) != 2:
        raise UsageError(f"matrix {s!r} must have two rows")
    ents = []
    for r in rows:
        if not (r.startswith("[") and r.endswith("]")):
            raise UsageError(f"matrix row {r!r} must be bracketed")
        cells = _split_top(r[1:-1], ",")
        if len(cells) != 2:
            raise UsageError(f"matrix row {r!r} must have two entries")
        ents.extend(parse_function(C, c) for c in cells)
    try:
        return GammaElem(*ents)
    except TameMapsError as exc:
        raise UsageError(f"invalid matrix {s!r}: {exc}") from None


def format_gamma(g):
    return g.literal()


# ---------------------------------------------------------------------------
# conics and lists

def parse_conic_point(C, s):
    t = s.strip()
    if not (t.startswith("(") and t.endswith(")")):
        raise UsageError(f"cannot parse conic point {s!r}; expected (t1 : t2 : t3)")
    parts = _split_top(t[1:-1], ":")
    if len(parts) != 3:
        raise UsageError(f"conic point {s!r} needs three coordinates")
    return ConicPoint(*(parse_function(C, p) for p in parts))


def parse_conic(C, s):
    """The coefficients (alpha, beta) of T1*T3 + T2^2 + alpha*T1^2 + beta*T3^2."""
    terms = _split_top(_strip(s), "+")
    if len(terms) != 4 or terms[:2] != ["T1*T3", "T2^2"]:
        raise UsageError(f"cannot parse conic {s!r}; expected {CONIC_GRAMMAR}")
    out = []
    for term, tail in zip(terms[2:], ("*T1^2", "*T3^2")):
        if not (term.startswith("(") and term.endswith(")" + tail)):
            raise UsageError(f"cannot parse conic term {term!r}; expected {CONIC_GRAMMAR}")
        out.append(parse_function(C, term[1:-len(tail) - 1]))
    return tuple(out)


def parse_list(s, item):
    """A bracketed, semicolon-separated list, each entry read by `item`."""
    t = s.strip()
    if not (t.startswith("[") and t.endswith("]")):
        raise UsageError(f"cannot parse list {s!r}; expected [a; b; ...]")
    body = t[1:-1].strip()
    return [item(p.strip()) for p in _split_top(body, ";")] if body else []
