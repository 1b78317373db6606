"""Finite fields.

Two concrete representations share one duck-typed protocol:

* :class:`GF` stores elements as integers whose base-p digits are the
  coefficients over the prime field, with exp/log tables for multiplication.
  Every base field ``k`` (a :class:`FieldSpec`) and every small residue field
  uses it.
* :class:`QuotientField` stores elements as tuples over a base field modulo an
  irreducible polynomial.  It backs residue fields too large to tabulate.

Both know their ``ground`` field ``k`` and can embed ``k`` and report
coordinates over it, which is all the curve code needs from residue fields.
"""
from __future__ import annotations

import functools
import itertools

from . import polyops
from .errors import CharacteristicMismatch, FieldError

TABLE_LIMIT = 1 << 16
RESIDUE_TABLE_LIMIT = 1 << 13


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """Shared generic operations; subclasses define the arithmetic core."""

    exp = None
    log = None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def frob(self, a):
        return self.pow(a, self.p)

    def root_p(self, a):
        """Inverse Frobenius a^(1/p)."""
        return self.pow(a, self.order // self.p)

    def from_int(self, n):
        return self.embed_prime(n % self.p)

    def is_zero(self, a):
        return a == self.zero

    def random_element(self, rng):
        return self.from_index(rng.randrange(self.order))

    def elements(self):
        return (self.from_index(i) for i in range(self.order))

    def absolute_trace(self, a):
        """a + a^p + ... + a^(p^(n-1)) as an integer in GF(p)."""
        acc, t = a, a
        for _ in range(self.degree - 1):
            t = self.frob(t)
            acc = self.add(acc, t)
        return self.prime_value(acc)

    def trace_to_ground(self, a):
        """Trace from this field down to its ground field k."""
        k = self.ground
        if k is self:
            return a
        q = k.order
        acc, t = a, a
        for _ in range(self.degree // k.degree - 1):
            t = self.pow(t, q)
            acc = self.add(acc, t)
        v = self.in_ground(acc)
        assert v is not None
        return v

    def minimal_polynomial(self, a):
        """Minimal polynomial over the ground field, as a list of k values."""
        k = self.ground
        q = k.order
        conj = [a]
        t = self.pow(a, q)
        while t != a:
            conj.append(t)
            t = self.pow(t, q)
        poly = [self.one]
        for c in conj:
            poly = polyops.mul(self, poly, [self.neg(c), self.one])
        out = []
        for c in poly:
            v = self.in_ground(c)
            assert v is not None
            out.append(v)
        return out

    def sqrt(self, a):
        """Square root; in characteristic 2 this is the inverse Frobenius."""
        if self.p == 2:
            return self.root_p(a)
        if a == self.zero:
            return a
        q = self.order
        if self.pow(a, (q - 1) // 2) != self.one:
            return None
        # Tonelli-Shanks
        s, t = 0, q - 1
        while t % 2 == 0:
            s, t = s + 1, t // 2
        z = next(x for x in self.elements() if x != self.zero and self.pow(x, (q - 1) // 2) != self.one)
        m, c = s, self.pow(z, t)
        r, tt = self.pow(a, (t + 1) // 2), self.pow(a, t)
        while tt != self.one:
            i, t2 = 0, tt
            while t2 != self.one:
                t2 = self.mul(t2, t2)
                i += 1
            b = c
            for _ in range(m - i - 1):
                b = self.mul(b, b)
            m, c = i, self.mul(b, b)
            r, tt = self.mul(r, b), self.mul(tt, c)
        return min(r, self.neg(r), key=self.sort_key)


class GF(FiniteField):
    """A tabulated finite field with integer-coded elements."""

    def __init__(self, p, degree, base=None, modulus=None, symbol="w", ground=None):
        self.p = p
        self.degree = degree
        self.order = p ** degree
        self.base = base
        self.modulus = modulus
        self.symbol = symbol
        self.zero = 0
        self.one = 1
        self.ground = ground if ground is not None else self
        self._build_tables()

    # -- construction ---------------------------------------------------
    def _digits_add(self, a, b):
        p = self.p
        r, mul = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return r

    def _slow_mul_factory(self):
        if self.base is None:
            p = self.p
            return lambda a, b: (a * b) % p
        B = self.base
        Qb = B.order
        mod = self.modulus
        d = len(mod) - 1

        def decode(v):
            out = []
            for _ in range(d):
                out.append(v % Qb)
                v //= Qb
            return out

        def encode(c):
            v = 0
            for x in reversed(c):
                v = v * Qb + x
            return v

        def slow_mul(a, b):
            prod = polyops.mul(B, polyops.trim(decode(a), 0), polyops.trim(decode(b), 0))
            r = polyops.rem(B, prod, mod)
            return encode(r + [0] * (d - len(r)))

        return slow_mul

    def _build_tables(self):
        n = self.order
        slow_mul = self._slow_mul_factory()
        factors = _prime_factors(n - 1)
        gen_candidates = [self.p] if self.base is None else []
        if self.base is not None:
            gen_candidates.append(self.base.order if len(self.modulus) > 2 else None)
        for g in itertools.chain([c for c in gen_candidates if c], range(2, n)):
            if g >= n:
                continue
            ok = True
            for r in factors:
                e, acc, base = (n - 1) // r, 1, g
                while e:
                    if e & 1:
                        acc = slow_mul(acc, base)
                    e >>= 1
                    if e:
                        base = slow_mul(base, base)
                if acc == 1:
                    ok = False
                    break
            if ok:
                break
        else:
            g = 1  # n == 2
        if n == 2:
            g = 1
        exp = [0] * (2 * (n - 1))
        log = [0] * n
        x = 1
        for i in range(n - 1):
            exp[i] = x
            log[x] = i
            x = slow_mul(x, g)
        for i in range(n - 1, 2 * (n - 1)):
            exp[i] = exp[i - (n - 1)]
        self.exp = exp
        self.log = log
        self.primitive = g
        self._zech = None
        if self.p != 2 and self.degree > 1:
            zech = [None] * (n - 1)
            for i in range(n - 1):
                s = self._digits_add(1, exp[i])
                zech[i] = None if s == 0 else log[s]
            self._zech = zech
            self._neg_shift = (n - 1) // 2

    # -- arithmetic -------------------------------------------------------
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        log = self.log
        la = log[a]
        d = (log[b] - la) % (self.order - 1)
        z = self._zech[d]
        if z is None:
            return 0
        return self.exp[la + z]

    def neg(self, a):
        if self.p == 2 or not a:
            return a
        if self.degree == 1:
            return (-a) % self.p
        return self.exp[self.log[a] + self._neg_shift]

    def sub(self, a, b):
        if self.p == 2:
            return a ^ b
        if self.degree == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def div(self, a, b):
        if not b:
            raise ZeroDivisionError("division by zero in a finite field")
        if not a:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % (self.order - 1)]

    def pow(self, a, n):
        if not a:
            if n < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if n == 0 else 0
        return self.exp[(self.log[a] * n) % (self.order - 1)]

    # -- structure --------------------------------------------------------
    def embed_prime(self, c):
        return c % self.p

    def prime_value(self, v):
        assert v < self.p
        return v

    def from_index(self, i):
        return i

    def sort_key(self, v):
        return v

    @property
    def gen(self):
        if self.base is None:
            return self.primitive if self.order > 2 else 1
        return self.base.order

    @property
    def rel_degree(self):
        return 1 if self.base is None else len(self.modulus) - 1

    def from_base(self, c):
        """Embed an element of the immediate base field."""
        return c

    def embed(self, c):
        """Embed an element of the ground field."""
        if self.ground is self:
            return c
        return self.base.embed(c)

    def in_ground(self, v):
        if self.ground is self:
            return v
        if v >= self.base.order:
            return None
        return self.base.in_ground(v)

    def rel_coords(self, v):
        """Coordinates over the immediate base field (length rel_degree)."""
        Qb = self.base.order
        out = []
        for _ in range(self.rel_degree):
            out.append(v % Qb)
            v //= Qb
        return out

    def from_rel_coords(self, c):
        Qb = self.base.order
        v = 0
        for x in reversed(list(c)):
            v = v * Qb + x
        return v

    def ground_coords(self, v):
        if self.ground is self:
            return [v]
        out = []
        for c in self.rel_coords(v):
            out.extend(self.base.ground_coords(c))
        return out

    def from_ground_coords(self, coords):
        if self.ground is self:
            return coords[0]
        step = self.base.degree // self.ground.degree
        return self.from_rel_coords(
            [self.base.from_ground_coords(coords[i:i + step]) for i in range(0, len(coords), step)]
        )

    def prime_coords(self, v):
        p = self.p
        out = []
        for _ in range(self.degree):
            out.append(v % p)
            v //= p
        return out

    def from_prime_coords(self, c):
        v = 0
        for x in reversed(list(c)):
            v = v * self.p + x
        return v

    def format(self, v):
        if self.base is None:
            return str(v)
        coeffs = self.rel_coords(v)
        return _format_poly(self.base, coeffs, self.symbol)

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"


class QuotientField(FiniteField):
    """base[T]/(modulus) with tuple-coded elements; used for large residue fields."""

    def __init__(self, base, modulus, symbol="x"):
        self.base = base
        self.modulus = list(modulus)
        self.p = base.p
        self.rel_degree = len(modulus) - 1
        self.degree = base.degree * self.rel_degree
        self.order = base.order ** self.rel_degree
        self.symbol = symbol
        self.ground = base.ground
        d = self.rel_degree
        self.zero = tuple([base.zero] * d)
        self.one = tuple([base.one] + [base.zero] * (d - 1))

    def _pad(self, c):
        d = self.rel_degree
        return tuple(list(c) + [self.base.zero] * (d - len(c)))

    def add(self, a, b):
        ba = self.base.add
        return tuple(ba(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        bs = self.base.sub
        return tuple(bs(x, y) for x, y in zip(a, b))

    def neg(self, a):
        bn = self.base.neg
        return tuple(bn(x) for x in a)

    def mul(self, a, b):
        B = self.base
        prod = polyops.mul(B, polyops.trim(a, B.zero), polyops.trim(b, B.zero))
        return self._pad(polyops.rem(B, prod, self.modulus))

    def inv(self, a):
        B = self.base
        g, s, _ = polyops.xgcd(B, polyops.trim(a, B.zero), self.modulus)
        if len(g) != 1:
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self._pad(polyops.rem(B, s, self.modulus))

    def embed_prime(self, c):
        return self._pad([self.base.embed_prime(c)])

    def prime_value(self, v):
        return self.base.prime_value(v[0])

    def from_index(self, i):
        Qb = self.base.order
        out = []
        for _ in range(self.rel_degree):
            out.append(self.base.from_index(i % Qb))
            i //= Qb
        return tuple(out)

    def sort_key(self, v):
        return tuple(self.base.sort_key(c) for c in reversed(v))

    @property
    def gen(self):
        return self._pad([self.base.zero, self.base.one])

    def from_base(self, c):
        return self._pad([c])

    def embed(self, c):
        return self._pad([self.base.embed(c)])

    def in_ground(self, v):
        if any(c != self.base.zero for c in v[1:]):
            return None
        return self.base.in_ground(v[0])

    def rel_coords(self, v):
        return list(v)

    def from_rel_coords(self, c):
        return self._pad(c)

    def ground_coords(self, v):
        out = []
        for c in v:
            out.extend(self.base.ground_coords(c))
        return out

    def from_ground_coords(self, coords):
        step = self.base.degree // self.ground.degree
        return tuple(self.base.from_ground_coords(coords[i:i + step]) for i in range(0, len(coords), step))

    def prime_coords(self, v):
        out = []
        for c in v:
            out.extend(self.base.prime_coords(c))
        return out

    def from_prime_coords(self, c):
        step = self.base.degree
        return tuple(self.base.from_prime_coords(c[i:i + step]) for i in range(0, len(c), step))

    def format(self, v):
        return _format_poly(self.base, list(v), self.symbol)

    def __repr__(self):
        return f"QuotientField({self.base!r}, deg {self.rel_degree})"


def _format_poly(F, coeffs, sym):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == F.zero:
            continue
        cs = F.format(c)
        composite = any(ch in cs for ch in "+-*") and not cs.lstrip("-").isdigit()
        if i == 0:
            terms.append(f"({cs})" if composite and len(terms) else cs)
            continue
        mono = sym if i == 1 else f"{sym}^{i}"
        if c == F.one:
            terms.append(mono)
        else:
            terms.append(f"({cs})*{mono}" if composite else f"{cs}*{mono}")
    return "+".join(terms) if terms else "0"


class FieldSpec(GF):
    """The base field k = GF(p^m) with an explicit modulus and generator symbol."""

    def __init__(self, p, m=1, modulus=None, symbol="w"):
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError("extension degree must be positive")
        if p ** m > TABLE_LIMIT:
            raise FieldError(f"field order {p}^{m} exceeds the configured bound {TABLE_LIMIT}")
        self.characteristic = p
        if m == 1:
            GF.__init__(self, p, 1, symbol=symbol)
            self.modulus_prime = [0, 1]
            return
        prime = prime_field(p)
        if modulus is None:
            modulus = default_modulus(p, m)
        modulus = polyops.trim([c % p for c in modulus], 0)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise FieldError(f"modulus must be monic of degree {m}")
        if not polyops.is_irreducible(prime, modulus):
            raise FieldError("modulus is not irreducible over the prime field")
        self.modulus_prime = modulus
        GF.__init__(self, p, m, base=prime, modulus=modulus, symbol=symbol)

    @property
    def q(self):
        return self.order

    def element(self, value):
        """Build a FieldElem from an int (prime-field value) or coefficient list."""
        if isinstance(value, FieldElem):
            return value
        if isinstance(value, int):
            return FieldElem(self, self.from_int(value))
        return FieldElem(self, self.from_prime_coords(list(value) + [0] * (self.degree - len(value))))

    def literal(self):
        if self.degree == 1:
            return f"GF({self.p}^1)"
        mod = _format_poly(prime_field(self.p), self.modulus_prime, self.symbol)
        return f"GF({self.p}^{self.degree}; mod={mod}; gen={self.symbol})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and self.p == other.p
            and self.degree == other.degree
            and self.modulus_prime == other.modulus_prime
        )

    def __hash__(self):
        return hash((self.p, self.degree, tuple(self.modulus_prime)))

    def __repr__(self):
        return self.literal()


@functools.lru_cache(maxsize=None)
def prime_field(p):
    return GF(p, 1)


@functools.lru_cache(maxsize=None)
def default_modulus(p, m):
    """First primitive monic polynomial of degree m in a fixed enumeration order."""
    F = prime_field(p)
    n = p ** m - 1
    factors = _prime_factors(n)
    for idx in range(p ** m):
        coeffs = []
        v = idx
        for _ in range(m):
            coeffs.append(v % p)
            v //= p
        f = coeffs + [1]
        if f[0] == 0:
            continue
        if not polyops.is_irreducible(F, f):
            continue
        x = [0, 1]
        if all(polyops.powmod(F, x, n // r, f) != [1] for r in factors):
            return f
    raise FieldError(f"no primitive polynomial found for GF({p}^{m})")


@functools.lru_cache(maxsize=None)
def field(p, m=1, modulus=None, symbol="w"):
    """Cached FieldSpec constructor (modulus given as a tuple)."""
    return FieldSpec(p, m, list(modulus) if modulus is not None else None, symbol)


_residue_cache = {}


def extension(base, modulus, symbol="x"):
    """Field base[T]/(modulus) for a monic irreducible modulus over base."""
    key = (id(base), tuple(modulus), symbol)
    hit = _residue_cache.get(key)
    if hit is not None and hit[0] is base:
        return hit[1]
    order = base.order ** (len(modulus) - 1)
    if order <= RESIDUE_TABLE_LIMIT and isinstance(base, GF):
        F = GF(base.p, base.degree * (len(modulus) - 1), base=base, modulus=list(modulus),
               symbol=symbol, ground=base.ground)
    else:
        F = QuotientField(base, modulus, symbol)
    _residue_cache[key] = (base, F)
    return F


class FieldElem:
    """An element of a finite field, for the public API and printing."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("field mismatch")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return FieldElem(self.field, self.field.div(o, self.value))

    def __neg__(self):
        return FieldElem(self.field, self.field.neg(self.value))

    def __pow__(self, n):
        return FieldElem(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != self.field.zero

    @property
    def coeffs(self):
        """Coefficient vector over GF(p), lowest degree first."""
        return self.field.prime_coords(self.value)

    def __repr__(self):
        return self.field.format(self.value)

    __str__ = __repr__


# ---------------------------------------------------------------------------
# operations on k

def inv_frobenius(c):
    """The unique d with d^p = c."""
    return FieldElem(c.field, c.field.root_p(c.value))


def trace_to_prime(c):
    """Absolute trace c + c^p + ... + c^(p^(m-1)), as an element of GF(p) inside k."""
    F = c.field
    return FieldElem(F, F.embed_prime(F.absolute_trace(c.value)))


def artin_schreier_solve_field(c):
    """Solve u^2 + u = c in k (characteristic 2); None when the trace is nonzero."""
    F = c.field
    if F.p != 2:
        raise CharacteristicMismatch("Artin-Schreier solving needs characteristic 2")
    u = as_solve_value(F, c.value)
    return None if u is None else FieldElem(F, u)


def as_solve_value(F, c):
    """Raw-value Artin-Schreier solver over any characteristic-2 field object."""
    if F.absolute_trace(c) != 0:
        return None
    n = F.degree
    if n % 2 == 1:
        # half trace
        acc, t = c, c
        for _ in range((n - 1) // 2):
            t = F.pow(t, 4)
            acc = F.add(acc, t)
        u = acc
    else:
        from .linalg import solve_gf2
        basis = [F.from_prime_coords([1 if j == i else 0 for j in range(n)]) for i in range(n)]
        cols = []
        for b in basis:
            img = F.add(F.mul(b, b), b)
            cols.append(F.prime_coords(img))
        sol = solve_gf2(cols, F.prime_coords(c))
        if sol is None:
            return None
        u = F.from_prime_coords(sol)
    assert F.add(F.mul(u, u), u) == c
    # u and u+1 differ only in the constant coordinate; keep the one where it is 0
    return u if F.prime_coords(u)[0] == 0 else F.add(u, F.one)
