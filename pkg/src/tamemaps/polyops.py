"""List-level polynomial arithmetic over an arbitrary finite field object.

Polynomials are lists of raw field values, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  The field object supplies
``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``, ``inv``, ``p`` and
``order``; tabulated fields additionally expose ``exp``/``log`` tables which
the hot loops use directly.
"""
from __future__ import annotations

import random


def trim(a, zero):
    n = len(a)
    while n and a[n - 1] == zero:
        n -= 1
    return list(a[:n])


def degree(a):
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    fa = F.add
    for i, x in enumerate(b):
        r[i] = fa(r[i], x)
    return trim(r, F.zero)


def sub(F, a, b):
    r = list(a) + [F.zero] * (len(b) - len(a))
    fs = F.sub
    for i, x in enumerate(b):
        r[i] = fs(r[i], x)
    return trim(r, F.zero)


def neg(F, a):
    return [F.neg(x) for x in a]


def scale(F, a, c):
    if c == F.zero:
        return []
    if c == F.one:
        return list(a)
    fm = F.mul
    return [fm(x, c) for x in a]


def shift(F, a, n):
    if not a:
        return []
    return [F.zero] * n + list(a)


def mul(F, a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    exp = getattr(F, "exp", None)
    zero = F.zero
    n = len(a) + len(b) - 1
    if exp is not None:
        log = F.log
        lb = [(j, log[y]) for j, y in enumerate(b) if y]
        r = [0] * n
        if F.p == 2:
            for i, x in enumerate(a):
                if x:
                    lx = log[x]
                    for j, ly in lb:
                        r[i + j] ^= exp[lx + ly]
        else:
            fa = F.add
            for i, x in enumerate(a):
                if x:
                    lx = log[x]
                    for j, ly in lb:
                        k = i + j
                        r[k] = fa(r[k], exp[lx + ly])
        return trim(r, 0)
    fa, fm = F.add, F.mul
    r = [zero] * n
    for i, x in enumerate(a):
        if x != zero:
            for j, y in enumerate(b):
                if y != zero:
                    r[i + j] = fa(r[i + j], fm(x, y))
    return trim(r, zero)


def square(F, a):
    if F.p == 2:
        # Frobenius is additive: (sum c_i x^i)^2 = sum c_i^2 x^{2i}
        if not a:
            return []
        zero = F.zero
        fm = F.mul
        r = [zero] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x != zero:
                r[2 * i] = fm(x, x)
        return r
    return mul(F, a, a)


def divmod_(F, a, b):
    """Quotient and remainder of a by b (b nonzero)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    zero = F.zero
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], list(a)
    r = list(a)
    q = [zero] * (len(a) - db)
    exp = getattr(F, "exp", None)
    if exp is not None:
        log = F.log
        lead_inv_log = (F.order - 1 - log[b[-1]]) % (F.order - 1)
        lb = [(j, log[y]) for j, y in enumerate(b[:-1]) if y]
        char2 = F.p == 2
        fs = F.sub
        for i in range(len(a) - 1, db - 1, -1):
            c = r[i]
            if c:
                lc = (log[c] + lead_inv_log) % (F.order - 1)
                q[i - db] = exp[lc]
                off = i - db
                if char2:
                    for j, ly in lb:
                        r[off + j] ^= exp[lc + ly]
                else:
                    for j, ly in lb:
                        r[off + j] = fs(r[off + j], exp[lc + ly])
                r[i] = 0
        return trim(q, 0), trim(r[:db], 0)
    inv_lead = F.inv(b[-1])
    fm, fs = F.mul, F.sub
    for i in range(len(a) - 1, db - 1, -1):
        c = r[i]
        if c != zero:
            c = fm(c, inv_lead)
            q[i - db] = c
            off = i - db
            for j in range(db):
                if b[j] != zero:
                    r[off + j] = fs(r[off + j], fm(c, b[j]))
            r[i] = zero
    return trim(q, zero), trim(r[:db], zero)


def rem(F, a, b):
    return divmod_(F, a, b)[1]


def quo(F, a, b):
    return divmod_(F, a, b)[0]


def monic(F, a):
    if not a or a[-1] == F.one:
        return list(a)
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    while b:
        a, b = b, rem(F, a, b)
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    c = F.inv(r0[-1])
    return scale(F, r0, c), scale(F, s0, c), scale(F, t0, c)


def mulmod(F, a, b, m):
    return rem(F, mul(F, a, b), m)


def powmod(F, a, n, m):
    result = [F.one]
    base = rem(F, a, m)
    while n:
        if n & 1:
            result = mulmod(F, result, base, m)
        n >>= 1
        if n:
            base = mulmod(F, base, base, m)
    return rem(F, result, m)


def pow_(F, a, n):
    result = [F.one]
    base = list(a)
    while n:
        if n & 1:
            result = mul(F, result, base)
        n >>= 1
        if n:
            base = mul(F, base, base)
    return result


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(F.from_int(i), a[i]))
    return trim(out, F.zero)


def evaluate(F, a, x):
    acc = F.zero
    fa, fm = F.add, F.mul
    for c in reversed(a):
        acc = fa(fm(acc, x), c)
    return acc


def compose(F, a, b):
    """a(b(x))."""
    acc = []
    for c in reversed(a):
        acc = add(F, mul(F, acc, b), [c] if c != F.zero else [])
    return acc


def pth_root(F, a):
    """Return g with g^p = a, assuming a' = 0 (only exponents divisible by p)."""
    p = F.p
    return trim([F.root_p(a[i]) for i in range(0, len(a), p)], F.zero)


def is_squarefree(F, a):
    return len(gcd(F, a, derivative(F, a))) == 1


def squarefree_decomposition(F, a):
    """Return list of (g, e) with a = lc * prod g^e, g squarefree monic coprime."""
    a = monic(F, a)
    if len(a) <= 1:
        return []
    p = F.p
    out = {}

    def rec(f, mult):
        if len(f) <= 1:
            return
        d = derivative(F, f)
        if not d:
            rec(pth_root(F, f), mult * p)
            return
        c = gcd(F, f, d)
        w = quo(F, f, c)
        i = 1
        while len(w) > 1:
            y = gcd(F, w, c)
            z = quo(F, w, y)
            if len(z) > 1:
                out[tuple(z)] = out.get(tuple(z), 0) + i * mult
            i += 1
            w = y
            c = quo(F, c, y)
        if len(c) > 1:
            rec(pth_root(F, c), mult * p)

    rec(a, 1)
    return [(list(g), e) for g, e in out.items()]


def distinct_degree(F, f):
    """Distinct-degree factorization of a monic squarefree polynomial."""
    out = []
    q = F.order
    x = [F.zero, F.one]
    h = rem(F, x, f)
    d = 0
    f = list(f)
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        h = powmod(F, h, q, f)
        g = gcd(F, f, sub(F, h, x))
        if len(g) > 1:
            out.append((g, d))
            f = quo(F, f, g)
            h = rem(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def _random_poly(F, deg, rng):
    return trim([F.random_element(rng) for _ in range(deg + 1)], F.zero)


def equal_degree(F, f, d, rng):
    """Split a monic squarefree f whose irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = F.order
    while True:
        a = _random_poly(F, n - 1, rng)
        if len(a) < 2:
            continue
        if F.p == 2:
            # absolute trace map a + a^2 + ... + a^(2^(k d - 1))
            k = F.degree
            t = rem(F, a, f)
            acc = t
            for _ in range(k * d - 1):
                t = mulmod(F, t, t, f)
                acc = add(F, acc, t)
            g = gcd(F, f, acc)
        else:
            e = (q ** d - 1) // 2
            t = powmod(F, a, e, f)
            g = gcd(F, f, sub(F, t, [F.one]))
        if 1 < len(g) < len(f):
            return equal_degree(F, g, d, rng) + equal_degree(F, quo(F, f, g), d, rng)


def factor(F, f, seed=0):
    """Monic irreducible factors with multiplicities, sorted canonically."""
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(seed)
    out = []
    for g, e in squarefree_decomposition(F, f):
        for h, d in distinct_degree(F, g):
            for irr in equal_degree(F, h, d, rng):
                out.append((irr, e))
    out.sort(key=lambda t: (len(t[0]), [F.sort_key(c) for c in reversed(t[0])]))
    return out


def is_irreducible(F, f):
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    f = monic(F, f)
    if not is_squarefree(F, f):
        return False
    dd = distinct_degree(F, f)
    return len(dd) == 1 and dd[0][1] == n


def roots(F, f, seed=0):
    """Distinct roots of f in F."""
    f = monic(F, f)
    if len(f) <= 1:
        return []
    x = [F.zero, F.one]
    g = gcd(F, f, sub(F, powmod(F, x, F.order, f), x))
    if len(g) <= 1:
        return []
    rng = random.Random(seed)
    return sorted((F.neg(h[0]) for h in equal_degree(F, g, 1, rng)), key=F.sort_key)
