"""Truncated Laurent series over a finite field.

A series is ``t^val * (c0 + c1 t + ...)`` known up to (not including) the
absolute exponent ``prec``.  Arithmetic propagates precision the usual way,
so results never claim more accuracy than their inputs justify.
"""
from __future__ import annotations

from .errors import PrecisionExhausted


class Laurent:
    __slots__ = ("K", "val", "c", "prec")

    def __init__(self, K, val, coeffs, prec):
        zero = K.zero
        coeffs = list(coeffs)
        # normalize: strip leading zeros, truncate at prec
        i = 0
        while i < len(coeffs) and coeffs[i] == zero:
            i += 1
        val += i
        coeffs = coeffs[i:]
        n = max(0, prec - val)
        coeffs = coeffs[:n]
        while coeffs and coeffs[-1] == zero:
            coeffs.pop()
        if not coeffs:
            val = prec
        self.K, self.val, self.c, self.prec = K, val, coeffs, prec

    @classmethod
    def const(cls, K, v, prec):
        return cls(K, 0, [v], prec)

    @classmethod
    def gen(cls, K, prec):
        return cls(K, 1, [K.one], prec)

    def is_zero(self):
        """True when no nonzero coefficient is known (zero to known precision)."""
        return not self.c

    @property
    def relprec(self):
        return self.prec - self.val

    def coeff(self, n):
        i = n - self.val
        if n >= self.prec:
            raise PrecisionExhausted(f"coefficient t^{n} beyond precision {self.prec}")
        if 0 <= i < len(self.c):
            return self.c[i]
        return self.K.zero

    def coeffs_from(self, lo, hi):
        """Coefficients of t^lo..t^(hi-1)."""
        return [self.coeff(n) for n in range(lo, hi)]

    def _dense(self, lo, hi):
        K = self.K
        out = [K.zero] * (hi - lo)
        for i, v in enumerate(self.c):
            n = self.val + i
            if lo <= n < hi:
                out[n - lo] = v
        return out

    def __add__(self, other):
        K = self.K
        prec = min(self.prec, other.prec)
        lo = min(self.val, other.val, prec)
        ends = [s.val + len(s.c) for s in (self, other) if s.c]
        hi = max(lo, min(prec, max(ends))) if ends else lo
        a = self._dense(lo, hi)
        b = other._dense(lo, hi)
        fa = K.add
        return Laurent(K, lo, [fa(x, y) for x, y in zip(a, b)], prec)

    def __neg__(self):
        K = self.K
        return Laurent(K, self.val, [K.neg(v) for v in self.c], self.prec)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        K = self.K
        val = self.val + other.val
        prec = min(self.val + other.prec, other.val + self.prec)
        n = prec - val
        if n <= 0:
            return Laurent(K, val, [], prec)
        a, b = self.c[:n], other.c[:n]
        n = min(n, len(a) + len(b) - 1)
        if n <= 0:
            return Laurent(K, val, [], prec)
        out = [K.zero] * n
        exp = K.exp
        if exp is not None:
            log = K.log
            lb = [(j, log[y]) for j, y in enumerate(b) if y]
            char2 = K.p == 2
            fa = K.add
            for i, x in enumerate(a):
                if x:
                    lx = log[x]
                    lim = n - i
                    for j, ly in lb:
                        if j >= lim:
                            break
                        if char2:
                            out[i + j] ^= exp[lx + ly]
                        else:
                            out[i + j] = fa(out[i + j], exp[lx + ly])
        else:
            fa, fm = K.add, K.mul
            zero = K.zero
            for i, x in enumerate(a):
                if x != zero:
                    for j in range(min(len(b), n - i)):
                        y = b[j]
                        if y != zero:
                            out[i + j] = fa(out[i + j], fm(x, y))
        return Laurent(K, val, out, prec)

    def scale(self, v):
        K = self.K
        return Laurent(K, self.val, [K.mul(x, v) for x in self.c], self.prec)

    def shift(self, n):
        """Multiply by t^n."""
        return Laurent(self.K, self.val + n, self.c, self.prec + n)

    def inv(self):
        if not self.c:
            raise PrecisionExhausted("inverting a series that is zero to known precision")
        K = self.K
        n = self.relprec
        a = self.c
        inv0 = K.inv(a[0])
        if K.exp is not None and K.p == 2:
            return Laurent(K, -self.val, _inv_char2_table(K, a, n, inv0), -self.val + n)
        out = [inv0]
        fm, fs = K.mul, K.sub
        zero = K.zero
        for m in range(1, n):
            s = zero
            for j in range(1, min(m, len(a) - 1) + 1):
                if a[j] != zero and out[m - j] != zero:
                    s = K.add(s, fm(a[j], out[m - j]))
            out.append(fm(fs(zero, s), inv0))
        return Laurent(K, -self.val, out, -self.val + n)

    def __truediv__(self, other):
        return self * other.inv()

    def __pow__(self, e):
        if e < 0:
            return self.inv() ** (-e)
        if e == 0:
            return Laurent(self.K, 0, [self.K.one], max(self.relprec, 1))
        result = None
        base = self
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derivative(self):
        K = self.K
        out = []
        for i, v in enumerate(self.c):
            n = self.val + i
            out.append(K.mul(K.from_int(n), v))
        return Laurent(K, self.val - 1, out, self.prec - 1)

    def truncate(self, prec):
        return Laurent(self.K, self.val, self.c, min(prec, self.prec))

    def compose(self, s):
        """self(s) for a series s with positive valuation."""
        assert s.val >= 1
        K = self.K
        w = s.val
        prec = min(self.prec * w, (self.val - 1) * w + s.prec)
        out = Laurent(K, prec, [], prec)
        base = s ** self.val
        for i, v in enumerate(self.c):
            if (self.val + i) * w >= prec:
                break
            if v != K.zero:
                out = out + base.scale(v)
            base = base * s
        return out.truncate(prec)

    def reversion(self):
        """Compositional inverse of a series with valuation exactly 1."""
        if self.val != 1:
            raise ValueError("reversion needs valuation 1")
        K = self.K
        prec = self.prec
        t = Laurent.gen(K, prec)
        d = self.derivative()
        T = t.scale(K.inv(self.c[0]))
        for _ in range(prec.bit_length() + 2):
            err = self.compose(T) - t
            if err.is_zero():
                break
            T = (T - err / d.compose(T)).truncate(prec)
        return T.truncate(prec)

    def equal_to_prec(self, other):
        p = min(self.prec, other.prec)
        return (self - other).truncate(p).is_zero()

    def __repr__(self):
        K = self.K
        terms = [f"({K.format(v)})*t^{self.val + i}" for i, v in enumerate(self.c) if v != K.zero]
        return " + ".join(terms + [f"O(t^{self.prec})"])


def _inv_char2_table(K, a, n, inv0):
    """Coefficients of 1/a to length n over a tabulated field of characteristic 2."""
    exp, log = K.exp, K.log
    li = log[inv0]
    la = [(j, log[v]) for j, v in enumerate(a) if j and v]
    out = [inv0]
    for m in range(1, n):
        s = 0
        for j, lj in la:
            if j > m:
                break
            o = out[m - j]
            if o:
                s ^= exp[lj + log[o]]
        out.append(exp[log[s] + li] if s else 0)
    return out
