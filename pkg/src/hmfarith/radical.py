"""Formal square roots of positive integers over a coefficient ring.

An element is a finite sum  sum_s c_s * sqrt(s)  over squarefree s >= 1.
The square roots are kept formal: sqrt(a) * sqrt(b) = g * sqrt(ab / g^2)
with g = gcd(a, b), and no relation with the coefficient ring is imposed.
This is how half-integral powers of q stay exact.
"""

from fractions import Fraction
from math import gcd

import sympy


def _squarefree_split(n):
    """n = k^2 * s with s squarefree; returns (k, s)."""
    k, s = 1, 1
    for p, e in sympy.factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            s *= p
    return k, s


class Radical:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for s, c in (terms or {}).items():
            if not _is_zero(c):
                t[s] = c
        self.terms = t

    @classmethod
    def const(cls, c):
        return cls({1: c})

    @classmethod
    def sqrt(cls, n, coeff=1):
        """coeff * sqrt(n) for a positive integer n."""
        if n <= 0:
            raise ValueError("sqrt of a nonpositive integer")
        k, s = _squarefree_split(int(n))
        return cls({s: coeff * k})

    @classmethod
    def half_power(cls, q, e):
        """q^(e/2) for an integer e."""
        e = int(e)
        base = Fraction(q) ** (e // 2)
        if e % 2 == 0:
            return cls.const(base)
        return cls.sqrt(q, base)

    def _coerce(self, o):
        if isinstance(o, Radical):
            return o
        return Radical.const(o)

    def __add__(self, o):
        o = self._coerce(o)
        t = dict(self.terms)
        for s, c in o.terms.items():
            t[s] = t[s] + c if s in t else c
        return Radical(t)

    __radd__ = __add__

    def __neg__(self):
        return Radical({s: -c for s, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __rsub__(self, o):
        return self._coerce(o) - self

    def __mul__(self, o):
        o = self._coerce(o)
        t = {}
        for s1, c1 in self.terms.items():
            for s2, c2 in o.terms.items():
                g = gcd(s1, s2)
                s = (s1 // g) * (s2 // g)
                v = c1 * c2 * g
                t[s] = t[s] + v if s in t else v
        return Radical(t)

    __rmul__ = __mul__

    def conj(self, p):
        """The automorphism sqrt(p) -> -sqrt(p) for a prime p."""
        return Radical({s: (-c if s % p == 0 else c) for s, c in self.terms.items()})

    def primes(self):
        out = set()
        for s in self.terms:
            out.update(sympy.factorint(s))
        return sorted(out)

    def inverse(self):
        x = self
        num = Radical.const(1)
        for p in self.primes():
            c = x.conj(p)
            num = num * c
            x = x * c
        if set(x.terms) - {1}:
            raise AssertionError("conjugate product is not rational")
        r = x.terms.get(1)
        if r is None:
            raise ZeroDivisionError("inverse of zero")
        if isinstance(r, int):
            r = Fraction(r)
        return num * (1 / r)

    def __truediv__(self, o):
        return self * self._coerce(o).inverse()

    def __rtruediv__(self, o):
        return self._coerce(o) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        r = Radical.const(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def __eq__(self, o):
        if not isinstance(o, Radical):
            try:
                o = Radical.const(o)
            except Exception:
                return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash(tuple(sorted((s, str(c)) for s, c in self.terms.items())))

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return set(self.terms) <= {1}

    def const_part(self):
        return self.terms.get(1, 0)

    def map_coeffs(self, f):
        return Radical({s: f(c) for s, c in self.terms.items()})

    def embed(self, coeff_embed, prec=128):
        import mpmath
        with mpmath.workprec(prec + 16):
            acc = mpmath.mpf(0)
            for s, c in self.terms.items():
                acc += coeff_embed(c) * mpmath.sqrt(s)
        return acc

    def __repr__(self):
        return f"Radical({self.to_str()})"

    def to_str(self):
        if not self.terms:
            return "0"
        parts = []
        for s in sorted(self.terms):
            c = self.terms[s]
            cs = c.to_str() if hasattr(c, "to_str") else str(c)
            if s == 1:
                parts.append(cs)
            else:
                parts.append(f"({cs})*sqrt({s})" if hasattr(c, "to_str") and not c.is_rational()
                             else f"{cs}*sqrt({s})")
        return " + ".join(parts).replace("+ -", "- ")


def _is_zero(c):
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0
