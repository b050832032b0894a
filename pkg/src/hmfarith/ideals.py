"""Fractional ideals in HNF, prime ideals and factorization."""

from fractions import Fraction
from functools import reduce
from math import gcd

import sympy

from . import linalg
from .errors import IndexDivisor, ZeroIdeal
from .field import FieldElement


class FractionalIdeal:
    """The lattice (1/den) * rowspan(hnf) inside F, in integral-basis coordinates.

    ``hnf`` is upper triangular with positive pivots and entries above a
    pivot reduced modulo it; ``gcd(den, entries) = 1``.  This makes the
    representation canonical, so equality is structural.
    """

    __slots__ = ("field", "hnf", "den", "_hash")

    def __init__(self, field, hnf, den=1):
        self.field = field
        self.hnf = tuple(tuple(int(x) for x in row) for row in hnf)
        self.den = int(den)
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_int_rows(cls, field, rows, den=1):
        n = field.degree
        H = linalg.hnf_rows(rows, n)
        if len(H) < n:
            raise ZeroIdeal("generators do not span a full-rank lattice")
        g = den
        for row in H:
            for x in row:
                g = gcd(g, x)
        if g > 1:
            H = [[x // g for x in row] for row in H]
            den //= g
        return cls(field, H, den)

    @classmethod
    def from_rational_rows(cls, field, rows):
        d = linalg.common_denominator(x for row in rows for x in row)
        return cls.from_int_rows(field, [[int(Fraction(x) * d) for x in row] for row in rows], d)

    @classmethod
    def from_generators(cls, field, gens):
        rows = []
        for g in gens:
            g = field(g)
            if g.is_zero():
                continue
            rows.extend(g.mult_matrix())
        if not rows:
            raise ZeroIdeal("ideal generated by zero")
        return cls.from_rational_rows(field, rows)

    @classmethod
    def principal(cls, x):
        if x.is_zero():
            raise ZeroIdeal("principal ideal of zero")
        return cls.from_generators(x.field, [x])

    @classmethod
    def unit(cls, field):
        n = field.degree
        return cls(field, [[int(i == j) for j in range(n)] for i in range(n)], 1)

    # -- basics ------------------------------------------------------------

    def __eq__(self, other):
        return isinstance(other, FractionalIdeal) and self.hnf == other.hnf \
            and self.den == other.den and self.field == other.field

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.hnf, self.den))
        return self._hash

    def __repr__(self):
        cols = " ".join(",".join(str(x) for x in row) for row in self.hnf)
        return f"Ideal[{cols}]" + (f"/{self.den}" if self.den != 1 else "")

    def basis(self):
        return [FieldElement(self.field, [Fraction(x, self.den) for x in row]) for row in self.hnf]

    def rational_rows(self):
        return [[Fraction(x, self.den) for x in row] for row in self.hnf]

    def norm(self):
        d = 1
        for i, row in enumerate(self.hnf):
            d *= row[i]
        return Fraction(d, self.den ** self.field.degree)

    def is_integral(self):
        return self.den == 1

    def is_unit(self):
        return self.den == 1 and all(self.hnf[i][i] == 1 for i in range(len(self.hnf)))

    def contains(self, x):
        x = self.field(x)
        v = [c * self.den for c in x.coords]
        if any(c.denominator != 1 for c in v):
            return False
        v = [int(c) for c in v]
        for i, row in enumerate(self.hnf):
            if v[i] % row[i]:
                return False
            q = v[i] // row[i]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return not any(v)

    __contains__ = contains

    def contains_ideal(self, other):
        return all(self.contains(b) for b in other.basis())

    def min_integer(self):
        """Smallest positive integer in an integral ideal (exponent of O/I)."""
        diag, _, _ = linalg.diagonalize([list(r) for r in self.hnf])
        return reduce(linalg.lcm, diag, 1)

    # -- arithmetic --------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            other = FractionalIdeal.principal(other)
        if isinstance(other, (int, Fraction)):
            other = FractionalIdeal.principal(self.field(other))
        gens = []
        for a in self.basis():
            for b in other.basis():
                gens.append(a * b)
        # the span of the pairwise products is the product ideal
        rows = [list(g.coords) for g in gens]
        return FractionalIdeal.from_rational_rows(self.field, rows)

    __rmul__ = __mul__

    def __add__(self, other):
        return FractionalIdeal.from_rational_rows(
            self.field, self.rational_rows() + other.rational_rows())

    def inverse(self):
        """I^{-1} = {x : x I in O}, via the dual of the lattice of multiplication columns."""
        F = self.field
        n = F.degree
        cols = []
        for b in self.basis():
            M = b.mult_matrix()  # row j = coords of w_j * b
            for k in range(n):
                cols.append([M[j][k] for j in range(n)])
        d = linalg.common_denominator(x for c in cols for x in c)
        H = linalg.hnf_rows([[int(x * d) for x in c] for c in cols], n)
        Hinv = linalg.mat_inverse(H)
        dual_rows = [[Hinv[j][i] * d for j in range(n)] for i in range(n)]
        return FractionalIdeal.from_rational_rows(F, dual_rows)

    def __truediv__(self, other):
        if isinstance(other, FractionalIdeal):
            return self * other.inverse()
        return self * FractionalIdeal.principal(self.field(other).inverse())

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = FractionalIdeal.unit(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_coprime(self, other):
        return (self + other).is_unit()


def ideal_norm(I):
    return I.norm()


class PrimeIdeal:
    """A nonzero prime of O with its local invariants."""

    __slots__ = ("p", "e", "f", "index", "ideal", "uniformizer", "_powers")

    def __init__(self, p, e, f, index, ideal, uniformizer):
        self.p = p
        self.e = e
        self.f = f
        self.index = index
        self.ideal = ideal
        self.uniformizer = uniformizer
        self._powers = [FractionalIdeal.unit(ideal.field), ideal]

    @property
    def norm(self):
        return self.p ** self.f

    @property
    def key(self):
        return (self.p, self.index)

    @property
    def label(self):
        return f"P{self.p}_{self.index}"

    def __repr__(self):
        return f"PrimeIdeal(p={self.p}, e={self.e}, f={self.f}, {self.ideal!r})"

    def __eq__(self, other):
        return isinstance(other, PrimeIdeal) and self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal)

    def power(self, k):
        while len(self._powers) <= k:
            self._powers.append(self._powers[-1] * self.ideal)
        return self._powers[k]

    def valuation_integral(self, x):
        """v_p of a nonzero integral element."""
        k = 0
        while self.power(k + 1).contains(x):
            k += 1
        return k

    def valuation(self, x):
        """v_p of a nonzero element or a fractional ideal."""
        if isinstance(x, FractionalIdeal):
            d = x.den
            J = FractionalIdeal(x.field, x.hnf, 1)
            vd = self.e * _ord(d, self.p)
            k = 0
            while self.power(k + 1).contains_ideal(J):
                k += 1
            return k - vd
        x = self.ideal.field(x)
        if x.is_zero():
            raise ZeroIdeal("valuation of zero")
        d = x.denominator()
        return self.valuation_integral(x * d) - self.e * _ord(d, self.p)


def _ord(n, p):
    n = abs(int(n))
    k = 0
    while n and n % p == 0:
        n //= p
        k += 1
    return k


def _poly_at(field, gamma, coeffs):
    acc = field.zero
    for c in reversed(coeffs):
        acc = acc * gamma + int(c)
    return acc


def factor_prime(field, p):
    """Factor pO as a list of (PrimeIdeal, e), via Kummer-Dedekind."""
    cache = field.__dict__.setdefault("_prime_cache", {})
    if p in cache:
        return cache[p]
    if not sympy.isprime(p):
        raise ValueError(f"{p} is not prime")
    if field.degree == 1:
        ideal = FractionalIdeal(field, [[p]], 1)
        out = [(PrimeIdeal(p, 1, 1, 0, ideal, field(p)), 1)]
        cache[p] = out
        return out
    gamma, g, index = field.kd_data
    if index % p == 0:
        raise IndexDivisor(f"{p} divides the index [O : Z[gamma]] = {index}")
    x = sympy.Symbol("x")
    gp = sympy.Poly([int(c) for c in reversed(g)], x, modulus=p)
    _, factors = gp.factor_list()
    raw = []
    for h, e in factors:
        coeffs = [int(c) for c in reversed(h.all_coeffs())]
        hg = _poly_at(field, gamma, coeffs)
        ideal = FractionalIdeal.from_generators(field, [field(p), hg])
        raw.append((ideal, e, h.degree(), hg))
    raw.sort(key=lambda t: (t[2], t[0].hnf))
    out = []
    for idx, (ideal, e, f, hg) in enumerate(raw):
        pi = _uniformizer(field, ideal, p, e, hg)
        out.append((PrimeIdeal(p, e, f, idx, ideal, pi), e))
    # sanity: sum e f = n and the product is pO
    assert sum(e * P.f for P, e in out) == field.degree
    prod = FractionalIdeal.unit(field)
    for P, e in out:
        prod = prod * P.power(e)
    assert prod == FractionalIdeal.principal(field(p))
    cache[p] = out
    return out


def _uniformizer(field, ideal, p, e, hg):
    sq = ideal * ideal
    for cand in (field(p), hg, hg + p, hg - p):
        if not cand.is_zero() and ideal.contains(cand) and not sq.contains(cand):
            return cand
    for b in ideal.basis():
        for t in range(p + 1):
            cand = b + t * p
            if not cand.is_zero() and ideal.contains(cand) and not sq.contains(cand):
                return cand
    raise AssertionError("no uniformizer found")


def primes_above(field, p):
    return [P for P, _ in factor_prime(field, p)]


def primes_up_to(field, bound):
    """All primes of norm <= bound, ordered by norm then index."""
    out = []
    for p in sympy.primerange(2, int(bound) + 1):
        for P in primes_above(field, p):
            if P.norm <= bound:
                out.append(P)
    out.sort(key=lambda P: (P.norm, P.p, P.index))
    return out


def prime_from_key(field, key):
    p, idx = key
    return primes_above(field, p)[idx]


def local_different_exponent(field, P):
    return P.valuation(field.different)


# -- ideals keyed by factorization ------------------------------------------
#
# An integral ideal is keyed by its factorization: a tuple of ((p, index), e)
# sorted by (p, index).  The unit ideal is the empty tuple.


def factor_ideal(I):
    """Factorization key of a nonzero integral ideal."""
    F = I.field
    N = I.norm()
    if N.denominator != 1:
        raise ValueError("factor_ideal expects an integral ideal")
    out = []
    for p in sorted(sympy.factorint(int(N))):
        for P in primes_above(F, p):
            v = P.valuation(I)
            if v:
                out.append((P.key, v))
    return tuple(out)


def ideal_from_key(field, key):
    I = FractionalIdeal.unit(field)
    for pk, e in key:
        I = I * prime_from_key(field, pk).power(e)
    return I


def key_norm(field, key):
    N = 1
    for pk, e in key:
        N *= prime_from_key(field, pk).norm ** e
    return N


def key_mul(a, b):
    d = dict(a)
    for pk, e in b:
        d[pk] = d.get(pk, 0) + e
    return tuple(sorted((k, v) for k, v in d.items() if v))


def key_label(key):
    if not key:
        return "(1)"
    return "*".join(f"P{p}_{i}" + (f"^{e}" if e > 1 else "") for (p, i), e in key)


def enumerate_ideal_keys(field, bound):
    """All integral ideal keys of norm <= bound, with their norms."""
    primes = primes_up_to(field, bound)
    out = [((), 1)]
    # extend by primes in increasing (p, index) order so keys stay sorted
    primes.sort(key=lambda P: P.key)
    for P in primes:
        q = P.norm
        new = []
        for key, N in out:
            e, M = 1, N * q
            while M <= bound:
                new.append((key + ((P.key, e),), M))
                e += 1
                M *= q
        out.extend(new)
    out.sort(key=lambda t: (t[1], t[0]))
    return out
