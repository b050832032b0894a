"""Finite-order Hecke characters.

Character values are stored as angles: a Fraction a in [0, 1) stands for
exp(2 pi i a).  All bookkeeping is exact; only ``value`` and the Gauss sum
evaluation touch floating point.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod

import mpmath

from . import linalg
from .errors import IndexOutOfRange, InvariantViolation, PrecisionExhausted, DegreeUnsupported
from .ideals import (FractionalIdeal, factor_ideal, ideal_from_key, key_norm,
                     local_different_exponent, prime_from_key)
from .narrow import narrow_class_data
from .residues import ResidueRing


def _frac(a):
    return Fraction(a) % 1


def angle_value(a, prec=128):
    """exp(2 pi i a) as an mpc."""
    with mpmath.workprec(prec + 16):
        return mpmath.expjpi(2 * mpmath.mpf(a.numerator) / a.denominator)


# -- residue characters ------------------------------------------------------


class ResidueCharacter:
    """A character of (O/n)^x, given by its angles on the group basis."""

    def __init__(self, ring, angles):
        self.ring = ring
        G = ring.unit_group()
        angles = tuple(_frac(a) for a in angles)
        if len(angles) != len(G.invariants):
            raise InvariantViolation("wrong number of character values")
        for a, d in zip(angles, G.invariants):
            if (a * d).denominator != 1:
                raise InvariantViolation(f"value exp(2 pi i {a}) has order not dividing {d}")
        self.angles = angles

    @classmethod
    def trivial(cls, modulus):
        ring = ResidueRing(modulus)
        return cls(ring, [0] * len(ring.unit_group().invariants))

    @classmethod
    def from_generator_values(cls, modulus, gens, angles):
        """Character sending each generator g_i to exp(2 pi i angles[i]).

        The generators must generate (O/n)^x and the values must respect
        every relation among them.
        """
        ring = modulus if isinstance(modulus, ResidueRing) else ResidueRing(modulus)
        F = ring.field
        keys = []
        for g in gens:
            g = F(g)
            if not ring.is_unit_element(g):
                raise InvariantViolation(f"generator {g} is not a unit modulo n")
            keys.append(ring.reduce(g))
        angles = [_frac(a) for a in angles]
        from .abelian import FiniteAbelianGroup
        W = FiniteAbelianGroup(ring.one, keys, ring.mul)
        G = ring.unit_group()
        if W.order != G.order:
            raise InvariantViolation("generators do not generate (O/n)^x")
        for rel in W.relations:
            if sum(r * a for r, a in zip(rel, angles)) % 1:
                raise InvariantViolation("character values violate a relation among the generators")
        out = []
        for b in G.basis:
            out.append(sum(w * a for w, a in zip(W.word(b), angles)))
        return cls(ring, out)

    @classmethod
    def all(cls, modulus):
        ring = ResidueRing(modulus)
        inv = ring.unit_group().invariants
        return [cls(ring, [Fraction(b, d) for b, d in zip(bs, inv)])
                for bs in product(*[range(d) for d in inv])]

    @property
    def modulus(self):
        return self.ring.modulus

    @property
    def field(self):
        return self.ring.field

    def __eq__(self, other):
        return isinstance(other, ResidueCharacter) and self.modulus == other.modulus \
            and self.angles == other.angles

    def __hash__(self):
        return hash((self.modulus, self.angles))

    def __repr__(self):
        return f"ResidueCharacter(mod {self.modulus!r}, angles={[str(a) for a in self.angles]})"

    def angle(self, x):
        """Angle of omega(x mod n), or None when x is not a unit at n."""
        if not self.ring.is_unit_element(x):
            return None
        G = self.ring.unit_group()
        y = G.dlog(self.ring.reduce(x))
        return sum((c * a for c, a in zip(y, self.angles)), Fraction(0)) % 1

    def value(self, x, prec=128):
        a = self.angle(x)
        return mpmath.mpc(0) if a is None else angle_value(a, prec)

    @property
    def order(self):
        d = 1
        for a in self.angles:
            d = linalg.lcm(d, a.denominator)
        return d

    def is_trivial(self):
        return not any(self.angles)

    def __mul__(self, other):
        if self.modulus != other.modulus:
            raise ValueError("characters have different moduli")
        return ResidueCharacter(self.ring, [a + b for a, b in zip(self.angles, other.angles)])

    def conjugate(self):
        return ResidueCharacter(self.ring, [-a for a in self.angles])

    def power(self, k):
        return ResidueCharacter(self.ring, [k * a for a in self.angles])

    def galois(self, k):
        """sigma o omega for the cyclotomic automorphism zeta -> zeta^k."""
        return self.power(k)

    def conductor(self):
        return conductor(self)

    def induced(self, modulus):
        """The character mod a multiple of n obtained by composing with reduction."""
        ring = ResidueRing(modulus)
        if not self.modulus.contains_ideal(modulus):
            raise ValueError("new modulus is not a multiple of n")
        G = ring.unit_group()
        return ResidueCharacter(ring, [self.angle(ring.lift(b)) for b in G.basis])


def divisors(I):
    """Integral ideals dividing the integral ideal I, sorted by norm."""
    F = I.field
    key = factor_ideal(I)
    out = []
    for exps in product(*[range(e + 1) for _, e in key]):
        k = tuple((pk, e) for (pk, _), e in zip(key, exps) if e)
        out.append((key_norm(F, k), k))
    out.sort()
    return [ideal_from_key(F, k) for _, k in out]


def conductor(omega):
    """Smallest divisor m of n such that omega is trivial on units = 1 mod m."""
    ring = omega.ring
    units = [ring.lift(u) for u in ring.units()]
    for m in divisors(ring.modulus):
        if all(omega.angle(u) == 0 for u in units if m.contains(u - 1)):
            return m
    return ring.modulus


def primitive_character(omega):
    """The character modulo the conductor inducing omega."""
    c = conductor(omega)
    ring = ResidueRing(c)
    G = ring.unit_group()
    out = []
    for b in G.basis:
        out.append(omega.angle(crt_lift(ring.lift(b), c, omega.modulus)))
    return ResidueCharacter(ring, out)


def crt_idempotent(A, B):
    """e in O with e = 0 mod A and e = 1 mod B, for coprime integral A, B."""
    F = A.field
    rows = [list(r) for r in A.hnf] + [list(r) for r in B.hnf]
    H, U = linalg.hnf_rows(rows, F.degree, transform=True)
    if [list(r) for r in H] != [[int(i == j) for j in range(F.degree)] for i in range(F.degree)]:
        raise ValueError("ideals are not coprime")
    na = len(A.hnf)
    coeffs = U[0]
    a = [0] * F.degree
    for c, r in zip(coeffs[:na], rows[:na]):
        a = [x + c * y for x, y in zip(a, r)]
    return F.element(a)


def crt_lift(x, c, n):
    """An element = x mod c and = 1 mod the part of n prime to c, a unit at n."""
    F = c.field
    ckey = {pk for pk, _ in factor_ideal(c)}
    rest = FractionalIdeal.unit(F)
    for pk, e in factor_ideal(n):
        if pk not in ckey:
            rest = rest * prime_from_key(F, pk).power(e)
    if rest.is_unit():
        return x
    # e = 1 mod c-part of n, 0 mod rest
    cpart = FractionalIdeal.unit(F)
    for pk, e in factor_ideal(n):
        if pk in ckey:
            cpart = cpart * prime_from_key(F, pk).power(e)
    e = crt_idempotent(rest, cpart)
    return e * x + (1 - e)


# -- Hecke characters ---------------------------------------------------------


class HeckeCharacter:
    """A finite-order Hecke character restricting to omega on (O/n)^x.

    The ideal character satisfies, for totally positive alpha prime to n,
        prod_p omega*(p)^{v_p(alpha)} * omega(alpha mod n) = 1.
    """

    def __init__(self, residue, extension_index, narrow, lambdas):
        self.residue = residue
        self.extension_index = extension_index
        self.narrow = narrow
        self.lambdas = tuple(lambdas)
        self._cache = {}
        self._basis_ideals = [narrow.representatives[narrow._rep_keys.index(b)]
                              for b in narrow.group.basis]
        self._signature = None

    @property
    def field(self):
        return self.residue.field

    @property
    def modulus(self):
        return self.residue.modulus

    def __repr__(self):
        return (f"HeckeCharacter(mod {self.modulus!r}, index {self.extension_index}, "
                f"angles={[str(a) for a in self.residue.angles]})")

    def ideal_angle(self, I):
        """Angle of omega*(I) for an integral ideal I, or None if I meets n."""
        if isinstance(I, tuple):
            key = I
        else:
            key = factor_ideal(I)
        if key in self._cache:
            return self._cache[key]
        F = self.field
        nkeys = {pk for pk, _ in factor_ideal(self.modulus)}
        if any(pk in nkeys for pk, _ in key):
            self._cache[key] = None
            return None
        if len(key) > 1 or (key and key[0][1] > 1):
            total = Fraction(0)
            for pk, e in key:
                total += e * self.ideal_angle(((pk, 1),))
            out = total % 1
        else:
            J0 = ideal_from_key(F, key)
            out = self._prime_angle(J0)
        self._cache[key] = out
        return out

    def _prime_angle(self, A):
        C = self.narrow
        G = C.group
        x = G.dlog(C.key(A))
        ys = [(-xi) % o for xi, o in zip(x, G.invariants)]
        J = A
        for B, y in zip(self._basis_ideals, ys):
            if y:
                J = J * B ** y
        alpha = C.totally_positive_generator(J)
        if alpha is None:
            raise InvariantViolation("class reduction failed to reach a principal ideal")
        a = self.residue.angle(alpha)
        total = -a - sum((y * l for y, l in zip(ys, self.lambdas)), Fraction(0))
        return total % 1

    def star(self, P):
        """omega*(P) as an angle, None meaning the value 0 at P | n."""
        return self.ideal_angle(((P.key, 1),))

    def table(self, bound):
        from .ideals import primes_up_to
        return {P.key: self.star(P) for P in primes_up_to(self.field, bound)}

    def value(self, I, prec=128):
        a = self.ideal_angle(I)
        return mpmath.mpc(0) if a is None else angle_value(a, prec)

    def principal_defect(self, alpha):
        """Angle of prod omega*(p)^{v_p(alpha)} * omega(alpha); zero when consistent."""
        F = self.field
        I = FractionalIdeal.principal(F(alpha))
        return (self.ideal_angle(I) + self.residue.angle(alpha)) % 1

    def conductor(self):
        return conductor(self.residue)

    def signature(self):
        return signature(self)

    def conjugate(self):
        return _from_lambdas(self.residue.conjugate(), self.narrow,
                             [-l for l in self.lambdas])

    def power(self, t):
        """chi^t; for t prime to the order this is sigma o chi with zeta -> zeta^t."""
        return _from_lambdas(self.residue.power(t), self.narrow, [t * l for l in self.lambdas])

    def __mul__(self, other):
        return _from_lambdas(self.residue * other.residue, self.narrow,
                             [a + b for a, b in zip(self.lambdas, other.lambdas)])


def _base_lambdas(residue, narrow):
    out = []
    G = narrow.group
    for b, o in zip(G.basis, G.invariants):
        B = narrow.representatives[narrow._rep_keys.index(b)]
        beta = narrow.totally_positive_generator(B ** o)
        out.append((-residue.angle(beta)) / o)
    return out


def _from_lambdas(residue, narrow, lambdas):
    """The extension of residue with the given class-group angles."""
    lambdas = [_frac(l) for l in lambdas]
    base = _base_lambdas(residue, narrow)
    idx, mult = 0, 1
    for l, l0, o in zip(lambdas, base, narrow.group.invariants):
        j = (l - l0) * o
        if j.denominator != 1:
            raise InvariantViolation("angles do not extend this residue character")
        idx += int(j) % o * mult
        mult *= o
    return HeckeCharacter(residue, idx + 1, narrow, lambdas)


def adelize(omega, extension_index=1, narrow=None):
    """The Hecke character with residue part omega and the chosen class-group extension."""
    F = omega.field
    if narrow is None:
        narrow = narrow_class_data(F, level=omega.modulus)
    if F.degree > 2 and narrow.h_plus != 1:
        raise DegreeUnsupported("adelization needs class data")
    if not 1 <= extension_index <= narrow.h_plus:
        raise IndexOutOfRange(f"extension index must lie in 1..{narrow.h_plus}")
    if F.degree == 2:
        eps = narrow.totally_positive_unit
        if omega.angle(eps) != 0:
            raise InvariantViolation("omega is nontrivial on totally positive units")
    elif F.degree > 2:
        raise DegreeUnsupported("adelization of degree > 2 fields is not supported")
    G = narrow.group
    digits = []
    r = extension_index - 1
    for o in G.invariants:
        digits.append(r % o)
        r //= o
    lambdas = [(l0 + Fraction(j, o)) % 1
               for l0, j, o in zip(_base_lambdas(omega, narrow), digits, G.invariants)]
    return HeckeCharacter(omega, extension_index, narrow, lambdas)


def all_extensions(omega, narrow=None):
    F = omega.field
    if narrow is None:
        narrow = narrow_class_data(F, level=omega.modulus)
    return [adelize(omega, i, narrow) for i in range(1, narrow.h_plus + 1)]


def _sign_element(F, ring, j):
    """A small element prime to n with negative sign exactly at place j."""
    n = F.degree
    if n == 1:
        return F(-1)
    basis = F.basis_elements()
    B = 1
    while True:
        for cs in product(range(-B, B + 1), repeat=n):
            if max(abs(c) for c in cs) != B:
                continue
            x = sum((c * b for c, b in zip(cs, basis)), F.zero)
            if x.is_zero():
                continue
            s = x.signs()
            if all((s[i] < 0) == (i == j) for i in range(n)) and ring.is_unit_element(x):
                return x
        B += 1


def signature(chi):
    """(chi_{eta_1}(-1), ..., chi_{eta_n}(-1))."""
    if chi._signature is not None:
        return chi._signature
    F = chi.field
    out = []
    for j in range(F.degree):
        alpha = _sign_element(F, chi.residue.ring, j)
        a = -(chi.residue.angle(alpha) + chi.ideal_angle(FractionalIdeal.principal(alpha))) % 1
        if a not in (0, Fraction(1, 2)):
            raise InvariantViolation("sign character is not of order 2")
        out.append(1 if a == 0 else -1)
    chi._signature = tuple(out)
    return chi._signature


# -- Gauss sums ---------------------------------------------------------------


@dataclass(frozen=True)
class GaussSumValue:
    value: object            # mpc
    radius: object           # mpf error bound on |value - true value|
    y_valuations: dict       # prime label -> ord_p(y_p)
    exact: dict              # angle -> integer multiplicity
    prec: int

    def __abs__(self):
        return abs(self.value)


def _local_gauss_terms(omega, P, c, n_ring):
    """Multiset of angles of xi_p(u)^{-1} psi_p(y_p u) over u in (O_p / p^c)^x."""
    F = omega.field
    p = P.p
    r = local_different_exponent(F, P)
    N = -(-(c + r) // P.e)
    # z in p^{Ne-c-r} * prod_{P'|p, P' != P} P'^{max(0, N e' - r')}, with exact valuation at P
    from .ideals import primes_above
    J = P.power(N * P.e - c - r)
    for Q in primes_above(F, p):
        if Q != P:
            J = J * Q.power(max(0, N * Q.e - local_different_exponent(F, Q)))
    top = P.power(N * P.e - c - r + 1)
    z = next(b for b in J.basis() if not top.contains(b))
    pN = p ** N
    # idempotent: = 1 mod P^a, = 0 mod the rest of n
    a = P.valuation(omega.modulus)
    rest = omega.modulus / P.power(a)
    e = crt_idempotent(rest, P.power(a)) if not rest.is_unit() else F.one
    local = ResidueRing(P.power(c))
    counts = {}
    for u in local.units():
        uu = local.lift(u)
        xi = omega.angle(e * uu + (1 - e))
        t = (z * uu).trace()
        psi = Fraction(int(t) % pN, pN)
        ang = (psi - xi) % 1
        counts[ang] = counts.get(ang, 0) + 1
    return counts, -c - r


def _convolve(A, B):
    out = {}
    for a, x in A.items():
        for b, y in B.items():
            k = (a + b) % 1
            out[k] = out.get(k, 0) + x * y
    return out


def gauss_sum(chi, prec=128):
    """Product over primes dividing the conductor of the local unit sums.

    Each coset of 1 + p^c in O_p^x carries mass 1, so |G|^2 = N(c) for a
    primitive character (see the notes on measure normalization).
    """
    omega = chi.residue if isinstance(chi, HeckeCharacter) else chi
    c = conductor(omega)
    exact = {Fraction(0): 1}
    ys = {}
    for pk, e in factor_ideal(c):
        P = prime_from_key(omega.field, pk)
        terms, yv = _local_gauss_terms(omega, P, e, omega.ring)
        exact = _convolve(exact, terms)
        ys[P.label] = yv
    exact = {a: m for a, m in exact.items() if m}
    with mpmath.workprec(prec + 32):
        total = mpmath.mpc(0)
        for a, m in sorted(exact.items()):
            total += m * angle_value(a, prec + 32)
        weight = sum(abs(m) for m in exact.values())
        radius = mpmath.mpf(weight + 1) * mpmath.mpf(2) ** (-(prec + 16))
    if radius > mpmath.mpf(2) ** (-(prec // 2)):
        raise PrecisionExhausted("precision too low to certify the Gauss sum")
    if abs(total) <= radius:
        raise PrecisionExhausted("Gauss sum not certified nonzero")
    return GaussSumValue(total, radius, ys, exact, prec)


def gauss_pairing_sign(chi):
    """prod_j eps_j, the expected value of G(chi) G(chi-bar) / N(c)."""
    return prod(signature(chi))
