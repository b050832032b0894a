"""The finite ring O/n and its unit group."""

from itertools import product
from math import gcd

from .abelian import FiniteAbelianGroup
from .ideals import factor_ideal, prime_from_key


class ResidueRing:
    """O/n for a nonzero integral ideal n.

    Residues are coordinate tuples reduced into the box 0 <= v_i < H_ii of
    the HNF of n, which makes them canonical.
    """

    def __init__(self, modulus):
        if not modulus.is_integral():
            raise ValueError("modulus must be integral")
        self.modulus = modulus
        self.field = modulus.field
        self.exponent = modulus.min_integer()
        self.primes = [prime_from_key(self.field, k) for k, _ in factor_ideal(modulus)]
        self._group = None

    def _box(self, v):
        v = list(v)
        for i, row in enumerate(self.modulus.hnf):
            q = v[i] // row[i]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def reduce(self, x):
        """Canonical residue of an element whose denominator is prime to n."""
        x = self.field(x)
        d = x.denominator()
        v = [int(c * d) for c in x.coords]
        if d != 1:
            if gcd(d, self.exponent) != 1:
                raise ValueError("denominator not prime to the modulus")
            inv = pow(d, -1, self.exponent)
            v = [c * inv for c in v]
        return self._box(v)

    def lift(self, r):
        return self.field.element(r)

    def mul(self, a, b):
        return self.reduce(self.lift(a) * self.lift(b))

    def is_unit_element(self, x):
        """True when x is a unit at every prime dividing n."""
        x = self.field(x)
        if x.is_zero():
            return not self.primes
        return all(P.valuation(x) == 0 for P in self.primes)

    def residues(self):
        ranges = [range(self.modulus.hnf[i][i]) for i in range(self.field.degree)]
        for v in product(*ranges):
            yield self._box(v)

    def units(self):
        return [r for r in self.residues() if self.is_unit_element(self.lift(r))]

    @property
    def one(self):
        return self.reduce(1)

    def unit_group(self):
        """(O/n)^x as a FiniteAbelianGroup on greedily chosen generators."""
        if self._group is not None:
            return self._group
        one = self.one
        sub = {one}
        gens = []
        for u in self.units():
            if u in sub:
                continue
            gens.append(u)
            powers = [one]
            t = u
            while t not in sub:
                powers.append(t)
                t = self.mul(t, u)
            # t = u^k lies in sub; the new subgroup is sub * <u> up to u^(k-1)
            sub = {self.mul(s, p) for s in sub for p in powers}
        self._group = FiniteAbelianGroup(one, gens, self.mul)
        return self._group
