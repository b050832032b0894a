"""Narrow class groups of Q and real quadratic fields."""

from dataclasses import dataclass, field as dc_field

import sympy

from . import quadratic
from .abelian import FiniteAbelianGroup
from .errors import DegreeUnsupported
from .ideals import FractionalIdeal, primes_above


@dataclass(frozen=True)
class NarrowClassGroup:
    field: object
    h_plus: int
    h: int
    representatives: tuple          # ideals t_1 = O, t_2, ..., one per class
    unit_norm_minus_one: object     # True / False, or None for Q
    fundamental_unit: object        # FieldElement or None
    group: FiniteAbelianGroup = dc_field(repr=False)
    level: object = None

    def key(self, I):
        """Narrow class of a fractional ideal (a hashable key)."""
        if self.field.degree == 1:
            return ()
        return quadratic.narrow_key(I)

    def class_index(self, I):
        return self._rep_keys.index(self.key(I))

    @property
    def _rep_keys(self):
        return [self.key(t) for t in self.representatives]

    def totally_positive_generator(self, I):
        F = self.field
        if F.degree == 1:
            (a,), = I.hnf
            return F(a) / I.den
        return quadratic.totally_positive_generator(I)

    @property
    def totally_positive_unit(self):
        """Generator of the totally positive units (1 for Q)."""
        F = self.field
        if F.degree == 1:
            return F.one
        eps = self.fundamental_unit
        return eps * eps if self.unit_norm_minus_one else eps

    def index_unit_signs(self):
        """[O^x : O^x_+]."""
        if self.field.degree == 1:
            return 2
        return 4 if self.unit_norm_minus_one else 2

    def exact_sequence_h_plus(self):
        return self.h * 2 ** self.field.degree // self.index_unit_signs()


def narrow_class_data(F, level=None, user_data=None):
    """Narrow class group with representatives coprime to ``level``.

    Representatives are the unit ideal and, for each other class, the prime
    of smallest norm (ties broken by prime index) lying in it and coprime to
    the level.
    """
    n = F.degree
    if level is None:
        level = FractionalIdeal.unit(F)
    if n == 1:
        O = FractionalIdeal.unit(F)
        group = FiniteAbelianGroup((), [], lambda a, b: ())
        return NarrowClassGroup(F, 1, 1, (O,), None, None, group, level)
    if n > 2:
        if user_data and user_data.get("h_plus") == 1:
            O = FractionalIdeal.unit(F)
            group = FiniteAbelianGroup((), [], lambda a, b: ())
            return NarrowClassGroup(F, 1, user_data.get("h", 1), (O,), None, None, group, level)
        raise DegreeUnsupported("narrow class data for degree > 2 needs user-supplied h+ = 1")
    D = F.quadratic_D
    eps, N, _ = quadratic.fundamental_unit(F)
    h_plus = quadratic.form_class_number(D)
    h = quadratic.ordinary_form_class_number(D)
    O = FractionalIdeal.unit(F)
    reps = {quadratic.narrow_key(O): O}
    level_norm = int(level.norm())
    p = 1
    while len(reps) < h_plus:
        p = sympy.nextprime(p)
        if level_norm % p == 0:
            continue
        for P in primes_above(F, p):
            k = quadratic.narrow_key(P.ideal)
            if k not in reps:
                reps[k] = P.ideal
        if p > 10 ** 6:
            raise AssertionError("failed to find class representatives")
    rep_by_key = dict(reps)

    def mul(k1, k2):
        return quadratic.narrow_key(rep_by_key[k1] * rep_by_key[k2])

    ordered = sorted(reps.items(), key=lambda kv: (kv[1].norm(), kv[1].hnf))
    keys = [k for k, _ in ordered]
    group = FiniteAbelianGroup(keys[0], keys[1:], mul)
    assert group.order == h_plus
    return NarrowClassGroup(F, h_plus, h, tuple(I for _, I in ordered),
                            N == -1, eps, group, level)


def brute_force_h_plus(F, bound=100):
    """Count narrow classes met by integral ideals built from primes of norm <= bound."""
    from .ideals import enumerate_ideal_keys, ideal_from_key
    if F.degree == 1:
        return 1
    keys = set()
    for key, _ in enumerate_ideal_keys(F, bound):
        keys.add(quadratic.narrow_key(ideal_from_key(F, key)))
    return len(keys)
