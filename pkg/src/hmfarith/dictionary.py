"""Classical newform eigendata and the attached automorphic representation data.

Eigenvalues are stored in the normalized form C(m) = N(m)^{k0/2} c(m, f),
which lies in the coefficient field.  Ideals are keyed by factorization
(see ``ideals.factor_ideal``).
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial

from .errors import (InvariantViolation, NegativeFactorial, OddWeightUntwisted,
                     ParityViolation, ValidationFailed)
from .ideals import factor_ideal, key_label, key_norm, prime_from_key
from .linalg import echelon_basis, reduce_against
from .local_reps import ArchLocalRep, LocalLFactor, UnramifiedPS, archimedean_classification
from .radical import Radical


@dataclass
class HilbertNewformData:
    field: object                 # TotallyRealField
    weight: tuple
    level: object                 # integral FractionalIdeal
    character: object             # HeckeCharacter with modulus = level
    coeff_field: object           # NumberField
    coeffs: dict                  # ideal key -> NFElement
    bound: int = 0
    label: str = ""

    def __post_init__(self):
        self.weight = tuple(int(k) for k in self.weight)
        if len(self.weight) != self.field.degree:
            raise InvariantViolation("weight vector length differs from the field degree")
        if any(k < 1 for k in self.weight):
            raise InvariantViolation("weights must be positive")
        K = self.coeff_field
        self.coeffs = {k: K(v) for k, v in self.coeffs.items()}
        if not self.bound:
            self.bound = max((key_norm(self.field, k) for k in self.coeffs), default=1)
        self._level_primes = {pk for pk, _ in factor_ideal(self.level)}

    @property
    def k0(self):
        return max(self.weight)

    @property
    def k_min(self):
        return min(self.weight)

    @property
    def parity_ok(self):
        return len({k % 2 for k in self.weight}) == 1

    def C(self, key):
        return self.coeffs.get(key)

    def is_unramified(self, pk):
        return pk not in self._level_primes

    def omega_star(self, pk):
        """omega*(P) inside the coefficient field (0 at primes dividing the level)."""
        a = self.character.ideal_angle(((pk, 1),))
        if a is None:
            return self.coeff_field.zero
        z = self.coeff_field.root_of_unity(a)
        if z is None:
            raise InvariantViolation(
                f"coefficient field has no root of unity exp(2 pi i {a}); supply a zeta line")
        return z

    def prime_keys(self):
        return sorted({key[0][0] for key in self.coeffs if len(key) == 1},
                      key=lambda pk: (prime_from_key(self.field, pk).norm, pk))

    def label_of(self, key):
        if self.field.degree == 1:
            return f"({key_norm(self.field, key)})"
        return key_label(key)


@dataclass
class ValidationReport:
    failures: list = dc_field(default_factory=list)
    checked: int = 0

    @property
    def ok(self):
        return not self.failures


def validate_newform_data(f):
    rep = ValidationReport()
    K = f.coeff_field
    if f.C(()) != K.one:
        rep.failures.append("C(O) != 1")
    rep.checked += 1
    for key, val in sorted(f.coeffs.items(), key=lambda kv: (key_norm(f.field, kv[0]), kv[0])):
        if len(key) > 1:
            parts = [f.C((pe,)) for pe in key]
            if all(p is not None for p in parts):
                prod = K.one
                for p in parts:
                    prod = prod * p
                rep.checked += 1
                if prod != val:
                    rep.failures.append(
                        "multiplicativity: C%s != %s" % (f.label_of(key),
                                                        "*".join("C" + f.label_of((pe,)) for pe in key)))
            continue
        if not key:
            continue
        (pk, r1), = key
        if r1 < 2:
            continue
        r = r1 - 1
        Cp = f.C(((pk, 1),))
        Cr = f.C(((pk, r),))
        Crm = f.C(((pk, r - 1),)) if r > 1 else K.one
        if Cp is None or Cr is None or Crm is None:
            continue
        rep.checked += 1
        if f.is_unramified(pk):
            q = prime_from_key(f.field, pk).norm
            expect = Cp * Cr - f.omega_star(pk) * Fraction(q) ** (f.k0 - 1) * Crm
            what = "Hecke recursion"
        else:
            expect = Cp * Cr
            what = "recursion at a prime dividing the level"
        if expect != val:
            rep.failures.append(f"{what}: C{f.label_of(key)}")
    return rep


# -- representation data ---------------------------------------------------------


@dataclass(frozen=True)
class RamifiedPlaceholder:
    """Local data at a prime dividing the level: conductor exponent and C(P) only."""
    q: int
    conductor_exponent: int
    c_p: object
    k0: int
    tag = "placeholder"

    def L_polynomial(self):
        a = Radical.half_power(self.q, 1 - self.k0) * self.c_p
        return LocalLFactor(poly=(Radical.const(1), -a), q=self.q)


@dataclass
class AutomorphicRepData:
    arch: list
    conductor: object
    character: object
    local: dict              # prime key -> local representation
    k0: int

    def satake_invariants(self, pk):
        rep = self.local[pk]
        return rep.trace, rep.det


def attach_representation(f):
    report = validate_newform_data(f)
    if not report.ok:
        raise ValidationFailed("; ".join(report.failures))
    arch = [ArchLocalRep(k - 1, 0) for k in f.weight]
    local = {}
    for pk in f.prime_keys():
        P = prime_from_key(f.field, pk)
        Cp = f.C(((pk, 1),))
        if f.is_unramified(pk):
            # alpha + beta = q^{(1-k0)/2} C(P), alpha beta = omega*(P)
            local[pk] = UnramifiedPS(P.norm, trace=Radical.half_power(P.norm, 1 - f.k0) * Cp,
                                     det=Radical.const(f.omega_star(pk)))
        else:
            local[pk] = RamifiedPlaceholder(P.norm, P.valuation(f.level), Cp, f.k0)
    return AutomorphicRepData(arch, f.level, f.character, local, f.k0)


# -- weights and archimedean constants ------------------------------------------


@dataclass(frozen=True)
class CohomologicalWeight:
    pairs: tuple
    w: int

    def __post_init__(self):
        ws = {a + b for a, b in self.pairs}
        if any(a < b for a, b in self.pairs) or len(ws) != 1 or self.w not in ws:
            raise InvariantViolation("cohomological weight violates a_j >= b_j or purity")


def _weights(f):
    return f.weight if isinstance(f, HilbertNewformData) else tuple(f)


def cohomological_weight(f, twisted):
    k = _weights(f)
    if len({x % 2 for x in k}) != 1:
        raise ParityViolation("weights do not share a parity")
    k0 = max(k)
    if twisted:
        pairs = tuple(((k0 + kj - 2) // 2, (k0 - kj + 2) // 2) for kj in k)
    else:
        if any(kj % 2 for kj in k):
            raise OddWeightUntwisted("the untwisted weight needs all k_j even")
        pairs = tuple(((kj - 2) // 2, -(kj - 2) // 2) for kj in k)
    return CohomologicalWeight(pairs, pairs[0][0] + pairs[0][1])


def d_infinity(mu):
    pairs = mu.pairs if isinstance(mu, CohomologicalWeight) else tuple(mu)
    return sum(a + 1 for a, _ in pairs)


def archimedean_constants(mu):
    pairs = mu.pairs if isinstance(mu, CohomologicalWeight) else tuple(mu)
    if any(-b < 0 for _, b in pairs):
        raise NegativeFactorial("some -b_j is negative")
    d_inf = d_infinity(pairs)
    c = 4 ** len(pairs)
    for a, b in pairs:
        c *= (-1) ** a * factorial(a - b) // factorial(-b)
    return {"d_inf": d_inf, "c": c}


def classify(f):
    k = _weights(f)
    k0 = max(k)
    base = archimedean_classification([ArchLocalRep(kj - 1, 0) for kj in k])
    twisted = archimedean_classification([ArchLocalRep(kj - 1, Fraction(k0, 2)) for kj in k])
    if base["algebraic"]:
        cls = "algebraic"
    elif base["half_twist_algebraic"]:
        cls = "algebraic after a half twist"
    else:
        cls = "not algebraic under any twist"
    regular = all(kj >= 2 for kj in k)
    assert regular == base["regular"]
    return {"algebraic_class": cls, "algebraic": base["algebraic"],
            "half_twist_algebraic": base["half_twist_algebraic"],
            "algebraic_after_k0_twist": twisted["algebraic"],
            "regular": regular, "infinity_type": twisted["infinity_type"]}


# -- Galois action -----------------------------------------------------------------


@dataclass(frozen=True)
class GaloisAction:
    sigma: object                      # FieldAutomorphism of the coefficient field
    permutation: tuple = None          # place permutation, identity by default

    def perm(self, n):
        p = self.permutation or tuple(range(n))
        if sorted(p) != list(range(n)):
            raise InvariantViolation("place permutation is not a bijection")
        return p

    def compose(self, other):
        """self o other."""
        p1 = self.permutation
        p2 = other.permutation
        perm = None
        if p1 or p2:
            n = len(p1 or p2)
            p1 = p1 or tuple(range(n))
            p2 = p2 or tuple(range(n))
            perm = tuple(p2[p1[j]] for j in range(n))
        return GaloisAction(self.sigma.compose(other.sigma), perm)


def _character_conjugate(chi, sigma, K):
    """sigma o chi, read off from where sigma sends the stored root of unity."""
    t = 1
    for m in K.zeta:
        t = sigma.cyclotomic_exponent(m)
    return chi if t == 1 else chi.power(t)


def galois_conjugate(f, action):
    if not isinstance(action, GaloisAction):
        action = GaloisAction(action)
    sigma = action.sigma
    perm = action.perm(f.field.degree)
    weight = tuple(f.weight[perm[j]] for j in range(len(f.weight)))
    coeffs = {k: sigma(v) for k, v in f.coeffs.items()}
    chi = _character_conjugate(f.character, sigma, f.coeff_field)
    g = HilbertNewformData(f.field, weight, f.level, chi, f.coeff_field, coeffs, f.bound,
                           f.label + "^sigma" if f.label else "")
    report = validate_newform_data(g)
    if not report.ok:
        raise ValidationFailed("; ".join(report.failures))
    return g


@dataclass
class EquivarianceReport:
    ok: bool
    checked: list
    failures: list


def equivariance_check(f, action, prime_bound, conjugate=None):
    """Compare sigma'-twisted Satake invariants of f with those of the conjugate datum.

    Works on Pi(f) tensor |.|^{k0/2}: its Satake invariants are
        e1 = q^{1/2} q^{-k0} C(P),   e2 = q^{-k0} omega*(P),
    and sigma' acts by e1 -> q^{1/2} sigma(q^{-1/2} e1), e2 -> q sigma(e2 / q),
    so sigma only ever meets integral powers of q.
    """
    if not f.parity_ok:
        raise ParityViolation("weights do not share a parity")
    if not isinstance(action, GaloisAction):
        action = GaloisAction(action)
    sigma = action.sigma
    g = conjugate if conjugate is not None else galois_conjugate(f, action)
    checked, failures = [], []
    k0 = f.k0
    for pk in f.prime_keys():
        P = prime_from_key(f.field, pk)
        q = P.norm
        if q > prime_bound or not f.is_unramified(pk):
            continue
        Cf, Cg = f.C(((pk, 1),)), g.C(((pk, 1),))
        if Cg is None:
            failures.append(f"{f.label_of(((pk, 1),))}: missing in conjugate datum")
            continue
        root_q = Radical.sqrt(q)
        e1 = Radical.half_power(q, 1 - 2 * k0) * Cf
        inner = e1 / root_q
        if not inner.is_const():
            raise AssertionError("half-powers did not pair off")
        lhs1 = root_q * sigma(inner.const_part())
        e2 = Fraction(q) ** (-k0) * f.omega_star(pk)
        lhs2 = q * sigma(e2 / q)
        rhs1 = Radical.half_power(q, 1 - 2 * k0) * Cg
        rhs2 = Fraction(q) ** (-k0) * g.omega_star(pk)
        label = f.label_of(((pk, 1),))
        checked.append(label)
        if lhs1 != rhs1:
            failures.append(f"{label}: trace invariant differs")
        if lhs2 != rhs2:
            failures.append(f"{label}: central character differs")
    return EquivarianceReport(not failures, checked, failures)


# -- rationality field -------------------------------------------------------------


def rationality_field(f, prime_bound):
    """The subfield of the coefficient field generated by C(P), N(P) <= bound."""
    K = f.coeff_field
    gens = []
    for pk in f.prime_keys():
        if prime_from_key(f.field, pk).norm <= prime_bound:
            gens.append(f.C(((pk, 1),)))
    basis, pivots = echelon_basis([list(K.one.coords)])
    frontier = [K.one]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                r = reduce_against(list(y.coords), basis, pivots)
                if any(r):
                    basis, pivots = echelon_basis(basis + [list(y.coords)])
                    new.append(y)
        frontier = new
    degree = len(basis)
    elems = [K(b) for b in basis]
    primitive = None
    for g in gens:
        mp = g.minpoly()
        if len(mp) - 1 == degree:
            primitive = (g, mp)
            break
    return {"degree": degree, "basis": elems,
            "primitive": primitive,
            "is_whole_field": degree == K.degree,
            "caveat": degree < K.degree,
            "bound": prime_bound}
