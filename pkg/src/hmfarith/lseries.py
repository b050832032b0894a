"""Dirichlet series over ideals: Euler expansion, evaluation with tail bounds,
twists, the shift between the classical and unitary normalizations, and
critical values.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import factorial

import mpmath

from .characters import angle_value, gauss_sum, signature
from .dictionary import (HilbertNewformData, attach_representation,
                         cohomological_weight, d_infinity)
from .errors import (MissingLocalData, NotCritical, OutOfConvergenceRegion, ParityViolation,
                     PrecisionExhausted)
from .ideals import enumerate_ideal_keys, primes_up_to
from .local_reps import LocalLFactor, UnramifiedPS
from .radical import Radical

DEFAULT_DELTA = Fraction(1, 2)


def _mpf(x):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


@dataclass
class DirichletSeries:
    """sum_m a(m) N(m)^{-s} over integral ideals m with N(m) <= bound."""
    field: object
    coeffs: dict                  # ideal key -> exact value
    norms: dict                   # ideal key -> N(m)
    normalization: str            # "classical" or "unitary"
    k0: int
    bound: int
    embed: object                 # exact value -> mpf / mpc
    provenance: str = "euler"
    twist: dict = dc_field(default_factory=dict)   # ideal key -> angle

    def growth(self, delta=DEFAULT_DELTA):
        """Exponent g with |a(m)| <= d(m) N(m)^g."""
        if self.normalization == "classical":
            return Fraction(self.k0 - 1, 2) + Fraction(delta)
        return Fraction(delta)

    def keys(self):
        return sorted(self.coeffs, key=lambda k: (self.norms[k], k))

    def coefficient(self, key):
        return self.coeffs.get(key)

    def complex_coefficient(self, key, prec=128):
        v = self.embed(self.coeffs[key])
        a = self.twist.get(key)
        if a:
            v = v * angle_value(a, prec)
        return v


def _embed_K(K, prec=128):
    root = K.roots(prec)[K.embedding]

    def emb(x):
        if isinstance(x, Radical):
            return x.embed(lambda c: K(c).embed(prec, root), prec)
        return K(x).embed(prec, root)
    return emb


def _prime_power_values_classical(f, P, rmax):
    """C(P^r) for r <= rmax from C(P) by the Hecke recursion."""
    pk = P.key
    Cp = f.C(((pk, 1),))
    if Cp is None:
        raise MissingLocalData(f"no eigenvalue stored at {P.label} (norm {P.norm})")
    K = f.coeff_field
    vals = [K.one, Cp]
    if f.is_unramified(pk):
        w = f.omega_star(pk) * Fraction(P.norm) ** (f.k0 - 1)
        for _ in range(2, rmax + 1):
            vals.append(Cp * vals[-1] - w * vals[-2])
    else:
        for _ in range(2, rmax + 1):
            vals.append(Cp * vals[-1])
    return vals[:rmax + 1]


def _prime_power_values_unitary(rep, P, rmax):
    """Unitary coefficients at P^r from the local representation: h_r(alpha, beta)."""
    loc = rep.local.get(P.key)
    if loc is None:
        raise MissingLocalData(f"no local data at {P.label} (norm {P.norm})")
    if isinstance(loc, UnramifiedPS):
        return loc.complete_homogeneous(rmax)
    a = -loc.L_polynomial().poly[1]
    vals = [Radical.const(1)]
    for _ in range(rmax):
        vals.append(vals[-1] * a)
    return vals


def _max_exponent(q, B):
    r = 0
    while q ** (r + 1) <= B:
        r += 1
    return r


def coefficients_from_euler(data, B, normalization=None):
    """Expand the finite Euler product over primes of norm <= B up to norm B.

    ``data`` is a HilbertNewformData (classical normalization by default) or
    an AutomorphicRepData together with its field (unitary normalization).
    """
    if isinstance(data, HilbertNewformData):
        f = data
        F = f.field
        K = f.coeff_field
        norm_kind = normalization or "classical"
        rep = attach_representation(f) if norm_kind == "unitary" else None
    else:
        raise TypeError("expected newform data")
    B = int(B)
    tables = {}
    for P in sorted(primes_up_to(F, B), key=lambda P: (P.norm, P.f, P.key)):
        rmax = _max_exponent(P.norm, B)
        if norm_kind == "classical":
            tables[P.key] = _prime_power_values_classical(f, P, rmax)
        else:
            tables[P.key] = _prime_power_values_unitary(rep, P, rmax)
    coeffs, norms = {}, {}
    one = K.one if norm_kind == "classical" else Radical.const(K.one)
    for key, N in enumerate_ideal_keys(F, B):
        v = one
        for pk, e in key:
            v = v * tables[pk][e]
        coeffs[key] = v
        norms[key] = N
    return DirichletSeries(F, coeffs, norms, norm_kind, f.k0, B, _embed_K(K), "euler")


def unitary_from_classical(series):
    """Multiply a(m) by N(m)^{-(k0-1)/2}, carried exactly as a radical."""
    coeffs = {k: Radical.half_power(series.norms[k], 1 - series.k0) * v
              for k, v in series.coeffs.items()}
    return DirichletSeries(series.field, coeffs, dict(series.norms), "unitary", series.k0,
                           series.bound, series.embed, series.provenance, dict(series.twist))


def constant_series(F, B, K=None):
    """The partial Dedekind zeta function: every coefficient 1."""
    from .numfield import rational_field
    K = K or rational_field()
    coeffs, norms = {}, {}
    for key, N in enumerate_ideal_keys(F, B):
        coeffs[key] = K.one
        norms[key] = N
    return DirichletSeries(F, coeffs, norms, "unitary", 1, B, _embed_K(K), "constant")


# -- evaluation ---------------------------------------------------------------------


@dataclass
class LValue:
    value: object        # mpc partial sum
    tail: object         # rigorous bound on the omitted terms
    radius: object       # rounding error bound of the partial sum
    bound: int
    s: object

    @property
    def error(self):
        return self.tail + self.radius

    def contains(self, z):
        return abs(self.value - z) <= self.error


def tail_bound(sigma_excess, B, k):
    """Bound for sum_{n > B} d_k(n) n^{-beta}, beta = sigma_excess > 1.

    Uses D_k(x) <= x (1 + ln x)^{k-1} and partial summation:
    beta * int_B^inf t^{-beta} (1 + ln t)^{j} dt with j = k - 1.
    """
    beta = mpmath.mpf(sigma_excess)
    gamma = beta - 1
    if gamma <= 0:
        raise OutOfConvergenceRegion("tail bound needs beta > 1")
    L = mpmath.log(B)
    j = k - 1
    total = mpmath.mpf(0)
    for i in range(j + 1):
        total += mpmath.mpf(factorial(j) // factorial(j - i)) * (L + 1) ** (j - i) / gamma ** (i + 1)
    return beta * total * mpmath.exp(-gamma * L)


def evaluate_finite_L(series, s, B=None, prec=128, delta=DEFAULT_DELTA):
    B = int(B or series.bound)
    if B > series.bound:
        raise ValueError("evaluation bound exceeds the stored coefficient range")
    with mpmath.workprec(prec + 32):
        s = mpmath.mpmathify(s)
        excess = mpmath.re(s) - _mpf(series.growth(delta))
        if excess <= 1:
            raise OutOfConvergenceRegion(
                f"Re(s) = {mpmath.nstr(mpmath.re(s), 8)} is outside the region of absolute convergence "
                f"(need Re(s) > {series.growth(delta) + 1})")
        total = mpmath.mpc(0)
        count = 0
        for key in series.keys():
            N = series.norms[key]
            if N > B:
                break
            a = series.coeffs[key]
            if _is_zero(a) or key in series.twist and series.twist[key] is None:
                continue
            total += series.complex_coefficient(key, prec + 32) * mpmath.mpf(N) ** (-s)
            count += 1
        tail = tail_bound(excess, B, 2 * series.field.degree)
        radius = mpmath.mpf(count + 1) * (abs(total) + 1) * mpmath.mpf(2) ** (-prec)
    if radius > mpmath.mpf(2) ** (-(prec // 2)):
        raise PrecisionExhausted("rounding error too large for the requested precision")
    return LValue(total, tail, radius, B, s)


def _is_zero(x):
    return x.is_zero() if hasattr(x, "is_zero") else x == 0


def twist_series(series, chi):
    """Multiply a(m) by chi*(m); terms meeting the modulus get the value 0."""
    twist = {}
    for key in series.coeffs:
        a = chi.ideal_angle(key)
        old = series.twist.get(key, 0)
        if a is None or old is None:
            twist[key] = None
        else:
            twist[key] = (old + a) % 1
    return DirichletSeries(series.field, dict(series.coeffs), dict(series.norms),
                           series.normalization, series.k0, series.bound, series.embed,
                           series.provenance, twist)


def twisted_coefficient(series, key):
    """(exact value, angle) with angle None meaning the coefficient vanishes."""
    a = series.twist.get(key, 0)
    return series.coeffs[key], a


# -- archimedean factors and the shift relation --------------------------------------


def classical_arch_factors(weight):
    k0 = max(weight)
    return [LocalLFactor(shifts=(Fraction(-(k0 - kj), 2),)) for kj in weight]


def unitary_arch_factors(weight):
    return [LocalLFactor(shifts=(Fraction(kj - 1, 2),)) for kj in weight]


@dataclass
class CompletedL:
    series: DirichletSeries
    arch: list

    def evaluate(self, s, prec=128, delta=DEFAULT_DELTA):
        Lf = evaluate_finite_L(self.series, s, prec=prec, delta=delta)
        with mpmath.workprec(prec + 16):
            Linf = mpmath.mpf(1)
            for a in self.arch:
                Linf *= a.evaluate(s, prec)
            return Lf.value * Linf, Lf.error * abs(Linf)


@dataclass
class ShiftReport:
    exact_ok: bool
    exact_checked: int
    numeric: list          # (s, discrepancy, allowed)
    arch: list             # (s, discrepancy)

    @property
    def ok(self):
        return self.exact_ok and all(d <= a for _, d, a in self.numeric) \
            and all(d <= mpmath.mpf(2) ** -60 for _, d in self.arch)


def shift_relation_check(f, grid, B, prec=128, delta=DEFAULT_DELTA):
    classical = coefficients_from_euler(f, B, "classical")
    unitary = coefficients_from_euler(f, B, "unitary")
    # exact: unitary coefficient = classical coefficient * N^{-(k0-1)/2}
    shifted = unitary_from_classical(classical)
    exact_ok = True
    for key in classical.coeffs:
        if unitary.coeffs[key] != shifted.coeffs[key]:
            exact_ok = False
            break
    shift = Fraction(f.k0 - 1, 2)
    numeric, arch = [], []
    cl_arch = classical_arch_factors(f.weight)
    un_arch = unitary_arch_factors(f.weight)
    for s in grid:
        with mpmath.workprec(prec + 32):
            s = mpmath.mpmathify(s)
            Lu = evaluate_finite_L(unitary, s, prec=prec, delta=delta)
            Lc = evaluate_finite_L(classical, s + _mpf(shift), prec=prec, delta=delta)
            numeric.append((s, abs(Lu.value - Lc.value), Lu.error + Lc.error))
            au = mpmath.mpf(1)
            ac = mpmath.mpf(1)
            for a, b in zip(un_arch, cl_arch):
                au *= a.evaluate(s, prec)
                ac *= b.evaluate(s + _mpf(shift), prec)
            arch.append((s, abs(au - ac) / abs(au)))
    return ShiftReport(exact_ok, len(classical.coeffs), numeric, arch)


# -- critical points and values ---------------------------------------------------------


@dataclass
class CriticalSet:
    classical: list
    cohomological: list
    shift: Fraction

    def to_classical(self, m_prime):
        return m_prime + self.shift


def critical_points(f):
    k = f.weight if isinstance(f, HilbertNewformData) else tuple(f)
    if len({x % 2 for x in k}) != 1:
        raise ParityViolation("weights do not share a parity")
    k0, kmin = max(k), min(k)
    lo, hi = Fraction(k0 - kmin, 2), Fraction(k0 + kmin, 2)
    classical = [m for m in range(-k0 - 2, 2 * k0 + 3) if lo < m < hi]
    half = Fraction(k0, 2)
    if k0 % 2 == 0:
        mu = cohomological_weight(k, twisted=False)
        coh = [Fraction(m) for m in range(-k0 - 2, k0 + 3)
               if all(-a <= m <= -b for a, b in mu.pairs)]
    else:
        mu = cohomological_weight(k, twisted=True)
        coh = [m + half for m in range(-2 * k0 - 2, 2 * k0 + 3)
               if all(-a <= m <= -b for a, b in mu.pairs)]
    if sorted(m + half for m in coh) != [Fraction(m) for m in classical]:
        raise AssertionError("critical sets do not correspond under m = m' + k0/2")
    coh = [int(m) if m.denominator == 1 else m for m in coh]
    return CriticalSet(classical, coh, half)


def _algebraic_twist(f, m_prime):
    """(mu, m) used for the power of 2 pi i and the signature."""
    if f.k0 % 2 == 0:
        return cohomological_weight(f, twisted=False), int(m_prime)
    return cohomological_weight(f, twisted=True), int(Fraction(m_prime) - Fraction(f.k0, 2))


@dataclass
class CriticalValueReport:
    m_prime: object
    s_classical: object
    out_of_reach: bool
    value: object = None
    tail: object = None
    radius: object = None
    d_inf: int = None
    exponent: int = None
    gauss: object = None
    period: object = None
    ratio: object = None
    ratio_radius: object = None
    signature: tuple = None
    orbit: list = None
    warnings: list = dc_field(default_factory=list)


def normalized_critical_value(f, chi, m_prime, period=1, B=1000, prec=128,
                              delta=DEFAULT_DELTA, orbit_periods=None):
    cs = critical_points(f)
    if Fraction(m_prime) not in [Fraction(m) for m in cs.cohomological]:
        raise NotCritical(f"m' = {m_prime} is not critical")
    m = cs.to_classical(Fraction(m_prime))
    mu, m_alg = _algebraic_twist(f, m_prime)
    d_inf = d_infinity(mu)
    n = f.field.degree
    exponent = d_inf + n * m_alg
    eps = signature(chi)
    sig = tuple((-1) ** (m_alg % 2) * e for e in eps)
    rep = CriticalValueReport(m_prime, m, False, d_inf=d_inf, exponent=exponent,
                              signature=sig, period=period)
    series = twist_series(coefficients_from_euler(f, B), chi)
    growth = series.growth(delta)
    if m - growth <= 1:
        rep.out_of_reach = True
        rep.warnings.append(f"OutOfReach: s = {m} needs Re(s) > {growth + 1} for absolute convergence")
        return rep
    G = gauss_sum(chi, prec)
    rep.gauss = G.value

    def one_ratio(ser, per):
        L = evaluate_finite_L(ser, m, prec=prec, delta=delta)
        with mpmath.workprec(prec + 32):
            D = (2 * mpmath.pi * mpmath.j) ** exponent * G.value * mpmath.mpmathify(per)
            ratio = L.value / D
            err = (L.error + abs(ratio) * abs((2 * mpmath.pi) ** exponent * per) * G.radius) / abs(D)
        return L, ratio, err

    L, ratio, err = one_ratio(series, period)
    rep.value, rep.tail, rep.radius = L.value, L.tail, L.radius
    rep.ratio, rep.ratio_radius = ratio, err
    if orbit_periods is not None:
        K = f.coeff_field
        table = []
        saved = K.embedding
        try:
            for e, per in enumerate(orbit_periods):
                K.embedding = e
                ser = twist_series(coefficients_from_euler(f, B), chi)
                _, r, er = one_ratio(ser, per)
                table.append((e, r, er))
        finally:
            K.embedding = saved
        rep.orbit = table
    return rep


# -- period relations (symbolic) ---------------------------------------------------------


def _sign_str(v):
    return "(" + ",".join("+" if x > 0 else "-" for x in v) + ")"


@dataclass
class PeriodRelation:
    lhs_sign: tuple          # sign of the twisted period
    rhs_sign: tuple          # sign of the untwisted period
    gauss_factor: bool
    two_pi_i_exponent: object
    text: str


def period_relation_bookkeeping(f, xi=None, m=0, eps=None):
    """The relation p^{eps}(Pi x xi) ~ G(xi0) p^{eps.eps_xi}(Pi) for xi = |.|^m xi0.

    eps_xi = (-1)^m sign(xi0).  Substituting eps -> eps.eps_xi gives the
    other common way of writing the same relation.
    """
    n = f.field.degree
    eps = tuple(eps or (1,) * n)
    eps0 = tuple(signature(xi)) if xi is not None else (1,) * n
    eps_xi = tuple((-1) ** (m % 2) * e for e in eps0)
    rhs = tuple(a * b for a, b in zip(eps, eps_xi))
    nontrivial = xi is not None and not (xi.residue.is_trivial() and not any(xi.lambdas))
    twist = []
    if m:
        twist.append(f"| |^{m}")
    if nontrivial:
        twist.append("xi0")
    name = "Pi" if not twist else "Pi x " + " x ".join(twist)
    gauss = "G(xi0) " if nontrivial else ""
    rel = "~" if nontrivial else "="
    text = f"p^{_sign_str(eps)}({name}) {rel} {gauss}p^{_sign_str(rhs)}(Pi)"
    exp = None
    if all(k % 2 == 0 for k in f.weight):
        exp = sum(Fraction(f.k0 - k, 2) for k in f.weight)
        text += f"; p^{_sign_str((1,) * n)}(Pi) ~ (2 pi i)^{exp} u({_sign_str((1,) * n)}, f)"
    return PeriodRelation(eps, rhs, nontrivial, exp, text)
