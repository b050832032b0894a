"""Local components: new vectors, local L-factors, Hecke cosets, archimedean data.

Values live in the formal radical ring so that half-integral powers of the
residue size q stay exact.  Parameters (Satake values, twists) may be
Fractions, coefficient-field elements, or radicals themselves.
"""

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy

from .errors import InvariantViolation, WeightOrder
from .radical import Radical
from .series import TruncatedSeries


def _R(x):
    return x if isinstance(x, Radical) else Radical.const(x)


def _is_zero(x):
    return _R(x).is_zero()


# -- non-archimedean representations -----------------------------------------


@dataclass(frozen=True)
class UnramifiedPS:
    """Unramified principal series, by Satake values or by their symmetric functions."""
    q: int
    alpha: object = None
    beta: object = None
    trace: object = None
    det: object = None
    conductor_exponent: int = 0
    tag = "unramified"

    def __post_init__(self):
        if self.alpha is not None and self.beta is not None:
            object.__setattr__(self, "trace", _R(self.alpha) + _R(self.beta))
            object.__setattr__(self, "det", _R(self.alpha) * _R(self.beta))
        if self.trace is None or self.det is None:
            raise InvariantViolation("unramified principal series needs (alpha, beta) or (trace, det)")
        if _is_zero(self.det):
            raise InvariantViolation("Satake values must be nonzero")
        if self.conductor_exponent != 0:
            raise InvariantViolation("unramified principal series has conductor exponent 0")

    def complete_homogeneous(self, M):
        """h_m = sum_{k+l=m} alpha^k beta^l for 0 <= m <= M."""
        e1, e2 = _R(self.trace), _R(self.det)
        h = [Radical.const(1), e1]
        for _ in range(2, M + 1):
            h.append(e1 * h[-1] - e2 * h[-2])
        return h[:M + 1]


@dataclass(frozen=True)
class RamifiedPSOneUnramified:
    """chi_1 unramified with chi_1(varpi) = chi1, chi_2 ramified of conductor exponent c."""
    q: int
    chi1: object
    conductor_exponent: int = 1
    chi2_data: object = None
    tag = "ramified_ps"

    def __post_init__(self):
        if self.conductor_exponent < 1:
            raise InvariantViolation("a ramified principal series has conductor exponent >= 1")


@dataclass(frozen=True)
class SteinbergUnramifiedTwist:
    """St tensor chi with chi unramified, chi(varpi) = chi."""
    q: int
    chi: object
    conductor_exponent: int = 1
    tag = "steinberg"

    def __post_init__(self):
        if self.conductor_exponent != 1:
            raise InvariantViolation("an unramified twist of Steinberg has conductor exponent 1")


@dataclass(frozen=True)
class DepthlessOther:
    """Both-ramified principal series, ramified Steinberg twists and supercuspidals."""
    q: int
    conductor_exponent: int = 2
    central_character: object = None
    tag = "other"

    def __post_init__(self):
        if self.conductor_exponent < 2:
            raise InvariantViolation("these representations have conductor exponent >= 2")


def kirillov_new_value(rep, m):
    """kappa^new(x) for v(x) = m, as an exact radical."""
    q = rep.q
    if isinstance(rep, DepthlessOther):
        return Radical.const(1 if m == 0 else 0)
    if m < 0:
        return Radical.const(0)
    if isinstance(rep, UnramifiedPS):
        return Radical.half_power(q, -m) * rep.complete_homogeneous(m)[m]
    if isinstance(rep, RamifiedPSOneUnramified):
        return Radical.half_power(q, -m) * _R(rep.chi1) ** m
    if isinstance(rep, SteinbergUnramifiedTwist):
        return Radical.half_power(q, -2 * m) * _R(rep.chi) ** m
    raise TypeError(f"unknown representation {rep!r}")


@dataclass(frozen=True)
class LocalLFactor:
    """Finite place: L = 1/P(X) with X = q^{-s}.  Infinite place: Gamma atoms."""
    poly: tuple = ()
    shifts: tuple = ()
    drop_two: bool = True
    q: int = None

    @property
    def archimedean(self):
        return bool(self.shifts)

    def degree(self):
        return max((i for i, c in enumerate(self.poly) if not _is_zero(c)), default=0)

    def series(self, M):
        return TruncatedSeries(list(self.poly), M)

    def evaluate(self, s, prec=128, embed=None):
        with mpmath.workprec(prec + 16):
            s = mpmath.mpmathify(s)
            if self.archimedean:
                out = mpmath.mpf(1)
                for b in self.shifts:
                    b = mpmath.mpf(b.numerator) / b.denominator
                    atom = (2 * mpmath.pi) ** (-(s + b)) * mpmath.gamma(s + b)
                    out *= atom if self.drop_two else 2 * atom
                return out
            X = mpmath.mpf(self.q) ** (-s)
            P = mpmath.mpf(0)
            for i, c in enumerate(self.poly):
                P += _R(c).embed(embed or _default_embed, prec) * X ** i
            return 1 / P


def _default_embed(c):
    if hasattr(c, "embed"):
        return c.embed()
    c = Fraction(c)
    return mpmath.mpf(c.numerator) / c.denominator


def local_L_polynomial(rep):
    if hasattr(rep, "L_polynomial"):
        return rep.L_polynomial()
    q = rep.q
    if isinstance(rep, UnramifiedPS):
        return LocalLFactor(poly=(Radical.const(1), -_R(rep.trace), _R(rep.det)), q=q)
    if isinstance(rep, RamifiedPSOneUnramified):
        return LocalLFactor(poly=(Radical.const(1), -_R(rep.chi1)), q=q)
    if isinstance(rep, SteinbergUnramifiedTwist):
        return LocalLFactor(poly=(Radical.const(1), -_R(rep.chi) * Radical.half_power(q, -1)), q=q)
    if isinstance(rep, DepthlessOther):
        return LocalLFactor(poly=(Radical.const(1),), q=q)
    raise TypeError(f"unknown representation {rep!r}")


def zeta_newvector_series(rep, M):
    """sum_m kappa^new(varpi^m) q^{m/2} X^m up to X^M."""
    if M < 1:
        raise ValueError("truncation order must be at least 1")
    q = rep.q
    if isinstance(rep, UnramifiedPS):
        # kappa(m) q^{m/2} = h_m exactly; skip the radical round trip
        return TruncatedSeries(rep.complete_homogeneous(M), M)
    coeffs = [kirillov_new_value(rep, m) * Radical.half_power(q, m) for m in range(M + 1)]
    return TruncatedSeries(coeffs, M)


def zeta_identity_holds(rep, M):
    """zeta series times the L-polynomial equals 1 + O(X^{M+1})."""
    Z = zeta_newvector_series(rep, M)
    P = local_L_polynomial(rep).series(M)
    return (Z * P).is_one()


# -- spherical Hecke operator --------------------------------------------------


def hecke_cosets(q):
    """Representatives of K diag(varpi, 1) K / K as (v(a), b, v(d)) upper triangular."""
    reps = [(0, 0, 1)]
    reps += [(1, u, 0) for u in range(q)]
    return reps


def spherical_hecke_eigenvalue(alpha, beta, q):
    """Eigenvalue of T_p on the spherical vector, as the explicit coset sum."""
    alpha, beta = _R(alpha), _R(beta)
    total = Radical.const(0)
    for va, _b, vd in hecke_cosets(q):
        # f(diag(a, d) k) = chi_1(a) chi_2(d) |a/d|^{1/2}, |varpi| = 1/q
        total = total + alpha ** va * beta ** vd * Radical.half_power(q, vd - va)
    closed = Radical.sqrt(q) * (alpha + beta)
    if total != closed:
        raise AssertionError("coset sum disagrees with the closed form")
    return total


# -- archimedean ----------------------------------------------------------------


@dataclass(frozen=True)
class ArchLocalRep:
    """D_l tensor |.|^t."""
    l: int
    t: Fraction = Fraction(0)

    def __post_init__(self):
        if self.l < 0:
            raise InvariantViolation("discrete series parameter must be nonnegative")
        object.__setattr__(self, "t", Fraction(self.t))

    def exponents(self):
        return (Fraction(self.l, 2) + self.t, Fraction(-self.l, 2) + self.t)


def arch_L_factor(rep, drop_two=True):
    return LocalLFactor(shifts=(rep.t + Fraction(rep.l, 2),), drop_two=drop_two)


def _half_odd(x):
    return (2 * x).denominator == 1 and (2 * x) % 2 == 1


def archimedean_classification(reps):
    exps = [e for r in reps for e in r.exponents()]
    algebraic = all(_half_odd(e) for e in exps)
    half_twist = all(_half_odd(e + Fraction(1, 2)) for e in exps)
    infinity_type = None
    if algebraic:
        infinity_type = [(int(r.exponents()[0] - Fraction(1, 2)), int(r.exponents()[1] - Fraction(1, 2)))
                         for r in reps]
    regular = all(r.l != 0 for r in reps)
    return {"algebraic": algebraic, "half_twist_algebraic": half_twist,
            "infinity_type": infinity_type, "regular": regular}


def delta_matrix(nu1, nu2):
    """Matrix of delta on (f_{-2}, f_2) and its eigen-decomposition."""
    if nu1 < nu2:
        raise WeightOrder("need nu1 >= nu2")
    d = nu1 - nu2
    I = sympy.I
    M = sympy.Matrix([[0, I ** (-d)], [I ** d, 0]])
    out = []
    for sign in (1, -1):
        v = sympy.Matrix([sign * I ** (-d), 1])  # f_2 + sign * i^{-d} f_{-2}
        if sympy.simplify(M * v - sign * v) != sympy.zeros(2, 1):
            raise AssertionError("delta eigenvector check failed")
        out.append((sign, v))
    if sympy.simplify(M * M) != sympy.eye(2):
        raise AssertionError("delta does not square to the identity")
    return M, out


def gl1_branching(nu1, nu2):
    if nu1 < nu2:
        raise WeightOrder("need nu1 >= nu2")
    weights = [j - nu1 for j in range(nu1 - nu2 + 1)]
    if 0 in weights:
        return {"nonzero": True, "projection_index": weights.index(0)}
    return {"nonzero": False, "projection_index": None}
