"""Real quadratic fields through indefinite binary quadratic forms.

Narrow ideal classes correspond to SL2(Z)-classes of primitive forms of the
field discriminant D.  Each class is keyed by the smallest form in its
cycle of reduced forms, which also yields totally positive generators of
narrowly principal ideals.
"""

from fractions import Fraction
from math import gcd, isqrt

from .ideals import FractionalIdeal

IDENTITY = ((1, 0), (0, 1))


def _mat_mul(A, B):
    return ((A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]),
            (A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]))


def _mat_inv(A):
    # determinant one
    return ((A[1][1], -A[0][1]), (-A[1][0], A[0][0]))


def act(form, M):
    """Q(px + qy, rx + sy) for M = ((p, q), (r, s))."""
    a, b, c = form
    (p, q), (r, s) = M
    return (a * p * p + b * p * r + c * r * r,
            2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
            a * q * q + b * q * s + c * s * s)


def _lt_sqrt(x, D):
    """x < sqrt(D) for integer x and non-square D > 0."""
    return x < 0 or x * x < D


def _gt_sqrt(x, D):
    return x > 0 and x * x > D


def is_reduced(form, D):
    a, b, c = form
    # |sqrt(D) - 2|a|| < b < sqrt(D)
    if not (b > 0 and _lt_sqrt(b, D)):
        return False
    t = 2 * abs(a)
    # sqrt(D) - t < b  <=>  sqrt(D) < b + t ; t - sqrt(D) < b <=> t - b < sqrt(D)
    return _gt_sqrt(b + t, D) and _lt_sqrt(t - b, D)


def _normalize_b(b, c, D):
    """The representative b' = b mod 2|c| used by one reduction step."""
    m = 2 * abs(c)
    if _gt_sqrt(abs(c), D) or abs(c) * abs(c) == D:
        # -|c| < b' <= |c|
        r = b % m
        if r > abs(c):
            r -= m
        return r
    # sqrt(D) - 2|c| < b' < sqrt(D): largest b' < sqrt(D) in the class
    s = isqrt(D)
    top = s if s * s < D else s - 1
    r = top - ((top - b) % m)
    return r


def rho(form, D):
    """One reduction step (a, b, c) -> (c, b', a') and its matrix."""
    a, b, c = form
    bp = _normalize_b(-b, c, D)
    t = (bp + b) // (2 * c)
    M = ((0, -1), (1, t))
    out = act(form, M)
    assert out[0] == c and out[1] == bp
    return out, M


def reduce_form(form, D):
    M = IDENTITY
    f = form
    steps = 0
    while not is_reduced(f, D):
        f, R = rho(f, D)
        M = _mat_mul(M, R)
        steps += 1
        if steps > 10000:
            raise AssertionError("form reduction did not terminate")
    return f, M


def cycle(form, D):
    """The cycle of reduced forms through a reduced form, with matrices."""
    out = [(form, IDENTITY)]
    f, M = form, IDENTITY
    while True:
        f, R = rho(f, D)
        M = _mat_mul(M, R)
        if f == form:
            return out
        out.append((f, M))


def canonical_form(form, D):
    """(smallest reduced form in the proper class, M with form o M = it)."""
    r, M = reduce_form(form, D)
    best = min(cycle(r, D), key=lambda t: t[0])
    return best[0], _mat_mul(M, best[1])


# -- ideals <-> forms --------------------------------------------------------


def conj(x):
    """Galois conjugate in a quadratic field."""
    F = x.field
    w = F.basis_elements()[1]
    t = w.trace()
    a, b = x.coords
    # a + b w -> a + b (t - w)
    return F.element([a + b * t, -b])


def sqrt_D_coeff(x):
    """v with x = u + v sqrt(D)."""
    # w = (sigma + sqrt(D))/2, so x = a + b w has sqrt(D)-coefficient b/2
    return x.coords[1] / 2


def oriented_basis(I):
    b1, b2 = I.basis()
    u1, v1 = b1.coords[0] + b1.coords[1] * _sigma_half(I.field), sqrt_D_coeff(b1)
    u2, v2 = b2.coords[0] + b2.coords[1] * _sigma_half(I.field), sqrt_D_coeff(b2)
    # sign of det(eta_i(beta_j)) equals sign of u1 v2 - v1 u2 (eta_1 sends sqrt D to -sqrt D)
    if u1 * v2 - v1 * u2 > 0:
        return b1, b2
    return b2, b1


def _sigma_half(F):
    return Fraction(F.quadratic_D % 2, 2)


def ideal_form(I):
    """The primitive form N(x b1 + y b2) / N(I) for an oriented basis."""
    b1, b2 = oriented_basis(I)
    N = I.norm()
    a = b1.norm() / N
    b = (b1 * conj(b2)).trace() / N
    c = b2.norm() / N
    assert a.denominator == b.denominator == c.denominator == 1
    return (int(a), int(b), int(c)), (b1, b2)


def narrow_key(I):
    form, _ = ideal_form(I)
    return canonical_form(form, I.field.quadratic_D)[0]


def totally_positive_generator(I):
    """A totally positive generator of I, or None if I is not narrowly principal."""
    F = I.field
    D = F.quadratic_D
    f_I, (b1, b2) = ideal_form(I)
    f_O, _ = ideal_form(FractionalIdeal.unit(F))
    k_I, M_I = canonical_form(f_I, D)
    k_O, M_O = canonical_form(f_O, D)
    if k_I != k_O:
        return None
    T = _mat_mul(M_I, _mat_inv(M_O))
    (p, _), (r, _) = T
    lam = b1 * p + b2 * r
    if F.sign(lam, 0) < 0:
        lam = -lam
    assert all(s > 0 for s in lam.signs())
    assert FractionalIdeal.principal(lam) == I
    return lam


def reduced_forms(D):
    """All primitive reduced forms of discriminant D."""
    out = []
    s = isqrt(D)
    for b in range(1, s + 1):
        if not _lt_sqrt(b, D) or (b * b - D) % 4:
            continue
        ac = (b * b - D) // 4
        for a in range(1, abs(ac) + 1):
            if ac % a:
                continue
            for sa in (a, -a):
                c = ac // sa
                f = (sa, b, c)
                if gcd(gcd(sa, b), c) == 1 and is_reduced(f, D):
                    out.append(f)
    return sorted(set(out))


def form_class_number(D):
    """Number of proper classes of primitive forms: cycles of reduced forms."""
    seen = set()
    count = 0
    for f in reduced_forms(D):
        if f in seen:
            continue
        count += 1
        for g, _ in cycle(f, D):
            seen.add(g)
    return count


def ordinary_form_class_number(D):
    """Classes under ideal equivalence with arbitrary-sign generators.

    Multiplying an ideal by an element of negative norm turns its form
    (a, b, c) into one properly equivalent to (-a, b, -c).
    """
    keys = {}
    for f in reduced_forms(D):
        k = canonical_form(f, D)[0]
        a, b, c = f
        k2 = canonical_form((-a, b, -c), D)[0]
        keys[k] = k2
    orbits = set()
    for k, k2 in keys.items():
        orbits.add(min(k, k2))
    return len(orbits)


# -- fundamental unit --------------------------------------------------------


def _floor_quad(P, Q, D):
    """floor((P + sqrt D) / Q) exactly, D not a square."""
    s = isqrt(D)
    if Q > 0:
        return (P + s) // Q
    return (-P - s - 1) // (-Q)


def fundamental_unit(F):
    """(epsilon, norm, period length) from the continued fraction of omega.

    epsilon is normalized to exceed 1 under the embedding with sqrt(D) > 0.
    """
    D = F.quadratic_D
    sigma = D % 2
    # complete quotients (P + sqrt D) / Q, starting from omega = (sigma + sqrt D) / 2
    P, Q = sigma, 2
    seen = {}
    states = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(states)
        states.append((P, Q))
        a = _floor_quad(P, Q, D)
        P = a * Q - P
        Q = (D - P * P) // Q
    period = states[seen[(P, Q)]:]
    w = F.basis_elements()[1]
    sqrtD = 2 * w - sigma
    eps = F.one
    for P, Q in period:
        eps = eps * ((sqrtD + P) / Q)
    if F.sign(eps, 1) < 0:
        eps = -eps
    if F.sign(eps - 1, 1) < 0:
        eps = eps.inverse()
    N = eps.norm()
    assert abs(N) == 1 and eps.is_integral()
    return eps, int(N), len(period)
