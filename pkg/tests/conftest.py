import random
from fractions import Fraction
from functools import lru_cache

import mpmath
import pytest

import oracles
from hmfarith.characters import ResidueCharacter, adelize
from hmfarith.dictionary import HilbertNewformData
from hmfarith.field import build_field, quadratic_field
from hmfarith.ideals import FractionalIdeal, enumerate_ideal_keys, primes_up_to
from hmfarith.numfield import NumberField, rational_field


@lru_cache(maxsize=None)
def field(d):
    return build_field([0, 1]) if d == 1 else quadratic_field(d)


def trivial_character(F, level=None):
    level = level or FractionalIdeal.unit(F)
    return adelize(ResidueCharacter.trivial(level))


@lru_cache(maxsize=None)
def delta_form(N):
    """The weight 12 level 1 form over Q with tau(n) stored for n <= N."""
    F = field(1)
    t = oracles.tau(N)
    coeffs = {key: t[n] for key, n in enumerate_ideal_keys(F, N)}
    return HilbertNewformData(F, (12,), FractionalIdeal.unit(F), trivial_character(F),
                              rational_field(), coeffs, N, "delta")


def expand_prime_data(F, weight, level, chi, K, prime_values, B):
    """Coefficients of norm <= B from C(P) by the Hecke recursion, written out
    with truncated power series in each prime (independent of lseries)."""
    from hmfarith.series import TruncatedSeries
    k0 = max(weight)
    level_primes = set()
    if not level.is_unit():
        from hmfarith.ideals import factor_ideal
        level_primes = {pk for pk, _ in factor_ideal(level)}
    local = {}
    for P in primes_up_to(F, B):
        r = 0
        while P.norm ** (r + 1) <= B:
            r += 1
        c = prime_values[P.key]
        if P.key in level_primes:
            poly = [K.one, -c]
        else:
            a = chi.ideal_angle(((P.key, 1),))
            w = K.root_of_unity(a) * Fraction(P.norm) ** (k0 - 1)
            poly = [K.one, -c, w]
        local[P.key] = TruncatedSeries(poly, r).inverse().coeffs
    out = {}
    for key, _ in enumerate_ideal_keys(F, B):
        v = K.one
        for pk, e in key:
            v = v * local[pk][e]
        out[key] = v
    return out


def random_quadratic_datum(seed, B=60, weight=(2, 2), d=5, coeff_poly=(-5, 0, 1), rational=False):
    """A synthetic level-1, trivial-character datum over Q(sqrt d) with random
    prime eigenvalues in K = Q[x]/(coeff_poly)."""
    rng = random.Random(seed)
    F = field(d)
    K = NumberField(list(coeff_poly))
    chi = trivial_character(F)
    vals = {}
    for P in primes_up_to(F, B):
        a = rng.randint(-6, 6)
        b = 0 if rational else rng.randint(-3, 3)
        vals[P.key] = K([a, b] + [0] * (K.degree - 2))
    coeffs = expand_prime_data(F, weight, FractionalIdeal.unit(F), chi, K, vals, B)
    return HilbertNewformData(F, weight, FractionalIdeal.unit(F), chi, K, coeffs, B,
                              f"synthetic-{seed}"), vals


@pytest.fixture(scope="session")
def delta100():
    return delta_form(100)


@pytest.fixture(scope="session")
def delta10k():
    return delta_form(10000)


@pytest.fixture(autouse=True)
def _test_precision():
    # comparisons in the tests happen at 200 bits; the library sets its own
    # working precision internally
    with mpmath.workprec(200):
        yield
