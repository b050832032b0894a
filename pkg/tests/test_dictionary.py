from fractions import Fraction
from math import factorial

import pytest

import oracles
from conftest import delta_form, expand_prime_data, field, random_quadratic_datum, trivial_character
from hmfarith.dictionary import (GaloisAction, HilbertNewformData, RamifiedPlaceholder,
                                 archimedean_constants, attach_representation, classify,
                                 cohomological_weight, d_infinity, equivariance_check,
                                 galois_conjugate, rationality_field, validate_newform_data)
from hmfarith.errors import (InvariantViolation, NegativeFactorial, OddWeightUntwisted,
                             ParityViolation, ValidationFailed)
from hmfarith.ideals import FractionalIdeal, enumerate_ideal_keys, primes_up_to
from hmfarith.local_reps import ArchLocalRep, UnramifiedPS, local_L_polynomial
from hmfarith.lseries import coefficients_from_euler
from hmfarith.numfield import NumberField, rational_field
from hmfarith.radical import Radical

def level11_form(B=50):
    F = field(1)
    K = rational_field()
    level = FractionalIdeal.principal(F(11))
    chi = trivial_character(F, level)
    vals = {P.key: K(oracles.e11_ap(P.p)) for P in primes_up_to(F, B)}
    coeffs = expand_prime_data(F, (2,), level, chi, K, vals, B)
    return HilbertNewformData(F, (2,), level, chi, K, coeffs, B, "11a")


# -- validation ------------------------------------------------------------------


def test_delta_table_is_consistent(delta100):
    key4 = [k for k, N in enumerate_ideal_keys(delta100.field, 4) if N == 4][0]
    assert delta100.C(key4) == delta100.coeff_field(-1472)
    rep = validate_newform_data(delta100)
    assert rep.ok and rep.checked > 50


def test_corrupted_entry_is_flagged():
    f = delta_form(100)
    F = f.field
    key6 = [k for k, N in enumerate_ideal_keys(F, 6) if N == 6][0]
    bad = dict(f.coeffs)
    bad[key6] = bad[key6] + 1
    g = HilbertNewformData(F, f.weight, f.level, f.character, f.coeff_field, bad, 100)
    rep = validate_newform_data(g)
    assert not rep.ok
    assert rep.failures == ["multiplicativity: C(6) != C(2)*C(3)"]
    with pytest.raises(ValidationFailed):
        attach_representation(g)


def test_corrupted_prime_power_is_flagged():
    f = delta_form(100)
    key8 = [k for k, N in enumerate_ideal_keys(f.field, 8) if N == 8][0]
    bad = dict(f.coeffs)
    bad[key8] = f.coeff_field(0)
    g = HilbertNewformData(f.field, f.weight, f.level, f.character, f.coeff_field, bad, 100)
    fails = validate_newform_data(g).failures
    # C(8) is reported first; later entries are the checks that read C(8)
    assert fails[0] == "Hecke recursion: C(8)"
    assert all("C(8)" in msg or "C(16)" in msg or "C(32)" in msg or "C(64)" in msg for msg in fails)


def test_empty_table_only_needs_the_unit_ideal():
    F = field(5)
    f = HilbertNewformData(F, (2, 2), FractionalIdeal.unit(F), trivial_character(F),
                           rational_field(), {(): 1}, 1)
    assert validate_newform_data(f).ok
    g = HilbertNewformData(F, (2, 2), FractionalIdeal.unit(F), trivial_character(F),
                           rational_field(), {(): 2}, 1)
    assert validate_newform_data(g).failures == ["C(O) != 1"]


def test_weight_length_must_match_degree():
    F = field(5)
    with pytest.raises(InvariantViolation):
        HilbertNewformData(F, (2,), FractionalIdeal.unit(F), trivial_character(F),
                           rational_field(), {(): 1})


@pytest.mark.parametrize("seed", range(10))
def test_synthetic_data_validates(seed):
    f, _ = random_quadratic_datum(seed)
    assert validate_newform_data(f).ok


def test_level_recursion_is_used_at_bad_primes():
    f = level11_form(150)
    assert validate_newform_data(f).ok
    P11 = [P for P in primes_up_to(f.field, 11) if P.p == 11][0]
    assert f.C(((P11.key, 1),)) == f.coeff_field(1)
    assert f.C(((P11.key, 2),)) == f.coeff_field(1)       # a_121 = a_11^2
    bad = dict(f.coeffs)
    bad[((P11.key, 2),)] = f.coeff_field(1 - 11)           # what the good-prime recursion gives
    g = HilbertNewformData(f.field, f.weight, f.level, f.character, f.coeff_field, bad, 150)
    assert validate_newform_data(g).failures == ["recursion at a prime dividing the level: C(121)"]


# -- attaching representations ----------------------------------------------------------


def test_delta_satake_invariants(delta100):
    rep = attach_representation(delta100)
    pk2 = [P.key for P in primes_up_to(delta100.field, 2)][0]
    tr, det = rep.satake_invariants(pk2)
    # alpha + beta = -24 / 2^{11/2} = -(3/8) sqrt 2
    assert tr == Radical.sqrt(2, Fraction(-3, 8))
    assert det == Radical.const(1)
    assert [r.l for r in rep.arch] == [11]
    for pk, loc in rep.local.items():
        assert isinstance(loc, UnramifiedPS)


def test_placeholder_at_level_primes():
    f = level11_form()
    rep = attach_representation(f)
    P11 = [P for P in primes_up_to(f.field, 11) if P.p == 11][0]
    loc = rep.local[P11.key]
    assert isinstance(loc, RamifiedPlaceholder)
    assert loc.conductor_exponent == 1
    L = local_L_polynomial(loc)
    assert L.degree() <= 1
    # 1 - 11^{-1/2} a_11 X
    assert L.poly[1] == -Radical.sqrt(11, Fraction(1, 11))
    for pk, loc in rep.local.items():
        if pk != P11.key:
            assert isinstance(loc, UnramifiedPS)


def test_parallel_weight_two_has_D1_at_every_place():
    f, _ = random_quadratic_datum(3)
    rep = attach_representation(f)
    assert rep.arch == [ArchLocalRep(1), ArchLocalRep(1)]


def test_unitary_round_trip():
    for f in (delta_form(100), random_quadratic_datum(5)[0], level11_form()):
        U = coefficients_from_euler(f, f.bound, "unitary")
        for key, N in enumerate_ideal_keys(f.field, f.bound):
            back = U.coeffs[key] * Radical.half_power(N, f.k0 - 1)
            assert back == Radical.const(f.C(key)), key


# -- cohomological weights ----------------------------------------------------------


def test_cohomological_weight_examples():
    mu = cohomological_weight((2, 4), twisted=False)
    assert (mu.pairs, mu.w) == (((0, 0), (1, -1)), 0)
    mu = cohomological_weight((2, 4), twisted=True)
    assert (mu.pairs, mu.w) == (((2, 2), (3, 1)), 4)
    mu = cohomological_weight((3, 3), twisted=True)
    assert (mu.pairs, mu.w) == (((2, 1), (2, 1)), 3)
    with pytest.raises(OddWeightUntwisted):
        cohomological_weight((3, 3), twisted=False)
    with pytest.raises(ParityViolation):
        cohomological_weight((2, 3), twisted=True)


def test_cohomological_weight_is_pure_over_a_box():
    # weight one is not cohomological
    with pytest.raises(InvariantViolation):
        cohomological_weight((1, 1), twisted=True)
    for k1 in range(2, 16):
        for k2 in range(k1, 16, 2):
            for twisted in (True, False):
                if not twisted and k1 % 2:
                    continue
                mu = cohomological_weight((k1, k2), twisted)
                assert len({a + b for a, b in mu.pairs}) == 1
                assert all(a - b == kj - 2 for (a, b), kj in zip(mu.pairs, (k1, k2)))


def test_archimedean_constant_examples():
    assert archimedean_constants(cohomological_weight((2, 2), False)) == {"d_inf": 2, "c": 16}
    assert archimedean_constants(cohomological_weight((4,), False)) == {"d_inf": 2, "c": -8}
    assert archimedean_constants(cohomological_weight((12,), False)) == {"d_inf": 6, "c": -4 * 30240}
    with pytest.raises(NegativeFactorial):
        archimedean_constants(((2, 1),))


def test_archimedean_constant_formula():
    for a in range(0, 8):
        for b in range(-8, 1):
            c = archimedean_constants(((a, b), (a, b)))
            single = 4 * (-1) ** a * factorial(a - b) // factorial(-b)
            assert c["c"] == single * single
            assert c["d_inf"] == d_infinity(((a, b), (a, b))) == 2 * (a + 1)


# -- classification -----------------------------------------------------------------


def test_classify_examples():
    assert classify((2, 2))["algebraic_class"] == "algebraic"
    assert classify((3, 3))["algebraic_class"] == "algebraic after a half twist"
    c = classify((2, 3))
    assert c["algebraic_class"] == "not algebraic under any twist"
    assert not classify((1, 1))["regular"]
    assert classify((3, 5))["algebraic_after_k0_twist"]
    assert classify((12,))["infinity_type"] == [(11, 0)]


# -- Galois action --------------------------------------------------------------------


def _conjugate_by_hand(seed):
    f, vals = random_quadratic_datum(seed)
    K = f.coeff_field
    # sqrt5 -> -sqrt5 on the prime data, then expand independently
    cvals = {k: K([v.coords[0], -v.coords[1]]) for k, v in vals.items()}
    coeffs = expand_prime_data(f.field, f.weight, f.level, f.character, K, cvals, f.bound)
    return f, HilbertNewformData(f.field, f.weight, f.level, f.character, K, coeffs, f.bound)


@pytest.mark.parametrize("seed", range(4))
def test_galois_conjugate_matches_independent_expansion(seed):
    f, g_ref = _conjugate_by_hand(seed)
    sigma = f.coeff_field.automorphism([0, -1])
    g = galois_conjugate(f, sigma)
    assert g.coeffs == g_ref.coeffs


def test_galois_conjugation_is_functorial():
    f, _ = random_quadratic_datum(7)
    K = f.coeff_field
    sigma = GaloisAction(K.automorphism([0, -1]))
    ident = GaloisAction(K.identity())
    assert galois_conjugate(f, ident).coeffs == f.coeffs
    twice = galois_conjugate(galois_conjugate(f, sigma), sigma)
    assert twice.coeffs == f.coeffs
    assert galois_conjugate(f, sigma.compose(sigma)).coeffs == f.coeffs
    assert sigma.compose(ident).sigma == sigma.sigma


def test_equivariance_checks():
    f, g_ref = _conjugate_by_hand(11)
    K = f.coeff_field
    sigma = K.automorphism([0, -1])
    assert equivariance_check(f, K.identity(), 60).ok
    rep = equivariance_check(f, sigma, 60)
    assert rep.ok and len(rep.checked) == len(primes_up_to(f.field, 60))
    assert equivariance_check(f, sigma, 60, conjugate=g_ref).ok


def test_equivariance_names_the_corrupted_prime():
    f, g_ref = _conjugate_by_hand(12)
    sigma = f.coeff_field.automorphism([0, -1])
    P = sorted(primes_up_to(f.field, 60), key=lambda P: P.norm)[3]
    bad = dict(g_ref.coeffs)
    bad[((P.key, 1),)] = bad[((P.key, 1),)] + 1
    g = HilbertNewformData(f.field, f.weight, f.level, f.character, f.coeff_field, bad, f.bound)
    rep = equivariance_check(f, sigma, 60, conjugate=g)
    assert not rep.ok
    assert rep.failures == [f"{f.label_of(((P.key, 1),))}: trace invariant differs"]


def test_equivariance_needs_parity():
    F = field(5)
    f = HilbertNewformData(F, (2, 3), FractionalIdeal.unit(F), trivial_character(F),
                           rational_field(), {(): 1}, 1)
    with pytest.raises(ParityViolation):
        equivariance_check(f, rational_field().identity(), 10)


def test_delta_is_fixed_by_every_automorphism(delta100):
    assert equivariance_check(delta100, delta100.coeff_field.identity(), 100).ok
    # the tau values agree with the independent oracle
    t = oracles.tau(100)
    for key, N in enumerate_ideal_keys(delta100.field, 100):
        assert delta100.C(key) == delta100.coeff_field(t[N])


# -- rationality field ---------------------------------------------------------------


def test_rationality_fields():
    r = rationality_field(delta_form(100), 100)
    assert r["degree"] == 1 and not r["caveat"]
    f, _ = random_quadratic_datum(2)
    r = rationality_field(f, 60)
    assert r["degree"] == 2 and r["is_whole_field"]
    g, _ = random_quadratic_datum(2, rational=True)
    r = rationality_field(g, 60)
    assert r["degree"] == 1 and r["caveat"]


def test_rationality_field_of_a_cubic_coefficient_field():
    K = NumberField([-1, -2, 1, 1])
    f, _ = random_quadratic_datum(4, coeff_poly=(-1, -2, 1, 1))
    r = rationality_field(f, 60)
    assert r["degree"] == 3 and r["primitive"] is not None
    assert f.coeff_field == K
