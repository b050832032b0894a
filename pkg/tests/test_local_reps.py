from fractions import Fraction
from itertools import product

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hmfarith.errors import InvariantViolation, WeightOrder
from hmfarith.local_reps import (ArchLocalRep, DepthlessOther, RamifiedPSOneUnramified,
                                 SteinbergUnramifiedTwist, UnramifiedPS, arch_L_factor,
                                 archimedean_classification, delta_matrix, gl1_branching,
                                 hecke_cosets, kirillov_new_value, local_L_polynomial,
                                 spherical_hecke_eigenvalue, zeta_identity_holds,
                                 zeta_newvector_series)
from hmfarith.numfield import NumberField
from hmfarith.radical import Radical
from hmfarith.series import TruncatedSeries

R = Radical.const
nonzero_q = st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(lambda x: x != 0)
prime_powers = st.sampled_from([2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27, 49])


def sqrt(n, c=1):
    return Radical.sqrt(n, c)


# -- Kirillov values -------------------------------------------------------------------


def test_kirillov_examples():
    assert kirillov_new_value(UnramifiedPS(5, 1, 1), 2) == R(Fraction(3, 5))
    assert kirillov_new_value(SteinbergUnramifiedTwist(7, 1), 1) == R(Fraction(1, 7))
    other = DepthlessOther(7, 3)
    assert kirillov_new_value(other, 1) == R(0)
    assert kirillov_new_value(other, 0) == R(1)
    for rep in (UnramifiedPS(5, 2, 3), RamifiedPSOneUnramified(5, 2), SteinbergUnramifiedTwist(5, 2)):
        assert kirillov_new_value(rep, -1).is_zero()


def test_kirillov_half_powers_are_formal():
    v = kirillov_new_value(UnramifiedPS(3, 1, 1), 1)
    assert v == sqrt(3, Fraction(2, 3))          # 2 * 3^{-1/2}
    assert not v.is_const()


# -- L polynomials -----------------------------------------------------------------------


def test_local_L_polynomials():
    a, b = Fraction(2), Fraction(-1, 3)
    L = local_L_polynomial(UnramifiedPS(5, a, b))
    assert L.poly == (R(1), R(-(a + b)), R(a * b))
    assert local_L_polynomial(DepthlessOther(5, 4)).poly == (R(1),)
    c = Fraction(3, 2)
    St = local_L_polynomial(SteinbergUnramifiedTwist(7, c))
    assert St.poly[1] == -sqrt(7, c / 7)         # -c q^{-1/2}
    assert local_L_polynomial(RamifiedPSOneUnramified(5, c)).poly == (R(1), R(-c))
    for rep in (UnramifiedPS(5, a, b), DepthlessOther(5, 4), SteinbergUnramifiedTwist(7, c)):
        L = local_L_polynomial(rep)
        assert L.poly[0] == R(1) and L.degree() <= 2


def test_L_factor_numeric_value():
    L = local_L_polynomial(UnramifiedPS(3, 1, 1))
    with mpmath.workprec(100):
        assert abs(L.evaluate(2) - 1 / (1 - mpmath.mpf(1) / 9) ** 2) < mpmath.mpf(10) ** -25


# -- zeta series -------------------------------------------------------------------------


def test_zeta_series_examples():
    a, b = Fraction(2), Fraction(5, 3)
    Z = zeta_newvector_series(UnramifiedPS(5, a, b), 3)
    expect = [1, a + b, a * a + a * b + b * b, a ** 3 + a * a * b + a * b * b + b ** 3]
    assert [c for c in Z.coeffs] == [R(x) for x in expect]
    assert zeta_newvector_series(DepthlessOther(5, 2), 5) == TruncatedSeries([R(1)], 5)
    Z = zeta_newvector_series(SteinbergUnramifiedTwist(5, 1), 2)
    assert Z.coeffs == [R(1), sqrt(5, Fraction(1, 5)), R(Fraction(1, 5))]


def test_zeta_series_matches_polynomial_division():
    # 1/((1 - aX)(1 - bX)) by long division in sympy
    X = sympy.Symbol("X")
    a, b = sympy.Rational(3, 2), sympy.Rational(-2, 5)
    ser = sympy.series(1 / ((1 - a * X) * (1 - b * X)), X, 0, 9).removeO()
    ref = [Fraction(str(ser.coeff(X, m))) for m in range(9)]
    Z = zeta_newvector_series(UnramifiedPS(7, Fraction(3, 2), Fraction(-2, 5)), 8)
    assert Z.coeffs == [R(x) for x in ref]


def test_zeta_series_requires_positive_order():
    with pytest.raises(ValueError):
        zeta_newvector_series(UnramifiedPS(5, 1, 1), 0)


def test_series_text_form():
    Z = zeta_newvector_series(UnramifiedPS(3, 1, 1), 3)
    assert Z.to_str() == "1 + 2*X + 3*X^2 + 4*X^3 + O(X^4)"
    P = local_L_polynomial(UnramifiedPS(3, 1, 1)).series(2)
    assert P.to_str() == "1 - 2*X + 1*X^2 + O(X^3)"


@settings(max_examples=200, deadline=None)
@given(q=prime_powers, a=nonzero_q, b=nonzero_q)
def test_zeta_identity_unramified(q, a, b):
    assert zeta_identity_holds(UnramifiedPS(q, a, b), 30)


@settings(max_examples=200, deadline=None)
@given(q=prime_powers, a=nonzero_q, c=st.integers(1, 4))
def test_zeta_identity_ramified_ps(q, a, c):
    assert zeta_identity_holds(RamifiedPSOneUnramified(q, a, c), 30)


@settings(max_examples=200, deadline=None)
@given(q=prime_powers, a=nonzero_q)
def test_zeta_identity_steinberg(q, a):
    assert zeta_identity_holds(SteinbergUnramifiedTwist(q, a), 30)


@settings(max_examples=200, deadline=None)
@given(q=prime_powers, c=st.integers(2, 6))
def test_zeta_identity_depthless(q, c):
    assert zeta_identity_holds(DepthlessOther(q, c), 30)


def test_zeta_identity_with_radical_and_field_parameters():
    K = NumberField([-5, 0, 1])
    s5 = K.gen
    # Satake values q^{-1/2}(1 +- sqrt5)/2 style parameters mixing both kinds of roots
    a = sqrt(11, (1 + s5) / 2 / 11)
    b = sqrt(11, (1 - s5) / 2 / 11)
    assert zeta_identity_holds(UnramifiedPS(11, a, b), 20)
    assert zeta_identity_holds(SteinbergUnramifiedTwist(3, K([1, 1])), 20)


def test_invariants_of_representations():
    with pytest.raises(InvariantViolation):
        UnramifiedPS(5, 0, 1)
    with pytest.raises(InvariantViolation):
        RamifiedPSOneUnramified(5, 1, 0)
    with pytest.raises(InvariantViolation):
        DepthlessOther(5, 1)
    with pytest.raises(InvariantViolation):
        SteinbergUnramifiedTwist(5, 1, 2)
    with pytest.raises(InvariantViolation):
        ArchLocalRep(-1)


def test_trace_det_presentation_agrees_with_satake_values():
    u = UnramifiedPS(5, Fraction(2), Fraction(3))
    v = UnramifiedPS(5, trace=R(5), det=R(6))
    assert zeta_newvector_series(u, 10) == zeta_newvector_series(v, 10)


# -- series ring -------------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(c=st.lists(st.fractions(max_denominator=9), min_size=1, max_size=8).filter(lambda v: v[0] != 0))
def test_series_inverse(c):
    S = TruncatedSeries(c, 10)
    assert (S * S.inverse()).is_one()


# -- Hecke cosets ------------------------------------------------------------------------


def test_hecke_cosets_count():
    for q in (2, 3, 5, 9):
        assert len(hecke_cosets(q)) == q + 1


def test_spherical_eigenvalue_examples():
    assert spherical_hecke_eigenvalue(1, 1, 7) == sqrt(7, 2)
    a = Fraction(3, 4)
    assert spherical_hecke_eigenvalue(a, 1 / a, 5) == sqrt(5, a + 1 / a)


@settings(max_examples=100, deadline=None)
@given(q=prime_powers, a=nonzero_q, b=nonzero_q)
def test_spherical_eigenvalue_is_closed_form(q, a, b):
    # the function itself asserts the coset sum equals the closed form
    assert spherical_hecke_eigenvalue(a, b, q) == sqrt(q) * (R(a) + R(b))


# -- archimedean ---------------------------------------------------------------------


def test_arch_factor_shifts():
    for k in (2, 5, 12):
        assert arch_L_factor(ArchLocalRep(k - 1)).shifts == (Fraction(k - 1, 2),)
    assert arch_L_factor(ArchLocalRep(3, Fraction(1, 2))).shifts == (Fraction(2),)


def test_arch_factor_value_at_one():
    with mpmath.workprec(120):
        ref = (2 * mpmath.pi) ** mpmath.mpf(-1.5) * mpmath.gamma(1.5)
        v = arch_L_factor(ArchLocalRep(1)).evaluate(1, 120)
        assert abs(v - ref) < mpmath.mpf(10) ** -30
        v2 = arch_L_factor(ArchLocalRep(1), drop_two=False).evaluate(1, 120)
        assert abs(v2 - 2 * ref) < mpmath.mpf(10) ** -30


def test_classification_examples():
    c = archimedean_classification([ArchLocalRep(1), ArchLocalRep(1)])
    assert c["algebraic"] and c["regular"]
    assert c["infinity_type"] == [(0, -1), (0, -1)]
    c = archimedean_classification([ArchLocalRep(2), ArchLocalRep(2)])
    assert not c["algebraic"] and c["half_twist_algebraic"]
    c = archimedean_classification([ArchLocalRep(1), ArchLocalRep(2)])
    assert not c["algebraic"] and not c["half_twist_algebraic"]


def _weights(n, hi):
    return product(range(1, hi + 1), repeat=n)


def test_classification_parity_trichotomy():
    for n in range(1, 5):
        for k in _weights(n, 21 if n < 4 else 9):
            c = archimedean_classification([ArchLocalRep(kj - 1) for kj in k])
            even = all(kj % 2 == 0 for kj in k)
            odd = all(kj % 2 == 1 for kj in k)
            assert c["algebraic"] == even
            assert c["half_twist_algebraic"] == odd
            assert c["regular"] == all(kj >= 2 for kj in k)


# -- delta matrix and branching --------------------------------------------------------


def test_delta_matrix_examples():
    M, _ = delta_matrix(1, -1)
    assert M == sympy.Matrix([[0, -1], [-1, 0]])
    M, _ = delta_matrix(0, 0)
    assert M == sympy.Matrix([[0, 1], [1, 0]])
    assert delta_matrix(3, 1)[0] == delta_matrix(1, -1)[0]
    with pytest.raises(WeightOrder):
        delta_matrix(0, 1)


def test_delta_eigenvalues():
    for d in range(0, 21):
        M, vecs = delta_matrix(d, 0)
        assert set(M.eigenvals()) == {1, -1}
        assert M * M == sympy.eye(2)
        assert [s for s, _ in vecs] == [1, -1]


def test_branching_examples():
    assert gl1_branching(1, -1) == {"nonzero": True, "projection_index": 1}
    assert gl1_branching(2, 1) == {"nonzero": False, "projection_index": None}
    assert gl1_branching(0, 0) == {"nonzero": True, "projection_index": 0}
    with pytest.raises(WeightOrder):
        gl1_branching(-1, 0)


def test_branching_criterion():
    for n1 in range(-10, 11):
        for n2 in range(n1 - 20, n1 + 1):
            r = gl1_branching(n1, n2)
            assert r["nonzero"] == (n1 >= 0 >= n2)
            if r["nonzero"]:
                assert r["projection_index"] == n1
