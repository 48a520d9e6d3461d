import pytest
from hypothesis import given, settings, strategies as st

from mwcycles.abelian import iso_eq
from mwcycles.classgroup import class_group, factor_element, principal_search
from mwcycles.number_field import NumElem, QuadraticField, quadratic_field, split_prime, valuation_at_ideal

from oracles import REAL_CLASS_NUMBERS, reduced_form_count

IMAGINARY = (-1, -2, -3, -5, -6, -7, -14, -15, -21, -23, -26, -31, -39, -47, -55, -65, -105)


@pytest.mark.parametrize("d", IMAGINARY)
def test_class_number_against_reduced_forms(d):
    K = QuadraticField(d)
    G, S, rels = class_group(K)
    assert G.invariants().order == reduced_form_count(d)
    for r in rels:  # every relation is witnessed by its element
        div = factor_element(K, r.witness)
        assert tuple(div.get(P, 0) for P in S) == r.row


@pytest.mark.parametrize("d,h", sorted(REAL_CLASS_NUMBERS.items()))
def test_real_class_numbers(d, h):
    assert class_group(QuadraticField(d))[0].invariants().order == h


def test_known_group_structures():
    assert str(class_group(QuadraticField(-23))[0].invariants()) == "Z/3"
    assert str(class_group(QuadraticField(-21))[0].invariants()) == "Z/2 + Z/2"
    assert iso_eq(class_group(QuadraticField(-14))[0].invariants(),
                  class_group(QuadraticField(-39))[0].invariants())


@pytest.mark.parametrize("d", (-5, -23, 10, 13))
def test_prime_splitting_norms(d):
    K = QuadraticField(d)
    for p in (2, 3, 5, 7, 11, 13):
        ideals = split_prime(K, p)
        norms = sorted(P.norm for P in ideals)
        assert norms in ([p, p], [p * p], [p])  # split, inert, ramified
        assert valuation_at_ideal(ideals[0], NumElem(K, p, 0)) >= 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from((-5, -23, -1, 2, 10)), st.integers(-30, 30), st.integers(-30, 30),
       st.integers(-30, 30), st.integers(-30, 30))
def test_valuations_are_additive(d, a, b, c, e):
    K = QuadraticField(d)
    x, y = NumElem(K, a, b), NumElem(K, c, e)
    if x.is_zero() or y.is_zero():
        return
    for p in (2, 3, 5):
        for P in split_prime(K, p):
            assert valuation_at_ideal(P, x * y) == valuation_at_ideal(P, x) + valuation_at_ideal(P, y)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from((-5, -7, 3, 13)), st.integers(-20, 20), st.integers(-20, 20))
def test_norm_is_multiplicative(d, a, b):
    K = QuadraticField(d)
    x = NumElem(K, a, b)
    y = NumElem(K, b + 1, a)
    assert (x * y).norm() == x.norm() * y.norm()


def test_principal_search():
    K = QuadraticField(-5)
    P2 = split_prime(K, 2)[0]
    assert principal_search(K, {P2: 1}) is None  # the non-principal prime above 2
    alpha = principal_search(K, {P2: 2})
    assert alpha is not None and valuation_at_ideal(P2, alpha) == 2
    with pytest.raises(ValueError):
        principal_search(K, {P2: -1})


def test_square_parameters_rejected():
    with pytest.raises(ValueError):
        quadratic_field(4)
    with pytest.raises(ValueError):
        QuadraticField(12)
