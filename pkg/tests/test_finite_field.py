import pytest
from hypothesis import given, settings, strategies as st

from mwcycles.errors import NotPrimePower, TooLarge
from mwcycles.finite_field import (FFElem, Poly, factor_poly, finite_field_of_order, first_irreducible,
                                   irreducibles_of_degree, make_finite_field, max_field_order, prime_power)

from oracles import necklace

ORDERS = (2, 3, 4, 5, 7, 8, 9, 25, 27)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms_exhaustive(q):
    F = finite_field_of_order(q)
    els = [FFElem(F, r) for r in F.elements()]
    assert len(els) == q and len(set(els)) == q
    one, zero = F.one, F.zero
    for a in els:
        assert a + zero == a and a * one == a
        assert a - a == zero
        if not a.is_zero():
            assert a * a.inverse() == one
            assert a ** (q - 1) == one
        assert a ** q == a  # Frobenius fixes F_q


@pytest.mark.parametrize("q", (3, 4, 9, 25))
def test_distributivity(q):
    F = finite_field_of_order(q)
    els = [FFElem(F, r) for r in F.elements()][:9]
    for a in els:
        for b in els:
            for c in els[:4]:
                assert a * (b + c) == a * b + a * c


@pytest.mark.parametrize("q", (3, 5, 9, 25, 27))
def test_square_count(q):
    F = finite_field_of_order(q)
    assert sum(1 for u in F.units() if F.is_square_raw(u)) == (q - 1) // 2
    assert not F.is_square_raw(F.nonsquare_raw)


def test_every_element_is_square_in_char_two():
    F = finite_field_of_order(8)
    assert all(F.is_square_raw(u) for u in F.units())


@pytest.mark.parametrize("q,n", [(2, 1), (2, 4), (3, 3), (4, 2), (5, 2), (9, 2)])
def test_irreducible_count_matches_necklace_formula(q, n):
    F = finite_field_of_order(q)
    assert len(irreducibles_of_degree(F, n)) == necklace(q, n)


def test_prime_power():
    assert prime_power(27) == (3, 3)
    for bad in (1, 6, 12, 0, -4):
        with pytest.raises(NotPrimePower):
            prime_power(bad)


def test_field_cap_can_only_be_lowered(monkeypatch):
    monkeypatch.setenv("MWCYCLES_MAX_Q", "100")
    assert max_field_order() == 100
    with pytest.raises(TooLarge):
        finite_field_of_order(121)
    monkeypatch.setenv("MWCYCLES_MAX_Q", str(10**9))
    assert max_field_order() == 10**6


def test_tower_embedding_and_descent():
    F3 = make_finite_field(3)
    F9 = F3.extension(first_irreducible(F3, 2))
    F81 = F9.extension(first_irreducible(F9, 2))
    assert F9.is_subfield_of(F81)
    for r in F9.elements():
        up = F81.embed(r, F9)
        assert F81.descend(up, F9) == r
    # embedding is a ring map
    a, b = F9.gen_raw, F9.nonsquare_raw
    assert F81.embed(F9.mul(a, b), F9) == F81.mul(F81.embed(a, F9), F81.embed(b, F9))


def test_trace_and_norm_land_in_prime_field():
    F = finite_field_of_order(27)
    for r in F.units()[:10]:
        x = FFElem(F, r)
        n = x.norm()
        assert n.field == F.prime_field
        assert F.embed(n.raw, n.field) == (x * x ** 3 * x ** 9).raw
        t = x.trace()
        assert F.embed(t.raw, t.field) == (x + x ** 3 + x ** 9).raw


@settings(max_examples=40, deadline=None)
@given(st.sampled_from((2, 3, 4, 5, 9)), st.lists(st.integers(0, 100), min_size=2, max_size=6))
def test_factorization_multiplies_back(q, seeds):
    F = finite_field_of_order(q)
    els = F.elements()
    coeffs = [els[s % q] for s in seeds]
    coeffs[-1] = F.one_raw
    f = Poly(F, coeffs)
    if f.degree < 1:
        return
    lc, parts = factor_poly(f)
    g = Poly(F, (lc,))
    for h, e in parts:
        assert h.is_monic() and h.is_irreducible()
        for _ in range(e):
            g = g * h
    assert g == f


def test_poly_division():
    F = finite_field_of_order(5)
    f = Poly(F, (1, 2, 3, 1))
    g = Poly(F, (2, 1))
    q, r = divmod(f, g)
    assert q * g + r == f and r.degree < g.degree
