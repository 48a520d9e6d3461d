import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mwcycles.errors import LiteralError, ZeroSymbolEntry
from mwcycles.finite_field import FFElem, Poly, finite_field_of_order, irreducibles_up_to
from mwcycles.function_field import RationalFunctionField
from mwcycles.gw import epsilon_coefficients
from mwcycles.kmw import (MILNOR, MW, KMWElem, KValue, angle_elem, constant, eta, evaluate, lift,
                          normalize_at, residue, residue_closed_form, symbol, times_eta, times_symbol)
from mwcycles.literals import field_spec, parse_field, parse_place, parse_symbol_literal
from mwcycles.number_field import QQ, quadratic_field
from mwcycles.places import InfinityPlace, PolyPlace, RationalPlace

from oracles import legendre, p_adic

QS = (2, 3, 4, 5, 7, 9)


def units(F):
    return [FFElem(F, u) for u in F.units()]


@pytest.mark.parametrize("q", QS)
def test_steinberg_and_friends(q):
    F = finite_field_of_order(q)
    for a in units(F):
        assert evaluate(symbol(F, a, -a)).is_zero()
        if not (F.one - a).is_zero():
            assert evaluate(symbol(F, a, F.one - a)).is_zero()
        for b in units(F)[:5]:
            lhs = evaluate(symbol(F, a * b))
            rhs = evaluate(symbol(F, a) + symbol(F, b) + eta(F) * symbol(F, a, b))
            assert lhs == rhs


@pytest.mark.parametrize("q", QS)
def test_eta_h_is_zero(q):
    F = finite_field_of_order(q)
    h = 2 + eta(F) * symbol(F, -F.one)
    assert evaluate(eta(F) * h).is_zero()
    for a in units(F)[:4]:
        # [a] eta = eta [a] on values
        assert evaluate(symbol(F, a) * eta(F)) == evaluate(eta(F) * symbol(F, a))


@pytest.mark.parametrize("q", (3, 5, 9))
def test_lift_evaluate_roundtrip(q):
    F = finite_field_of_order(q)
    for n in (-2, -1, 0, 1, 2):
        for x in (symbol(F, *units(F)[:max(n, 0)]) if n > 0 else None, eta(F, -n) if n < 0 else None):
            if x is None:
                continue
            v = evaluate(x)
            assert evaluate(lift(v)) == v


def test_values_in_milnor_mode():
    F = finite_field_of_order(5)
    assert evaluate(angle_elem(F, 2), MILNOR) == KValue(F, 0, MILNOR, (1,))
    assert evaluate(eta(F), MILNOR).is_zero()


@pytest.mark.parametrize("q", (3, 5, 7))
def test_module_actions_agree_with_products(q):
    F = finite_field_of_order(q)
    for a in units(F):
        for b in units(F):
            v = evaluate(angle_elem(F, b))
            assert times_symbol(a, v) == evaluate(symbol(F, a) * angle_elem(F, b))
            assert times_eta(v) == evaluate(eta(F) * angle_elem(F, b))


def test_zero_entries_rejected():
    with pytest.raises(ZeroSymbolEntry):
        symbol(QQ, 0)


def test_unit_entries_drop():
    assert symbol(QQ, 1).is_zero()
    assert (symbol(QQ, 2) * 0).is_zero()


# residues -------------------------------------------------------------------


def q_residue_oracle(p, u):
    """(rank, disc) of v_eps <u p^-v> in GW(F_p), p odd."""
    v, w = p_adic(u, p)
    unit = w.numerator * pow(w.denominator, -1, p) % p
    a, b = epsilon_coefficients(v)
    chi = (1 - legendre(unit, p)) // 2
    chi_minus = (1 - legendre(-unit, p)) // 2
    return a + b, (a * chi + b * chi_minus) % 2


@settings(max_examples=200, deadline=None)
@given(st.sampled_from((3, 5, 7, 11, 13)), st.integers(-6, 6),
       st.integers(1, 400), st.integers(1, 400), st.booleans())
def test_rational_residue_against_padic_oracle(p, e, n, d, neg):
    u = Fraction(p) ** e * Fraction(n, d) * (-1 if neg else 1)
    r = evaluate(residue(RationalPlace(p), symbol(QQ, u))).gw()
    assert (r.rank, r.disc) == q_residue_oracle(p, u)


def test_residue_of_fifty_at_five():
    r = evaluate(residue(RationalPlace(5), symbol(QQ, 50)))
    assert r.gw().rank == 2 and r.gw().disc == 0


def random_function(rng, T):
    F = T.base
    f = T.const(FFElem(F, rng.choice(F.units())))
    for _ in range(rng.randint(1, 3)):
        deg = rng.randint(1, 3)
        g = Poly(F, [rng.choice(F.elements()) for _ in range(deg)] + [rng.choice(F.units())])
        f = f * T(g) ** rng.choice((1, 2, -1, 3))
    return f


def test_engine_matches_closed_form_on_random_symbols():
    rng = random.Random(4)
    count = 0
    for q in QS:
        T = RationalFunctionField(finite_field_of_order(q))
        places = [PolyPlace(T, g) for g in irreducibles_up_to(T.base, 2)] + [InfinityPlace(T)]
        for _ in range(40):
            u = random_function(rng, T)
            v = rng.choice(places)
            assert evaluate(residue(v, symbol(T, u))).gw() == residue_closed_form(v, u)
            count += 1
    for p in (2, 3, 5, 7):
        for _ in range(40):
            u = Fraction(rng.randint(1, 10**4), rng.randint(1, 10**4)) * rng.choice((1, -1))
            v = RationalPlace(p)
            assert evaluate(residue(v, symbol(QQ, u))).gw() == residue_closed_form(v, u)
            count += 1
    assert count >= 400


def test_normal_form_puts_uniformizer_first():
    T = RationalFunctionField(finite_field_of_order(5))
    v = PolyPlace(T, Poly(T.base, (0, 1)))
    x = symbol(T, T.t + 1, T.t ** 2 * 3)
    for c, k, syms in normalize_at(v, x):
        assert sum(1 for s in syms if s == T.t) <= 1
        assert all(v.valuation(s) == 0 for s in syms[1:])


def test_residue_over_quadratic_field():
    K = quadratic_field(-5)
    v = parse_place(K, "3")
    x = parse_symbol_literal("[3]", K)
    r = evaluate(residue(v, x))
    assert r.gw().rank == 1


def test_d_minus_eight_is_minus_two():
    assert quadratic_field(-8) == quadratic_field(-2)


# literals -------------------------------------------------------------------


@pytest.mark.parametrize("spec,text", [
    ("Q", "3*[2] - eta*[5,7]"),
    ("Q", "[1/2]"),
    ("ff:5", "[t^2+1,t] + 2*[t,t+1]"),
    ("ff:9", "[a*t+1]"),
    ("quad:-5", "[1+w]"),
    ("Q", "eta^2*[3,5,7]"),
])
def test_literal_roundtrip(spec, text):
    F = parse_field(spec)
    x = parse_symbol_literal(text, F)
    assert parse_symbol_literal(str(x), F) == x
    assert field_spec(F) == spec


def test_angle_literal():
    x = parse_symbol_literal("<3>", QQ)
    assert x == constant(QQ, 1) + eta(QQ) * symbol(QQ, 3)


@pytest.mark.parametrize("text", ["", "[2", "3*[x]", "[2] + [3,5]", "foo"])
def test_bad_literals(text):
    with pytest.raises(LiteralError):
        parse_symbol_literal(text, QQ)


def test_bad_place():
    T = parse_field("ff:5")
    with pytest.raises(LiteralError):
        parse_place(T, "t^2-1")
