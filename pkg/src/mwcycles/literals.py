"""Text syntax for fields, places, field elements and symbol literals.

Fields: ``Q``, ``quad:D`` (``Q(sqrt D)``), ``ff:Q`` (``F_Q(t)``), ``fq:Q``
(the finite field itself).  Elements use the field's natural notation:
``6/5``, ``1+2*w``, ``(t^2+1)/(t+2)``; in ``F_{p^f}`` the generator is ``a``.

>>> from mwcycles.number_field import QQ
>>> print(parse_symbol_literal("3*[2] - eta*[5,7]", QQ))
3*[2] - eta*[5,7]
"""
from __future__ import annotations

import re
from fractions import Fraction

import sympy

from .errors import LiteralError
from .finite_field import FFElem, FiniteField, Poly, finite_field_of_order
from .function_field import RatFunc, RationalFunctionField
from .kmw import KMWElem, angle_elem
from .number_field import QQ, QuadraticField, split_prime
from .places import InfinityPlace, IdealPlace, PolyPlace, RationalPlace

_t, _w, _a = sympy.symbols("t w a")


def parse_field(spec):
    spec = spec.strip()
    if spec == "Q":
        return QQ
    kind, _, arg = spec.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise LiteralError(f"bad field spec {spec!r}") from None
    if kind == "quad":
        try:
            return QuadraticField(n)
        except ValueError as exc:
            raise LiteralError(str(exc)) from None
    if kind == "ff":
        return RationalFunctionField(finite_field_of_order(n))
    if kind == "fq":
        return finite_field_of_order(n)
    raise LiteralError(f"bad field spec {spec!r}")


def field_spec(F):
    """Inverse of :func:`parse_field`."""
    if F == QQ:
        return "Q"
    if isinstance(F, QuadraticField):
        return f"quad:{F.d}"
    if isinstance(F, RationalFunctionField):
        return f"ff:{F.base.order}"
    return f"fq:{F.order}"


def _sympify(text, names):
    text = text.replace("^", "**")
    if re.search(r"[^0-9a-z+\-*/() .]", text):
        raise LiteralError(f"unexpected character in {text!r}")
    local = {n: s for n, s in (("t", _t), ("w", _w), ("a", _a)) if n in names}
    for word in re.findall(r"[a-z]+", text):
        if word not in local:
            raise LiteralError(f"unknown name {word!r} in {text!r}")
    try:
        return sympy.sympify(text, locals=local, rational=True)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise LiteralError(f"cannot parse {text!r}") from exc


def _ff_from_poly_in_a(F, poly_dict, x_index=None):
    """Raw of ``F`` from ``{exponent of a: integer coefficient}``."""
    gen = F.gen_raw if F.base is not None else F.one_raw
    acc = F.zero_raw
    for e, c in poly_dict.items():
        if Fraction(c).denominator != 1:
            c = Fraction(c)
            c = c.numerator * pow(c.denominator, -1, F.p)
        acc = F.add(acc, F.mul(F.from_int(int(c)), F.power(gen, e)))
    return acc


def _ratfunc_parts(expr, gens):
    num, den = sympy.fraction(sympy.together(expr))
    try:
        return sympy.Poly(num, *gens), sympy.Poly(den, *gens)
    except sympy.PolynomialError as exc:
        raise LiteralError(f"not a rational expression: {expr}") from exc


def _ff_poly(F, P):
    """Sympy polynomial in ``(t, a)`` to a :class:`Poly` over ``F``."""
    coeffs = {}
    for (i, j), c in P.terms():
        coeffs.setdefault(i, {})
        coeffs[i][j] = coeffs[i].get(j, 0) + c
    if F.base is None and any(j for d in coeffs.values() for j in d):
        raise LiteralError("the generator 'a' only exists in non-prime fields")
    deg = max(coeffs) if coeffs else -1
    return Poly(F, [_ff_from_poly_in_a(F, coeffs.get(i, {})) for i in range(deg + 1)])


def parse_ff_element(F, text):
    """Element of a finite field; ``a`` is the generator of the top extension."""
    expr = _sympify(text, {"a"})
    num, den = _ratfunc_parts(expr, (_t, _a))
    n = _ff_poly(F, num)
    d = _ff_poly(F, den)
    if n.degree > 0 or d.degree > 0:
        raise LiteralError(f"{text!r} is not a constant")
    if d.is_zero():
        raise LiteralError("division by zero")
    nr = n.coeffs[0] if n.coeffs else F.zero_raw
    return FFElem(F, F.mul(nr, F.inv(d.coeffs[0])))


def parse_residue_element(kappa, text, var="t"):
    """Element of a residue field ``F[t]/(g)`` written as a polynomial in ``t``."""
    if kappa.base is None:
        return parse_ff_element(kappa, text)
    expr = _sympify(text, {"t", "a"})
    num, den = _ratfunc_parts(expr, (_t, _a))
    B = kappa.base
    pn, pd = _ff_poly(B, num), _ff_poly(B, den)
    if pd.is_zero():
        raise LiteralError("division by zero")
    xn = pn(kappa.gen_raw, field=kappa)
    xd = pd(kappa.gen_raw, field=kappa)
    return FFElem(kappa, kappa.mul(xn, kappa.inv(xd)))


def parse_element(F, text):
    """Element of ``F`` in its literal syntax."""
    text = text.strip()
    if not text:
        raise LiteralError("empty element")
    if F == QQ:
        expr = _sympify(text, set())
        if not expr.is_Rational:
            raise LiteralError(f"{text!r} is not rational")
        return Fraction(int(expr.p), int(expr.q))
    if isinstance(F, QuadraticField):
        expr = sympy.expand(_sympify(text, {"w"}))
        num, den = sympy.fraction(sympy.together(expr))
        P = sympy.Poly(num, _w)
        dd = sympy.Poly(den, _w)
        if dd.degree() > 0:
            num_e = _quad_from_poly(F, P)
            den_e = _quad_from_poly(F, dd)
            return num_e / den_e
        return _quad_from_poly(F, P) / int(dd.as_expr())
    if isinstance(F, RationalFunctionField):
        expr = _sympify(text, {"t", "a"})
        num, den = _ratfunc_parts(expr, (_t, _a))
        n, d = _ff_poly(F.base, num), _ff_poly(F.base, den)
        if d.is_zero():
            raise LiteralError("division by zero")
        return RatFunc(F, n, d)
    if isinstance(F, FiniteField):
        if F.base is not None and F.var == "t":
            return parse_residue_element(F, text)
        return parse_ff_element(F, text)
    raise LiteralError(f"unsupported field {F!r}")


def _quad_from_poly(F, P):
    # reduce powers of w with w^2 = trace*w - norm
    x = F(0)
    for (e,), c in P.terms():
        x = x + F.omega ** e * Fraction(int(c.p), int(c.q))
    return x


def _split_top(text, seps):
    """Split at separator characters outside brackets and parentheses."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([<":
            depth += 1
        elif ch in ")]>":
            depth -= 1
        if depth == 0 and ch in seps:
            parts.append(cur)
            cur = ch if ch in "+-" else ""
            continue
        cur += ch
    parts.append(cur)
    return parts


_TERM = re.compile(r"^(?P<coef>\d+)?\*?(?P<eta>eta(\^(?P<k>\d+))?)?\*?(?P<rest>.*)$")


def parse_symbol_literal(text, F):
    """Parse ``"3*[u] - eta*[a,b]"`` (``<a>`` stands for ``1 + eta*[a]``)."""
    text = text.strip()
    if not text:
        raise LiteralError("empty symbol literal")
    raw_terms = [t for t in _split_top(text.replace(" ", ""), "+-") if t not in ("", "+")]
    result = None
    for term in raw_terms:
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("+-")
        if not term:
            raise LiteralError(f"dangling sign in {text!r}")
        m = _TERM.match(term)
        coef = int(m.group("coef")) if m.group("coef") else 1
        k = 0
        if m.group("eta"):
            k = int(m.group("k")) if m.group("k") else 1
        rest = m.group("rest")
        if rest.startswith("[") and rest.endswith("]"):
            inner = rest[1:-1]
            entries = tuple(parse_element(F, s) for s in _split_top(inner, ",")) if inner else ()
            elem = KMWElem(F, len(entries) - k, [(sign * coef, k, entries)])
        elif rest.startswith("<") and rest.endswith(">"):
            if k:
                elem = KMWElem(F, -k, [(sign * coef, k, ())]) * angle_elem(F, parse_element(F, rest[1:-1]))
            else:
                elem = angle_elem(F, parse_element(F, rest[1:-1])) * (sign * coef)
        elif rest == "":
            if not m.group("coef") and not m.group("eta"):
                raise LiteralError(f"empty term in {text!r}")
            elem = KMWElem(F, -k, [(sign * coef, k, ())])
        else:
            raise LiteralError(f"cannot read term {term!r}")
        if result is None:
            result = elem
        elif result.degree != elem.degree:
            raise LiteralError("terms of different degrees")
        else:
            result = result + elem
    return result


def parse_place(F, text):
    """``p`` or ``p:i`` for number fields, a polynomial or ``inf`` for ``F_q(t)``."""
    text = text.strip()
    if F == QQ:
        try:
            return RationalPlace(int(text))
        except ValueError:
            raise LiteralError(f"bad prime {text!r}") from None
    if isinstance(F, QuadraticField):
        p, _, i = text.partition(":")
        try:
            ideals = split_prime(F, int(p))
            return IdealPlace(ideals[int(i) if i else 0])
        except (ValueError, IndexError) as exc:
            raise LiteralError(f"bad prime ideal {text!r}") from exc
    if isinstance(F, RationalFunctionField):
        if text == "inf":
            return InfinityPlace(F)
        g = parse_element(F, text)
        if g.den.degree != 0 or g.num.degree < 1 or not g.num.monic().is_irreducible():
            raise LiteralError(f"{text!r} is not an irreducible polynomial")
        return PolyPlace(F, g.num.monic())
    raise LiteralError(f"no places on {F!r}")
