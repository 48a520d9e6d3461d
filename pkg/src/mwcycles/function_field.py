"""The rational function field ``F(t)`` over a finite field ``F``."""
from __future__ import annotations

from .errors import ZeroElement
from .finite_field import FFElem, Poly


class RationalFunctionField:
    def __init__(self, base, var="t"):
        self.base = base
        self.var = var

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and self.base == other.base

    def __hash__(self):
        return hash(("F(t)", self.base))

    def __repr__(self):
        return f"{self.base}({self.var})"

    @property
    def one(self):
        return RatFunc(self, Poly.const(self.base, self.base.one_raw))

    @property
    def t(self):
        return RatFunc(self, Poly.x(self.base))

    def const(self, c):
        c = self.base(c) if not isinstance(c, FFElem) else self.base(c)
        return RatFunc(self, Poly.const(self.base, c.raw))

    def __call__(self, value):
        if isinstance(value, RatFunc):
            return value
        if isinstance(value, Poly):
            return RatFunc(self, value)
        return self.const(value)


class RatFunc:
    """Reduced quotient ``num/den`` with ``den`` monic."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den=None):
        F = field.base
        if den is None:
            den = Poly.const(F, F.one_raw)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = Poly.const(F, F.one_raw)
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lc
            if lc != F.one_raw:
                inv = F.inv(lc)
                num, den = num.scale(inv), den.scale(inv)
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(self.field, other)
        return self.field.const(other)

    def __eq__(self, other):
        if not isinstance(other, (RatFunc, Poly, FFElem, int)):
            return NotImplemented
        o = self._lift(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other):
        o = self._lift(other)
        return RatFunc(self.field, self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.field, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroElement("inverse of zero")
        return RatFunc(self.field, self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        return RatFunc(self.field, self.num ** e, self.den ** e)

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.den.degree == 0 and self.num == self.den

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def sort_key(self):
        return (2, self.num.sort_key(), self.den.sort_key())

    def __str__(self):
        v = self.field.var
        n = self.num.to_str(v)
        if self.den.degree == 0:
            return n
        return f"({n})/({self.den.to_str(v)})"

    def __repr__(self):
        return f"RatFunc({self})"
