"""Discrete valuations with a fixed uniformizer and a reduction map.

Every place exposes ``valuation``, ``residue_class`` (on units),
``uniformizer`` and ``residue_field``; residue fields are always finite.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import NotAUnit, ZeroElement
from .finite_field import FFElem, Poly, make_finite_field
from .function_field import RatFunc, RationalFunctionField
from .number_field import QQ, PrimeIdeal, residue_at_ideal, valuation_at_ideal, vp


class Place:
    field = None
    uniformizer = None
    residue_field = None

    def valuation(self, x):
        raise NotImplementedError

    def _reduce(self, x):
        raise NotImplementedError

    def residue_class(self, x):
        if self.valuation(x) != 0:
            raise NotAUnit(f"{x} is not a unit at {self}")
        return self._reduce(x)

    def split(self, x):
        """``(n, u)`` with ``x = uniformizer**n * u`` and ``u`` a unit."""
        n = self.valuation(x)
        if n == 0:
            return 0, x
        return n, x / self.uniformizer ** n

    @property
    def degree(self):
        """Degree of the residue field over the prime (or constant) field."""
        return 1

    def __repr__(self):
        return f"<place {self.label()}>"

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())


class RationalPlace(Place):
    """The ``p``-adic place of Q with uniformizer ``p``."""

    def __init__(self, p):
        self.p = p
        self.field = QQ
        self.uniformizer = Fraction(p)
        self.residue_field = make_finite_field(p)

    def _key(self):
        return ("Q", self.p)

    def label(self):
        return str(self.p)

    def valuation(self, x):
        x = Fraction(x)
        if x == 0:
            raise ZeroElement("valuation of zero")
        return (vp(x.numerator, self.p) if x.numerator % self.p == 0 else 0) - (
            vp(x.denominator, self.p) if x.denominator % self.p == 0 else 0)

    def _reduce(self, x):
        x = Fraction(x)
        p = self.p
        return FFElem(self.residue_field, x.numerator * pow(x.denominator, -1, p) % p)

    def sort_key(self):
        return (self.p,)


class IdealPlace(Place):
    """Place of a quadratic field at a :class:`PrimeIdeal`."""

    def __init__(self, ideal):
        self.ideal = ideal
        self.field = ideal.field
        self.uniformizer = ideal.uniformizer
        self.residue_field = ideal.residue_field

    def _key(self):
        return ("K", self.ideal)

    def label(self):
        return self.ideal.label()

    @property
    def degree(self):
        return self.ideal.residue_degree

    def valuation(self, x):
        x = self.field(x) if not hasattr(x, "field") else x
        return valuation_at_ideal(self.ideal, x)

    def _reduce(self, x):
        x = self.field(x) if not hasattr(x, "field") else x
        return FFElem(self.residue_field, residue_at_ideal(self.ideal, x))

    def sort_key(self):
        return self.ideal.sort_key()


class PolyPlace(Place):
    """Finite place of ``F(t)`` at a monic irreducible ``g``.

    The uniformizer defaults to ``g``; any element of valuation one may be
    supplied instead.
    """

    def __init__(self, field, g, uniformizer=None):
        if not isinstance(field, RationalFunctionField):
            raise TypeError("PolyPlace needs a rational function field")
        g = g.monic()
        self.field = field
        self.g = g
        self.uniformizer = field(g) if uniformizer is None else field(uniformizer)
        F = field.base
        if g.degree == 1:
            self.residue_field = F
            self._root = F.neg(g.coeffs[0])
        else:
            self.residue_field = F.extension(g, var="t")
            self._root = None
        if uniformizer is not None and self.valuation(self.uniformizer) != 1:
            raise ValueError("uniformizer must have valuation one")

    def _key(self):
        return ("F(t)", self.field, self.g, self.uniformizer)

    def label(self):
        return self.g.to_str(self.field.var)

    @property
    def degree(self):
        return self.g.degree

    def _vpoly(self, f):
        k = 0
        while True:
            q, r = divmod(f, self.g)
            if not r.is_zero():
                return k
            f, k = q, k + 1

    def valuation(self, x):
        x = self.field(x)
        if x.is_zero():
            raise ZeroElement("valuation of zero")
        return self._vpoly(x.num) - self._vpoly(x.den)

    def reduce_poly(self, f):
        """Raw image in the residue field of a polynomial."""
        kappa = self.residue_field
        if self._root is not None:
            return f(self._root)
        r = (f % self.g).coeffs
        zero = kappa.base.zero_raw
        return tuple(r) + (zero,) * (kappa.degree - len(r))

    def _reduce(self, x):
        x = self.field(x)
        kappa = self.residue_field
        num = self.reduce_poly(x.num)
        den = self.reduce_poly(x.den)
        return FFElem(kappa, kappa.mul(num, kappa.inv(den)))

    def lift(self, u):
        """Polynomial of degree < deg g representing a residue-field element."""
        F = self.field.base
        if self._root is not None:
            return Poly(F, (u.raw,))
        return Poly(F, u.raw)

    def sort_key(self):
        return (0,) + self.g.sort_key()


class InfinityPlace(Place):
    """The place at infinity of ``F(t)`` with uniformizer ``1/t``."""

    def __init__(self, field):
        self.field = field
        self.uniformizer = field.t.inverse()
        self.residue_field = field.base

    def _key(self):
        return ("inf", self.field)

    def label(self):
        return "inf"

    def valuation(self, x):
        x = self.field(x)
        if x.is_zero():
            raise ZeroElement("valuation of zero")
        return x.den.degree - x.num.degree

    def _reduce(self, x):
        x = self.field(x)
        F = self.field.base
        return FFElem(F, F.mul(x.num.lc, F.inv(x.den.lc)))

    def sort_key(self):
        return (1,)


def valuation(place, x):
    """Exact order of ``x`` at ``place``."""
    return place.valuation(x)


def residue_class(place, x):
    """Image of a ``place``-unit in the residue field; raises :class:`NotAUnit`."""
    return place.residue_class(x)


def place_for(field, spec):
    """Construct a place from a prime, a :class:`PrimeIdeal`, a polynomial or ``"inf"``."""
    if isinstance(spec, PrimeIdeal):
        return IdealPlace(spec)
    if field == QQ:
        return RationalPlace(int(spec))
    if isinstance(field, RationalFunctionField):
        if spec == "inf":
            return InfinityPlace(field)
        if isinstance(spec, RatFunc):
            spec = spec.num
        return PolyPlace(field, spec)
    raise TypeError(f"cannot build a place of {field} from {spec!r}")
