"""The rationals and quadratic fields ``Q(sqrt d)`` with their ring of integers.

Elements of ``K = Q(sqrt d)`` are pairs ``a + b*w`` of exact rationals in the
integral basis ``{1, w}``, where ``w = sqrt d`` or ``(1 + sqrt d)/2``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

from sympy import factorint, isprime

from .errors import NotPrime, ZeroElement
from .finite_field import FiniteField, make_finite_field


class RationalField:
    """The field Q; its elements are :class:`fractions.Fraction`."""

    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


def squarefree(d):
    if d == 0:
        return False
    return all(e == 1 for e in factorint(abs(d)).values())


def squarefree_kernel(d):
    """Squarefree ``d0`` with ``d = d0 * m^2``, so that ``Q(sqrt d) = Q(sqrt d0)``."""
    if d == 0:
        raise ValueError("d must be nonzero")
    out = -1 if d < 0 else 1
    for p, e in factorint(abs(d)).items():
        if e % 2:
            out *= p
    return out


def quadratic_field(d):
    """``Q(sqrt d)`` for any non-square ``d``; ``d`` is reduced to its squarefree kernel.

    >>> quadratic_field(-8)
    Q(sqrt(-2))
    """
    d0 = squarefree_kernel(d)
    if d0 == 1:
        raise ValueError(f"{d} is a square; Q(sqrt {d}) = Q")
    return QuadraticField(d0)


class QuadraticField:
    def __init__(self, d):
        if d in (0, 1) or not squarefree(d):
            raise ValueError(f"d = {d} must be squarefree and different from 0, 1")
        self.d = d
        if d % 4 == 1:
            # w = (1 + sqrt d)/2, minimal polynomial x^2 - x + (1 - d)/4
            self.trace_w, self.norm_w = 1, (1 - d) // 4
            self.disc = d
        else:
            self.trace_w, self.norm_w = 0, -d
            self.disc = 4 * d

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and self.d == other.d

    def __hash__(self):
        return hash(("Q(sqrt)", self.d))

    def __repr__(self):
        return f"Q(sqrt({self.d}))"

    @property
    def one(self):
        return NumElem(self, 1, 0)

    @property
    def omega(self):
        return NumElem(self, 0, 1)

    @property
    def is_imaginary(self):
        return self.d < 0

    def __call__(self, a, b=0):
        if isinstance(a, NumElem):
            return a
        return NumElem(self, a, b)

    def minpoly_coeffs(self):
        """``(c0, c1)`` with ``w^2 + c1*w + c0 = 0``."""
        return self.norm_w, -self.trace_w

    def minkowski_bound(self):
        from math import pi, sqrt
        if self.d < 0:
            return 2 / pi * sqrt(abs(self.disc))
        return sqrt(self.disc) / 2


class NumElem:
    """``a + b*w`` with exact rational coordinates."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field, a, b=0):
        self.field = field
        self.a = Fraction(a)
        self.b = Fraction(b)

    def _lift(self, other):
        if isinstance(other, NumElem):
            return other
        if isinstance(other, (int, Fraction)):
            return NumElem(self.field, other, 0)
        return NotImplemented

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return NumElem(self.field, self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return NumElem(self.field, -self.a, -self.b)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return NumElem(self.field, self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        K = self.field
        bd = self.b * o.b
        return NumElem(K, self.a * o.a - bd * K.norm_w,
                       self.a * o.b + self.b * o.a + bd * K.trace_w)

    __rmul__ = __mul__

    def conjugate(self):
        K = self.field
        return NumElem(K, self.a + self.b * K.trace_w, -self.b)

    def norm(self):
        K = self.field
        return self.a * self.a + self.a * self.b * K.trace_w + self.b * self.b * K.norm_w

    def trace(self):
        return 2 * self.a + self.b * self.field.trace_w

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroElement("inverse of zero")
        c = self.conjugate()
        return NumElem(self.field, c.a / n, c.b / n)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def is_integral(self):
        return self.a.denominator == 1 and self.b.denominator == 1

    def integral_parts(self):
        """``(A, B, D)`` integers with ``self = (A + B*w)/D`` and ``D > 0``."""
        D = self.a.denominator * self.b.denominator // gcd(self.a.denominator, self.b.denominator)
        return int(self.a * D), int(self.b * D), D

    def sort_key(self):
        return (1, self.b, self.a)

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        bs = "" if self.b == 1 else ("-" if self.b == -1 else f"{self.b}*")
        if self.a == 0:
            return f"{bs}w"
        sign = "+" if self.b > 0 else ""
        if self.b == -1:
            return f"{self.a}-w"
        return f"{self.a}{sign}{bs}w"

    def __repr__(self):
        return f"NumElem({self})"


# ---------------------------------------------------------------------------
# prime ideals


class PrimeIdeal:
    """Prime of ``O_K`` above ``p`` given as ``(p, w - r)`` (or ``(p)`` if inert)."""

    def __init__(self, field, p, kind, root=None, index=0):
        self.field = field
        self.p = p
        self.kind = kind
        self.root = root
        self.index = index
        self.residue_degree = 2 if kind == "inert" else 1
        self.ramification = 2 if kind == "ramified" else 1
        self.uniformizer = self._choose_uniformizer()

    @property
    def norm(self):
        return self.p ** self.residue_degree

    @property
    def second_gen(self):
        if self.kind == "inert":
            return NumElem(self.field, 0, 0)
        return NumElem(self.field, -self.root, 1)

    def _choose_uniformizer(self):
        K, p = self.field, self.p
        if self.kind == "inert":
            return NumElem(K, p, 0)
        c = (-self.root) % p
        for j in (0, 1, -1, 2, -2, 3, -3):
            cand = NumElem(K, c + j * p, 1)
            if valuation_at_ideal(self, cand) == 1:
                return cand
        raise AssertionError("no uniformizer found")

    def __eq__(self, other):
        return (isinstance(other, PrimeIdeal) and self.field == other.field
                and self.p == other.p and self.index == other.index)

    def __hash__(self):
        return hash((self.field, self.p, self.index))

    def sort_key(self):
        return (self.norm, self.p, self.index)

    def label(self):
        if self.kind == "inert":
            return f"({self.p})"
        return f"({self.p},w-{self.root})" if self.root else f"({self.p},w)"

    def __repr__(self):
        return f"PrimeIdeal{self.label()}[{self.kind}]"

    @property
    def residue_field(self):
        if not hasattr(self, "_kappa"):
            Fp = make_finite_field(self.p)
            if self.kind == "inert":
                c0, c1 = self.field.minpoly_coeffs()
                kappa = FiniteField(self.p, (c0 % self.p, c1 % self.p, 1), Fp, var="w")
            else:
                kappa = Fp
            self._kappa = kappa
        return self._kappa


def _roots_mod_p(c0, c1, p):
    return [x for x in range(p) if (x * x + c1 * x + c0) % p == 0]


def split_prime(K, p):
    """Primes of ``O_K`` above the rational prime ``p``."""
    if not isprime(p):
        raise NotPrime(p)
    c0, c1 = K.minpoly_coeffs()
    roots = _roots_mod_p(c0, c1, p)
    if len(roots) == 2:
        return [PrimeIdeal(K, p, "split", r, i) for i, r in enumerate(roots)]
    if len(roots) == 1:
        return [PrimeIdeal(K, p, "ramified", roots[0], 0)]
    if p == 2 and (c0 % 2, c1 % 2) == (0, 0):
        # x^2 is a double root 0 (handled above); unreachable
        raise AssertionError
    return [PrimeIdeal(K, p, "inert", None, 0)]


def vp(n, p):
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ZeroElement("valuation of zero")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def _integral_valuation(P, A, B):
    p = P.p
    c = gcd(A, B)
    m = vp(c, p) if c else 0
    A, B = A // p ** m, B // p ** m
    if P.kind == "inert":
        return m
    N = NumElem(P.field, A, B).norm()
    N = int(N)
    if P.kind == "ramified":
        return 2 * m + vp(N, p)
    if (A + B * P.root) % p == 0:
        return m + vp(N, p)
    return m


def valuation_at_ideal(P, x):
    if x.is_zero():
        raise ZeroElement("valuation of zero")
    A, B, D = x.integral_parts()
    return _integral_valuation(P, A, B) - P.ramification * vp(D, P.p)


def _hensel_root(P, k):
    """Root of the minimal polynomial of ``w`` modulo ``p**k`` lifting ``P.root``."""
    c0, c1 = P.field.minpoly_coeffs()
    p, r, mod = P.p, P.root, P.p
    while mod < p ** k:
        mod = min(mod * mod, p ** k)
        f = r * r + c1 * r + c0
        df = 2 * r + c1
        r = (r - f * pow(df, -1, mod)) % mod
    return r % p ** k


def residue_at_ideal(P, x):
    """Raw image of a ``P``-unit in the residue field."""
    A, B, D = x.integral_parts()
    p = P.p
    k = vp(D, p)
    kappa = P.residue_field
    if P.kind == "split":
        mod = p ** (k + 1)
        r = _hensel_root(P, k + 1)
        val = (A + B * r) % mod
        assert val % p ** k == 0
        num = (val // p ** k) % p
        den = (D // p ** k) % p
        return (num * pow(den, -1, p)) % p
    A, B, D = A // p ** k, B // p ** k, D // p ** k
    dinv = pow(D % p, -1, p)
    if P.kind == "ramified":
        return ((A + B * P.root) * dinv) % p
    return ((A * dinv) % p, (B * dinv) % p)


def isqrt_exact(n):
    r = isqrt(n)
    return r if r * r == n else None
