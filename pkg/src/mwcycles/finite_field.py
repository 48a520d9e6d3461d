"""Finite fields as towers over a prime field, plus dense polynomials over them.

A :class:`FiniteField` either is the prime field ``F_p`` (``base is None``) or
is ``base[x]/(modulus)`` for a monic irreducible ``modulus`` over ``base``.
Field elements are stored as *raw* values: an ``int`` in ``[0, p)`` for the
prime field, a tuple of base raws (low degree first) for an extension. The
field object performs all arithmetic on raws; :class:`FFElem` wraps a raw
with operator overloading.

>>> F9 = make_finite_field(3, 2)
>>> F9.modulus_poly
Poly(F_3, x^2 + 1)
>>> a = F9.gen
>>> a * a == F9(-1)
True
"""
from __future__ import annotations

import os
from functools import cached_property
from itertools import product

from sympy import factorint, isprime

from .errors import NotPrime, NotPrimePower, TooLarge, ZeroElement

DEFAULT_MAX_Q = 10**6


def max_field_order():
    """Field-size cap; ``MWCYCLES_MAX_Q`` may lower it, never raise it."""
    cap = DEFAULT_MAX_Q
    env = os.environ.get("MWCYCLES_MAX_Q")
    if env:
        try:
            value = int(env)
        except ValueError:
            return cap
        if 1 < value < cap:
            cap = value
    return cap


def prime_power(q):
    """Return ``(p, f)`` with ``q == p**f`` or raise :class:`NotPrimePower`."""
    if not isinstance(q, int) or q < 2:
        raise NotPrimePower(q)
    fac = factorint(q)
    if len(fac) != 1:
        raise NotPrimePower(q)
    (p, f), = fac.items()
    return p, f


class FiniteField:
    """Finite field given as a tower of simple extensions over ``F_p``."""

    def __init__(self, p, modulus=None, base=None, var="a"):
        self.p = p
        self.base = base
        self.var = var
        if base is None:
            self.modulus = (0, 1)
        else:
            self.modulus = tuple(modulus)
        self._key = (p, self.modulus, base._key if base is not None else None)
        self._hash = hash(self._key)

    # -- identity -------------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, FiniteField) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.base is None:
            return f"F_{self.p}"
        return f"F_{self.order}"

    # -- sizes ----------------------------------------------------------
    @property
    def is_prime_field(self):
        return self.base is None

    @cached_property
    def degree(self):
        """Degree over the immediate base (1 for the prime field)."""
        return 1 if self.base is None else len(self.modulus) - 1

    @cached_property
    def f(self):
        """Absolute degree over ``F_p``."""
        return 1 if self.base is None else self.degree * self.base.f

    @cached_property
    def order(self):
        return self.p ** self.f

    @property
    def q(self):
        return self.order

    @cached_property
    def prime_field(self):
        return self if self.base is None else self.base.prime_field

    @cached_property
    def modulus_poly(self):
        if self.base is None:
            return Poly(self, (0, 1))
        return Poly(self.base, self.modulus)

    def tower(self):
        """Fields from ``self`` down to the prime field."""
        out, k = [], self
        while k is not None:
            out.append(k)
            k = k.base
        return out

    def is_subfield_of(self, other):
        return self in other.tower()

    # -- raw arithmetic -------------------------------------------------
    @cached_property
    def zero_raw(self):
        return 0 if self.base is None else (self.base.zero_raw,) * self.degree

    @cached_property
    def one_raw(self):
        if self.base is None:
            return 1 % self.p
        return (self.base.one_raw,) + (self.base.zero_raw,) * (self.degree - 1)

    def add(self, a, b):
        if self.base is None:
            return (a + b) % self.p
        badd = self.base.add
        return tuple(badd(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.base is None:
            return (a - b) % self.p
        bsub = self.base.sub
        return tuple(bsub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.base is None:
            return (-a) % self.p
        bneg = self.base.neg
        return tuple(bneg(x) for x in a)

    def mul(self, a, b):
        if self.base is None:
            return (a * b) % self.p
        B = self.base
        n = self.degree
        mod = self.modulus
        if B.base is None:
            p = self.p
            prod_ = [0] * (2 * n - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        if y:
                            prod_[i + j] += x * y
            for i in range(2 * n - 2, n - 1, -1):
                c = prod_[i] % p
                if c:
                    for j in range(n):
                        prod_[i - n + j] -= c * mod[j]
            return tuple(c % p for c in prod_[:n])
        zero = B.zero_raw
        prod_ = [zero] * (2 * n - 1)
        for i, x in enumerate(a):
            if x != zero:
                for j, y in enumerate(b):
                    if y != zero:
                        prod_[i + j] = B.add(prod_[i + j], B.mul(x, y))
        for i in range(2 * n - 2, n - 1, -1):
            c = prod_[i]
            if c != zero:
                for j in range(n):
                    prod_[i - n + j] = B.sub(prod_[i - n + j], B.mul(c, mod[j]))
        return tuple(prod_[:n])

    def power(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one_raw
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a):
        if a == self.zero_raw:
            raise ZeroElement("inverse of zero")
        if self.base is None:
            return pow(a, -1, self.p)
        return self.power(a, self.order - 2)

    def from_int(self, n):
        if self.base is None:
            return n % self.p
        return self.embed(self.base.from_int(n))

    def embed(self, raw, source=None):
        """Image of a raw of ``source`` (an ancestor in the tower, default base)."""
        if source is None:
            source = self.base
        if source == self:
            return raw
        inner = self.base.embed(raw, source) if self.base != source else raw
        return (inner,) + (self.base.zero_raw,) * (self.degree - 1)

    def descend(self, raw, target):
        """Inverse of :meth:`embed` for raws lying in the subfield ``target``."""
        k, r = self, raw
        while k != target:
            if any(c != k.base.zero_raw for c in r[1:]):
                raise ValueError(f"{raw!r} does not lie in {target}")
            k, r = k.base, r[0]
        return r

    def elements(self):
        """All raws, in a fixed order (zero first)."""
        if self.base is None:
            return list(range(self.p))
        sub = self.base.elements()
        return [tuple(reversed(c)) for c in product(sub, repeat=self.degree)]

    def units(self):
        zero = self.zero_raw
        return [x for x in self.elements() if x != zero]

    def is_square_raw(self, a):
        if a == self.zero_raw:
            raise ZeroElement("is_square of zero")
        if self.p == 2:
            return True
        return self.power(a, (self.order - 1) // 2) == self.one_raw

    @cached_property
    def nonsquare_raw(self):
        """Smallest non-square (odd characteristic only)."""
        if self.p == 2:
            return None
        for x in self.units():
            if not self.is_square_raw(x):
                return x
        raise AssertionError("no non-square in odd-order field")

    @cached_property
    def gen_raw(self):
        if self.base is None:
            return 1 % self.p
        z, o = self.base.zero_raw, self.base.one_raw
        if self.degree == 1:
            return (self.base.neg(self.modulus[0]),)
        return (z, o) + (z,) * (self.degree - 2)

    def mul_matrix(self, a):
        """Matrix of ``x -> a*x`` over the base in the power basis (columns)."""
        n = self.degree
        cols = []
        basis = self.one_raw
        for _ in range(n):
            cols.append(self.mul(a, basis))
            basis = self.mul(basis, self.gen_raw)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def trace_raw(self, a):
        """Trace to the immediate base."""
        B = self.base
        m = self.mul_matrix(a)
        t = B.zero_raw
        for i in range(self.degree):
            t = B.add(t, m[i][i])
        return t

    def norm_raw(self, a):
        """Norm to the immediate base (determinant of multiplication)."""
        return determinant(self.base, self.mul_matrix(a))

    # -- element wrappers -------------------------------------------------
    def __call__(self, value):
        if isinstance(value, FFElem):
            if value.field == self:
                return value
            return FFElem(self, self.embed(value.raw, value.field))
        if isinstance(value, int):
            return FFElem(self, self.from_int(value))
        if isinstance(value, tuple) and self.base is not None:
            return FFElem(self, value)
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def elem(self, raw):
        return FFElem(self, raw)

    @property
    def zero(self):
        return FFElem(self, self.zero_raw)

    @property
    def one(self):
        return FFElem(self, self.one_raw)

    @property
    def gen(self):
        return FFElem(self, self.gen_raw)

    def nonsquare(self):
        raw = self.nonsquare_raw
        return None if raw is None else FFElem(self, raw)

    def extension(self, modulus, var="a"):
        """``self[x]/(modulus)`` for a monic irreducible :class:`Poly`."""
        if modulus.field != self:
            raise ValueError("modulus must have coefficients in this field")
        if modulus.degree < 1:
            raise ValueError("modulus must have positive degree")
        if self.order ** modulus.degree > max_field_order():
            raise TooLarge(self.order ** modulus.degree)
        return FiniteField(self.p, modulus.monic().coeffs, self, var=var)


class FFElem:
    """Element of a :class:`FiniteField`."""

    __slots__ = ("field", "raw")

    def __init__(self, field, raw):
        self.field = field
        self.raw = raw

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.field == self.field:
                return other.raw
            return self.field.embed(other.raw, other.field)
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, (FFElem, int)):
            try:
                o = self._coerce(other)
            except (AttributeError, ValueError, TypeError):
                return False
            return self.raw == o
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.raw))

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.add(self.raw, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.sub(self.raw, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.sub(o, self.raw))

    def __neg__(self):
        return FFElem(self.field, self.field.neg(self.raw))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.mul(self.raw, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.mul(self.raw, self.field.inv(o)))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FFElem(self.field, self.field.mul(o, self.field.inv(self.raw)))

    def __pow__(self, e):
        return FFElem(self.field, self.field.power(self.raw, e))

    def inverse(self):
        return FFElem(self.field, self.field.inv(self.raw))

    def is_zero(self):
        return self.raw == self.field.zero_raw

    def is_one(self):
        return self.raw == self.field.one_raw

    def __bool__(self):
        return not self.is_zero()

    def coeffs(self):
        """Coefficient vector over the prime field (length ``f``)."""
        if self.field.base is None:
            return (self.raw,)
        out = []
        for c in self.raw:
            out.extend(FFElem(self.field.base, c).coeffs())
        return tuple(out)

    def trace(self):
        return FFElem(self.field.base, self.field.trace_raw(self.raw))

    def norm(self):
        return FFElem(self.field.base, self.field.norm_raw(self.raw))

    def sort_key(self):
        return (0, self.field.order, self.coeffs())

    def __str__(self):
        return _raw_str(self.field, self.raw)

    def __repr__(self):
        return f"FFElem({self.field}, {self})"


def _raw_str(field, raw):
    if field.base is None:
        return str(raw)
    terms = []
    for i, c in enumerate(raw):
        if c == field.base.zero_raw:
            continue
        cs = _raw_str(field.base, c)
        if field.base.base is not None:
            cs = f"({cs})"
        if i == 0:
            terms.append(cs)
        else:
            mono = field.var if i == 1 else f"{field.var}^{i}"
            terms.append(mono if cs == "1" else f"{cs}*{mono}")
    return "+".join(reversed(terms)) if terms else "0"


def make_finite_field(p, f=1):
    """``F_{p^f}`` with the lexicographically smallest irreducible modulus.

    >>> make_finite_field(3, 2).modulus
    (1, 0, 1)
    """
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(p)
    if f < 1:
        raise ValueError("extension degree must be >= 1")
    if p ** f > max_field_order():
        raise TooLarge(p ** f)
    Fp = FiniteField(p)
    if f == 1:
        return Fp
    g = first_irreducible(Fp, f)
    return FiniteField(p, g.coeffs, Fp, var="a")


def finite_field_of_order(q):
    p, f = prime_power(q)
    return make_finite_field(p, f)


def is_square(a):
    """Quadratic-residue test; every unit is a square in characteristic 2."""
    return a.field.is_square_raw(a.raw)


def determinant(field, rows):
    """Determinant of a square matrix of raws (Gaussian elimination)."""
    m = [list(r) for r in rows]
    n = len(m)
    zero = field.zero_raw
    det = field.one_raw
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != zero), None)
        if piv is None:
            return zero
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = field.neg(det)
        det = field.mul(det, m[c][c])
        inv = field.inv(m[c][c])
        for r in range(c + 1, n):
            if m[r][c] != zero:
                factor = field.mul(m[r][c], inv)
                m[r] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[r], m[c])]
    return det


# ---------------------------------------------------------------------------
# polynomials


class Poly:
    """Dense univariate polynomial over a :class:`FiniteField` (raws, low first)."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field, coeffs):
        zero = field.zero_raw
        c = list(coeffs)
        while c and c[-1] == zero:
            c.pop()
        self.field = field
        self.coeffs = tuple(c)
        self._hash = None

    @classmethod
    def from_elems(cls, field, elems):
        return cls(field, [field(e).raw for e in elems])

    @classmethod
    def x(cls, field):
        return cls(field, (field.zero_raw, field.one_raw))

    @classmethod
    def const(cls, field, raw):
        return cls(field, (raw,))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    @property
    def lc(self):
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.lc == self.field.one_raw

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.field.inv(self.lc)
        return Poly(self.field, [self.field.mul(c, inv) for c in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, Poly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def _lift(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, FFElem)):
            return Poly(self.field, (self.field(other).raw,))
        raise TypeError(f"cannot add {other!r} to a polynomial")

    def __add__(self, other):
        F = self.field
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = F.zero_raw
        return Poly(F, [F.add(a[i] if i < len(a) else z, b[i] if i < len(b) else z) for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __rmul__(self, other):
        return self * other

    def __mul__(self, other):
        F = self.field
        if isinstance(other, (FFElem, int)):
            r = F(other).raw
            return Poly(F, [F.mul(c, r) for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        out = [F.zero_raw] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == F.zero_raw:
                continue
            for j, y in enumerate(b):
                out[i + j] = F.add(out[i + j], F.mul(x, y))
        return Poly(F, out)

    def scale(self, raw):
        F = self.field
        return Poly(F, [F.mul(c, raw) for c in self.coeffs])

    def __pow__(self, e):
        result = Poly(self.field, (self.field.one_raw,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        F = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        n = other.degree
        inv = F.inv(other.lc)
        if len(r) - 1 < n:
            return Poly(F, ()), self
        q = [F.zero_raw] * (len(r) - n)
        for i in range(len(r) - 1, n - 1, -1):
            c = r[i]
            if c == F.zero_raw:
                continue
            c = F.mul(c, inv)
            q[i - n] = c
            for j, d in enumerate(other.coeffs):
                r[i - n + j] = F.sub(r[i - n + j], F.mul(c, d))
        return Poly(F, q), Poly(F, r[:n])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other):
        return (other % self).is_zero()

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __call__(self, x, field=None):
        """Evaluate at a raw of ``field`` (an extension of ``self.field``)."""
        K = field or self.field
        acc = K.zero_raw
        for c in reversed(self.coeffs):
            acc = K.add(K.mul(acc, x), K.embed(c, self.field) if K != self.field else c)
        return acc

    def derivative(self):
        F = self.field
        return Poly(F, [F.mul(F.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def sort_key(self):
        """Order by degree, then coefficients from the top (used for scans)."""
        return (self.degree, tuple(_flat(self.field, c) for c in reversed(self.coeffs)))

    def is_irreducible(self):
        if self.degree < 1:
            return False
        if self.degree == 1:
            return True
        for g in irreducibles_up_to(self.field, self.degree // 2):
            if g.divides(self):
                return False
        return True

    def __repr__(self):
        return f"Poly({self.field}, {self})"

    def to_str(self, var="x"):
        F = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == F.zero_raw:
                continue
            cs = _raw_str(F, c)
            if F.base is not None and "+" in cs:
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                terms.append(mono if c == F.one_raw else f"{cs}*{mono}")
        return " + ".join(terms)

    def __str__(self):
        return self.to_str("x")


def _flat(field, raw):
    if field.base is None:
        return (raw,)
    out = ()
    for c in reversed(raw):
        out += _flat(field.base, c)
    return out


def monic_polys(field, degree):
    """All monic polynomials of the given degree, in :meth:`Poly.sort_key` order."""
    elems = field.elements()
    for tail in product(elems, repeat=degree):
        yield Poly(field, tuple(reversed(tail)) + (field.one_raw,))


_IRRED_CACHE = {}


def irreducibles_of_degree(field, n):
    """Monic irreducible polynomials of degree ``n`` (certified by trial division)."""
    key = (field, n)
    if key not in _IRRED_CACHE:
        if n == 1:
            out = list(monic_polys(field, 1))
        else:
            smaller = irreducibles_up_to(field, n // 2)
            out = []
            for g in monic_polys(field, n):
                if g.coeffs[0] == field.zero_raw:
                    continue
                if not any(h.divides(g) for h in smaller):
                    out.append(g)
        _IRRED_CACHE[key] = out
    return _IRRED_CACHE[key]


def irreducibles_up_to(field, n):
    out = []
    for k in range(1, n + 1):
        out.extend(irreducibles_of_degree(field, k))
    return out


def first_irreducible(field, n):
    """Lexicographically smallest monic irreducible of degree ``n``."""
    if n == 1:
        return Poly.x(field)
    for g in monic_polys(field, n):
        if g.coeffs[0] == field.zero_raw:
            continue
        if _no_small_factor(g):
            return g
    raise AssertionError("irreducible polynomials exist in every degree")


def _no_small_factor(g):
    # roots first: cheap and rejects most candidates
    F = g.field
    for x in F.elements():
        if g(x) == F.zero_raw:
            return False
    for k in range(2, g.degree // 2 + 1):
        for h in irreducibles_of_degree(F, k):
            if h.divides(g):
                return False
    return True


def factor_poly(g):
    """Factor a nonzero polynomial: ``(leading coeff raw, [(monic irreducible, e)])``."""
    if g.is_zero():
        raise ZeroElement("factor of zero polynomial")
    F = g.field
    lc = g.lc
    rest = g.monic()
    out = []
    k = 1
    while rest.degree >= 2 * k:
        for h in irreducibles_of_degree(F, k):
            e = 0
            while True:
                q, r = divmod(rest, h)
                if not r.is_zero():
                    break
                rest, e = q, e + 1
            if e:
                out.append((h, e))
        k += 1
    if rest.degree >= 1:
        merged = False
        for i, (h, e) in enumerate(out):
            if h == rest:
                out[i] = (h, e + 1)
                merged = True
        if not merged:
            out.append((rest, 1))
    out.sort(key=lambda he: he[0].sort_key())
    return lc, out
