"""Grothendieck-Witt groups, epsilon-integers and trace-form transfers.

Over a finite field ``F_q`` an element is stored canonically as a pair
(rank, disc) where disc is the square class of the determinant, written
additively in Z/2.  In characteristic 2 only the rank survives.

>>> F5 = make_finite_field(5)
>>> angle(F5, 2) * angle(F5, 2)
GW(F_5)(rank=1, disc=0)
>>> n_epsilon(3, F5)
GW(F_5)(rank=3, disc=0)
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .abelian import GroupInvariants, IntMatrix, cokernel, invariants
from .errors import FieldMismatch, ZeroElement
from .finite_field import FiniteField, finite_field_of_order, is_square, make_finite_field


def _field_label(F):
    return f"F_{F.order}"


class GWElem:
    """Canonical element of ``GW(F_q)``."""

    __slots__ = ("field", "rank", "disc")

    def __init__(self, field, rank, disc=0):
        self.field = field
        self.rank = int(rank)
        self.disc = 0 if field.p == 2 else int(disc) % 2

    @classmethod
    def zero(cls, field):
        return cls(field, 0, 0)

    @classmethod
    def one(cls, field):
        return cls(field, 1, 0)

    def _check(self, other):
        if isinstance(other, int):
            return GWElem(self.field, other, 0)
        if not isinstance(other, GWElem):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{_field_label(self.field)} vs {_field_label(other.field)}")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return GWElem(self.field, self.rank + o.rank, self.disc + o.disc)

    __radd__ = __add__

    def __neg__(self):
        return GWElem(self.field, -self.rank, self.disc)

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        # (r1 + d1 e)(r2 + d2 e) with e = <g> - 1, e^2 = 0 in GW(F_q)
        return GWElem(self.field, self.rank * o.rank, self.rank * o.disc + o.rank * self.disc)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = GWElem(self.field, other)
        if not isinstance(other, GWElem):
            return NotImplemented
        return self.field == other.field and (self.rank, self.disc) == (other.rank, other.disc)

    def __hash__(self):
        return hash((self.field, self.rank, self.disc))

    def is_zero(self):
        return self.rank == 0 and self.disc == 0

    def coords(self):
        return (self.rank,) if self.field.p == 2 else (self.rank, self.disc)

    def to_json(self):
        out = {"rank": self.rank}
        if self.field.p != 2:
            out["disc"] = self.disc
        return out

    def __repr__(self):
        if self.field.p == 2:
            return f"GW({_field_label(self.field)})(rank={self.rank})"
        return f"GW({_field_label(self.field)})(rank={self.rank}, disc={self.disc})"


class FormalGW:
    """Formal sum ``sum n_a <a>`` over a field without a canonical form.

    Equality is syntactic after collecting terms.
    """

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        for a, n in (terms or {}).items():
            if a == 0:
                raise ZeroElement("<0> is not a form")
            if n:
                clean[a] = clean.get(a, 0) + n
        self.terms = {a: n for a, n in clean.items() if n}

    def __add__(self, other):
        if isinstance(other, int):
            other = FormalGW(self.field, {_one(self.field): other})
        t = dict(self.terms)
        for a, n in other.terms.items():
            t[a] = t.get(a, 0) + n
        return FormalGW(self.field, t)

    __radd__ = __add__

    def __neg__(self):
        return FormalGW(self.field, {a: -n for a, n in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FormalGW(self.field, {a: n * other for a, n in self.terms.items()})
        t = {}
        for a, n in self.terms.items():
            for b, m in other.terms.items():
                t[a * b] = t.get(a * b, 0) + n * m
        return FormalGW(self.field, t)

    __rmul__ = __mul__

    @property
    def rank(self):
        return sum(self.terms.values())

    def __eq__(self, other):
        return isinstance(other, FormalGW) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{n}<{a}>" for a, n in self.terms.items())


def _one(field):
    return field.one if not isinstance(field, FiniteField) else field.one


def angle(field, a):
    """The one-dimensional form ``<a>``."""
    if isinstance(field, FiniteField):
        a = field(a)
        if a.is_zero():
            raise ZeroElement("<0> is not a form")
        return GWElem(field, 1, 0 if is_square(a) else 1)
    return FormalGW(field, {field(a) if not hasattr(a, "field") else a: 1})


def hyperbolic(field):
    """``h = <1> + <-1>``."""
    return angle(field, 1) + angle(field, -1)


def n_epsilon(n, field):
    """The epsilon-integer ``sum_{i=1}^n <-1>^(i-1)``, extended to ``n < 0``.

    >>> F3 = make_finite_field(3)
    >>> n_epsilon(2, F3) == hyperbolic(F3)
    True
    """
    a, b = epsilon_coefficients(n)
    return a * angle(field, 1) + b * angle(field, -1)


def epsilon_coefficients(n):
    """``(a, b)`` with ``n_eps = a<1> + b<-1>``."""
    if n >= 0:
        return (n + 1) // 2, n // 2
    m = -n
    return -(m // 2), -((m + 1) // 2)


# ---------------------------------------------------------------------------
# group structure


@dataclass(frozen=True)
class GWStructure:
    """``GW(F_q)`` as an abstract group plus the meaning of each coordinate."""

    q: int
    group: GroupInvariants
    projections: tuple

    def to_json(self):
        return {"group": self.group.to_json()}


def gw_presentation(F):
    """Generators ``<1>`` and (odd q) ``<g> - <1>``, the latter of order two."""
    if F.p == 2:
        return [0]
    return [0, 2]


def gw_of_finite_field(q):
    """Structure of ``GW(F_q)``.

    >>> gw_of_finite_field(3).group
    GroupInvariants(free_rank=1, torsion=(2,))
    """
    F = finite_field_of_order(q)
    torsion = gw_presentation(F)
    G = cokernel(IntMatrix.zeros(len(torsion), 0), torsion)
    tags = ("rank",) if F.p == 2 else ("rank", "quadratic-residue class of <a> - 1")
    return GWStructure(q, invariants(G), tags)


def witt_group(q):
    """``W(F_q) = GW(F_q)/(h)``, computed as a cokernel of multiplication by h.

    >>> str(witt_group(3))
    'Z/4'
    """
    F = finite_field_of_order(q)
    h = hyperbolic(F)
    if F.p == 2:
        basis = [GWElem.one(F)]
    else:
        basis = [GWElem.one(F), angle(F, F.nonsquare()) - 1]
    cols = [(h * b).coords() for b in basis]
    return invariants(cokernel(IntMatrix.from_columns(cols, len(basis)), gw_presentation(F)))


def witt_reduce(F, rank, disc):
    """Canonical representative of the class of ``(rank, disc)`` in ``W(F_q)``."""
    if F.p == 2:
        return rank % 2, 0
    if F.order % 4 == 3:
        # h = (2, 1): trade two units of rank for one disc flip
        return rank % 2, (disc + rank // 2) % 2
    return rank % 2, disc % 2


# ---------------------------------------------------------------------------
# trace forms and transfers


def _chain(L, K):
    """Fields strictly between ``L`` and ``K`` (from ``L`` down), ``K`` a subfield."""
    if L == K:
        return []
    tower = L.tower()
    if K not in tower:
        raise FieldMismatch(f"{_field_label(K)} is not a subfield of {_field_label(L)}")
    return tower[: tower.index(K)]


def relative_degree(L, K):
    d = 1
    for k in _chain(L, K):
        d *= k.degree
    return d


def relative_basis(L, K):
    """A ``K``-basis of ``L`` as raws of ``L`` (power bases multiplied up the tower)."""
    basis = [K.one_raw]
    field = K
    for k in reversed(_chain(L, K)):
        powers, x = [], k.one_raw
        for _ in range(k.degree):
            powers.append(x)
            x = k.mul(x, k.gen_raw)
        basis = [k.mul(p, k.embed(b, field)) for b in basis for p in powers]
        field = k
    return basis


def trace_to(L, K, a):
    for k in _chain(L, K):
        a = k.trace_raw(a)
    return a


def norm_to(L, K, a):
    for k in _chain(L, K):
        a = k.norm_raw(a)
    return a


def trace_gram(L, K, a):
    """Gram matrix of ``(x, y) -> Tr_{L/K}(a x y)`` on :func:`relative_basis`."""
    B = relative_basis(L, K)
    return [[trace_to(L, K, L.mul(a, L.mul(x, y))) for y in B] for x in B]


def diagonalize_symmetric(K, G):
    """Diagonal entries of a congruent diagonal form (odd characteristic)."""
    m = [list(r) for r in G]
    n = len(m)
    zero = K.zero_raw
    diag = []
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][i] != zero), None)
        if piv is None:
            pair = next(((i, j) for i in range(c, n) for j in range(i + 1, n) if m[i][j] != zero), None)
            if pair is None:
                diag.extend([zero] * (n - c))
                break
            i, j = pair
            # e_i <- e_i + e_j makes the diagonal entry 2 m_ij
            for k in range(n):
                m[i][k] = K.add(m[i][k], m[j][k])
            for k in range(n):
                m[k][i] = K.add(m[k][i], m[k][j])
            piv = i
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            for r in m:
                r[c], r[piv] = r[piv], r[c]
        d = m[c][c]
        inv = K.inv(d)
        for i in range(c + 1, n):
            if m[i][c] != zero:
                f = K.mul(m[i][c], inv)
                m[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(m[i], m[c])]
                for r in m:
                    r[i] = K.sub(r[i], K.mul(f, r[c]))
        diag.append(d)
    return diag


@lru_cache(maxsize=4096)
def _transfer_angle(L, K, a):
    """Canonical ``(rank, disc)`` of the Scharlau transfer of ``<a>``."""
    n = relative_degree(L, K)
    if K.p == 2:
        return n, 0
    diag = diagonalize_symmetric(K, trace_gram(L, K, a))
    disc = sum(0 if K.is_square_raw(d) else 1 for d in diag) % 2
    return n, disc


def geometric_unit(L, K):
    """``f'(theta)`` for ``L = K[t]/f`` with ``theta`` the class of ``t``."""
    if L == K:
        return L.one_raw
    if L.base != K:
        raise FieldMismatch("geometric transfer needs a simple extension L = K[t]/f")
    return L.modulus_poly.derivative()(L.gen_raw, field=L)


def transfer(x, K, mode="trace"):
    """Transfer ``GW(L) -> GW(K)`` for a finite field ``L`` over its subfield ``K``.

    ``mode="trace"`` is the Scharlau transfer along the trace; ``"geometric"``
    first multiplies by ``<f'(theta)>``.

    >>> F3 = make_finite_field(3); F9 = make_finite_field(3, 2)
    >>> transfer(GWElem.one(F9), F3)
    GW(F_3)(rank=2, disc=1)
    """
    L = x.field
    if L == K:
        return x
    if mode == "geometric":
        x = angle(L, L.elem(geometric_unit(L, K))) * x
    elif mode != "trace":
        raise ValueError(f"unknown transfer mode {mode!r}")
    r1, d1 = _transfer_angle(L, K, L.one_raw)
    out = GWElem(K, x.rank * r1, x.rank * d1)
    if x.disc:
        r2, d2 = _transfer_angle(L, K, L.nonsquare_raw)
        out = out + GWElem(K, r2 - r1, d2 - d1)
    return out


def restrict(x, L):
    """Extension of scalars ``GW(K) -> GW(L)``."""
    K = x.field
    if K == L:
        return x
    _chain(L, K)
    if not x.disc:
        return GWElem(L, x.rank, 0)
    g = L.embed(K.nonsquare_raw, K)
    return GWElem(L, x.rank, 0 if L.is_square_raw(g) else 1)


def tensor_decompose(m, n):
    """Factors of ``F_{q^m} (x) F_{q^n}`` over ``F_q``: gcd(m, n) copies of degree lcm(m, n).

    >>> tensor_decompose(2, 3)
    [6]
    """
    if m < 1 or n < 1:
        raise ValueError("degrees must be positive")
    g = gcd(m, n)
    return [m * n // g] * g
