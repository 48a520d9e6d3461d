"""Milnor-Witt K-theory symbols, canonical values over finite fields, residues.

An element is an integer combination of terms ``eta^k [u_1, ..., u_m]`` of
fixed degree ``m - k``.  Over a general field elements stay symbolic; over a
finite field :func:`evaluate` maps them to a canonical :class:`KValue`.

>>> from fractions import Fraction
>>> from mwcycles.number_field import QQ
>>> from mwcycles.places import RationalPlace
>>> value(residue(RationalPlace(3), symbol(QQ, 6)))
KValue(F_3, deg 0, MW: rank=1, disc=1)
"""
from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatch, ZeroElement, ZeroSymbolEntry
from .finite_field import FFElem, FiniteField
from .gw import (GWElem, FormalGW, angle, epsilon_coefficients, n_epsilon, norm_to,
                 relative_degree, restrict, transfer, witt_reduce)
from .number_field import QQ, NumElem, QuadraticField

# Sign picked up by each eta when a residue is taken: the rule is
# d(eta x) = ETA_SIGN * eta d(x).  Changing it here changes it everywhere.
ETA_SIGN = -1

MW = "MW"
MILNOR = "Milnor"


# ---------------------------------------------------------------------------
# field helpers


def field_one(F):
    if F == QQ:
        return Fraction(1)
    return F.one


def coerce(F, x):
    """Bring an int, Fraction or field element into ``F``."""
    if F == QQ:
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        raise FieldMismatch(f"{x!r} is not rational")
    if isinstance(F, FiniteField):
        if isinstance(x, FFElem) and x.field != F:
            if x.field in F.tower():
                return F(x)
            raise FieldMismatch(f"{x!r} is not in {F}")
        return F(x)
    if isinstance(F, QuadraticField):
        if isinstance(x, NumElem):
            if x.field != F:
                raise FieldMismatch(f"{x!r} is not in {F}")
            return x
        return F(x)
    return F(x)


def elem_key(x):
    if isinstance(x, Fraction):
        return (x,)
    return x.sort_key()


def elem_str(x):
    s = str(x)
    return s.replace(" ", "")


# ---------------------------------------------------------------------------
# symbolic elements


class KMWElem:
    """Homogeneous element of ``K^MW_n(F)``, kept as a formal combination.

    Terms containing an entry equal to one are dropped (``[1] = 0``).
    """

    __slots__ = ("field", "degree", "terms")

    def __init__(self, field, degree, terms=()):
        self.field = field
        self.degree = degree
        acc = {}
        items = terms.items() if isinstance(terms, dict) else (((k, s), c) for c, k, s in terms)
        one = field_one(field)
        for (k, syms), c in items:
            if not c:
                continue
            if len(syms) - k != degree:
                raise ValueError(f"term of degree {len(syms) - k} in an element of degree {degree}")
            syms = tuple(coerce(field, u) for u in syms)
            for u in syms:
                if u == 0:
                    raise ZeroSymbolEntry("symbol entries must be nonzero")
            if any(u == one for u in syms):
                continue
            key = (k, syms)
            acc[key] = acc.get(key, 0) + c
        self.terms = {key: c for key, c in acc.items() if c}

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, field, degree):
        return cls(field, degree)

    def __iter__(self):
        """Terms ``(coeff, eta_power, entries)`` in a fixed order."""
        for (k, syms) in sorted(self.terms, key=lambda t: (t[0], len(t[1]), tuple(elem_key(u) for u in t[1]))):
            yield self.terms[(k, syms)], k, syms

    def _same(self, other):
        if isinstance(other, int):
            other = constant(self.field, other)
        if not isinstance(other, KMWElem):
            return NotImplemented
        if other.field != self.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")
        return other

    def __add__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        if o.degree != self.degree:
            raise ValueError(f"cannot add degrees {self.degree} and {o.degree}")
        t = dict(self.terms)
        for key, c in o.terms.items():
            t[key] = t.get(key, 0) + c
        return KMWElem(self.field, self.degree, t)

    __radd__ = __add__

    def __neg__(self):
        return KMWElem(self.field, self.degree, {key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        o = self._same(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return KMWElem(self.field, self.degree, {key: c * other for key, c in self.terms.items()})
        o = self._same(other)
        if o is NotImplemented:
            return o
        t = {}
        for (k1, s1), c1 in self.terms.items():
            for (k2, s2), c2 in o.terms.items():
                key = (k1 + k2, s1 + s2)
                t[key] = t.get(key, 0) + c1 * c2
        return KMWElem(self.field, self.degree + o.degree, t)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, KMWElem):
            return NotImplemented
        return self.field == other.field and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def is_zero(self):
        """Syntactic zero (no terms after collection)."""
        return not self.terms

    def entries(self):
        """Every symbol entry occurring in some term."""
        out = []
        for _, _, syms in self:
            for u in syms:
                if u not in out:
                    out.append(u)
        return out

    def map_entries(self, fn, field):
        """Apply a multiplicative map to every entry (used for base change)."""
        return KMWElem(field, self.degree, [(c, k, tuple(fn(u) for u in s)) for c, k, s in self])

    def __str__(self):
        return to_literal(self)

    def __repr__(self):
        return f"KMWElem(deg {self.degree}: {self})"


def to_literal(x):
    """Render in the symbol-literal syntax, e.g. ``3*[u] - eta*[a,b]``."""
    parts = []
    for c, k, syms in x:
        mono = []
        if k == 1:
            mono.append("eta")
        elif k > 1:
            mono.append(f"eta^{k}")
        if syms:
            mono.append("[" + ",".join(elem_str(u) for u in syms) + "]")
        body = "*".join(mono)
        if not body:
            body, c_str = str(abs(c)), ""
        else:
            c_str = "" if abs(c) == 1 else f"{abs(c)}*"
        sign = "-" if c < 0 else "+"
        parts.append((sign, c_str + body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def symbol(field, *entries):
    """The pure symbol ``[u_1, ..., u_m]``."""
    return KMWElem(field, len(entries), [(1, 0, tuple(entries))])


def eta(field, k=1):
    return KMWElem(field, -k, [(1, k, ())])


def constant(field, n):
    return KMWElem(field, 0, [(n, 0, ())])


def angle_elem(field, a):
    """``<a> = 1 + eta[a]`` in degree zero."""
    return KMWElem(field, 0, [(1, 0, ()), (1, 1, (a,))])


def from_gw(field, x):
    """Degree-zero element representing a GW class."""
    if isinstance(x, int):
        return constant(field, x)
    if isinstance(x, GWElem):
        return lift(KValue(field, 0, MW, (x.rank, x.disc)))
    if isinstance(x, FormalGW):
        out = constant(field, 0)
        for a, n in x.terms.items():
            out = out + angle_elem(field, a) * n
        return out
    raise TypeError(f"cannot read {x!r} as a GW element")


def kmw_product(x, y):
    """Concatenate symbols and add eta powers.

    >>> from mwcycles.number_field import QQ
    >>> print(kmw_product(angle_elem(QQ, 2), symbol(QQ, 3)))
    [3] + eta*[2,3]
    """
    return x * y


# ---------------------------------------------------------------------------
# canonical values over finite fields


class KValue:
    """Canonical image of ``K^MW_n(F_q)`` (mode ``MW``) or ``K^M_n(F_q)`` (``Milnor``).

    MW: degree 0 is ``GW(F_q)`` as ``(rank, disc)``; degree 1 is ``F_q^x``
    (stored as a raw unit, written additively); degree >= 2 vanishes;
    negative degrees are ``W(F_q)`` as a reduced ``(rank, disc)``.
    Milnor: degree 0 is ``Z``, degree 1 is ``F_q^x``, everything else is 0.
    """

    __slots__ = ("field", "degree", "mode", "data")

    def __init__(self, field, degree, mode, data):
        self.field = field
        self.degree = degree
        self.mode = mode
        self.data = self._canonical(data)

    def _canonical(self, data):
        F, n = self.field, self.degree
        kind = self.kind
        if kind == "GW":
            r, d = data
            return (r, 0 if F.p == 2 else d % 2)
        if kind == "W":
            return witt_reduce(F, *data)
        if kind == "Z":
            return (data[0],)
        if kind == "unit":
            return data
        return ()

    @property
    def kind(self):
        n = self.degree
        if n == 1:
            return "unit"
        if n >= 2:
            return "zero"
        if self.mode == MILNOR:
            return "Z" if n == 0 else "zero"
        return "GW" if n == 0 else "W"

    @classmethod
    def zero(cls, field, degree, mode=MW):
        v = cls.__new__(cls)
        v.field, v.degree, v.mode = field, degree, mode
        kind = v.kind
        data = {"GW": (0, 0), "W": (0, 0), "Z": (0,), "unit": field.one_raw, "zero": ()}[kind]
        return cls(field, degree, mode, data)

    def _same(self, other):
        if not isinstance(other, KValue):
            raise TypeError(f"cannot combine KValue with {other!r}")
        if (other.field, other.degree, other.mode) != (self.field, self.degree, self.mode):
            raise FieldMismatch("values live in different groups")
        return other

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        o = self._same(other)
        F, kind = self.field, self.kind
        if kind == "unit":
            data = F.mul(self.data, o.data)
        elif kind in ("GW", "W"):
            data = (self.data[0] + o.data[0], self.data[1] + o.data[1])
        elif kind == "Z":
            data = (self.data[0] + o.data[0],)
        else:
            data = ()
        return KValue(F, self.degree, self.mode, data)

    __radd__ = __add__

    def __neg__(self):
        F, kind = self.field, self.kind
        if kind == "unit":
            data = F.inv(self.data)
        elif kind in ("GW", "W"):
            data = (-self.data[0], self.data[1])
        elif kind == "Z":
            data = (-self.data[0],)
        else:
            data = ()
        return KValue(F, self.degree, self.mode, data)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        F, kind = self.field, self.kind
        if kind == "unit":
            data = F.power(self.data, n)
        elif kind in ("GW", "W"):
            data = (self.data[0] * n, self.data[1] * n)
        elif kind == "Z":
            data = (self.data[0] * n,)
        else:
            data = ()
        return KValue(F, self.degree, self.mode, data)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, KValue):
            return NotImplemented
        return (self.field, self.degree, self.mode, self.data) == (
            other.field, other.degree, other.mode, other.data)

    def __hash__(self):
        return hash((self.field, self.degree, self.mode, self.data))

    def is_zero(self):
        return self == KValue.zero(self.field, self.degree, self.mode)

    def gw(self):
        """The degree-zero MW value as a :class:`GWElem`."""
        if self.kind != "GW":
            raise ValueError("not a degree-zero MW value")
        return GWElem(self.field, *self.data)

    def to_json(self):
        kind = self.kind
        out = {"degree": self.degree, "mode": self.mode, "q": self.field.order}
        if kind in ("GW", "W"):
            out["rank"] = self.data[0]
            if self.field.p != 2:
                out["disc"] = self.data[1]
        elif kind == "Z":
            out["rank"] = self.data[0]
        elif kind == "unit":
            out["unit"] = elem_str(FFElem(self.field, self.data))
        out["kind"] = kind
        return out

    def __str__(self):
        kind = self.kind
        if kind == "zero":
            return "0"
        if kind == "unit":
            return f"[{elem_str(FFElem(self.field, self.data))}]"
        if kind == "Z":
            return str(self.data[0])
        r, d = self.data
        tag = "W" if kind == "W" else "GW"
        if self.field.p == 2:
            return f"{tag}(rank={r})"
        return f"{tag}(rank={r}, disc={d})"

    def __repr__(self):
        body = str(self)
        if self.kind in ("GW", "W"):
            body = body[body.index("(") + 1:-1]
        return f"KValue(F_{self.field.order}, deg {self.degree}, {self.mode}: {body})"


def _chi(F, u):
    """0 for squares, 1 otherwise (always 0 in characteristic 2)."""
    return 0 if F.is_square_raw(u) else 1


def evaluate(x, mode=MW):
    """Canonical value of a symbolic element over a finite field."""
    F = x.field
    if not isinstance(F, FiniteField):
        raise TypeError("canonical values exist only over finite fields")
    n = x.degree
    out = KValue.zero(F, n, mode)
    kind = out.kind
    if kind == "zero":
        return out
    for c, k, syms in x:
        if mode == MILNOR and k:
            continue
        m = len(syms)
        raws = [u.raw for u in syms]
        if kind == "unit":
            if k == 0:
                out = out + KValue(F, n, mode, F.power(raws[0], c))
        elif kind == "Z":
            out = out + KValue(F, n, mode, (c,))
        elif kind == "GW":
            if k == 0:
                out = out + KValue(F, n, mode, (c, 0))
            elif k == 1:
                out = out + KValue(F, n, mode, (0, c * _chi(F, raws[0])))
        else:  # W in degree n < 0: eta^j -> <1>, eta^(j+1)[u] -> <u> - 1
            if m == 0:
                out = out + KValue(F, n, mode, (c, 0))
            elif m == 1:
                out = out + KValue(F, n, mode, (0, c * _chi(F, raws[0])))
    return out


value = evaluate


def lift(v):
    """A symbolic element with canonical value ``v``."""
    F, n, kind = v.field, v.degree, v.kind
    if kind == "zero":
        return KMWElem.zero(F, n)
    if kind == "unit":
        return symbol(F, F.elem(v.data))
    if kind == "Z":
        return constant(F, v.data[0])
    r, d = v.data
    j = -n
    terms = [(r, j, ())]
    if d:
        terms.append((d, j + 1, (F.nonsquare(),)))
    return KMWElem(F, n, terms)


def gw_action(v, a):
    """``<a> . v`` for a unit ``a`` of the field of ``v``."""
    F = v.field
    a = coerce(F, a)
    if v.mode == MILNOR or v.kind in ("unit", "zero"):
        return v
    r, d = v.data
    return KValue(F, v.degree, v.mode, (r, d + r * _chi(F, a.raw)))


def times_symbol(a, v):
    """``[a] . v``."""
    return evaluate(symbol(v.field, a) * lift(v), v.mode)


def times_eta(v):
    if v.mode == MILNOR:
        return KValue.zero(v.field, v.degree - 1, MILNOR)
    return evaluate(eta(v.field) * lift(v), v.mode)


def transfer_value(v, K, mode="trace"):
    """Transfer along ``L = v.field`` over its subfield ``K``."""
    L, kind = v.field, v.kind
    if L == K:
        return v
    if kind == "zero":
        return KValue.zero(K, v.degree, v.mode)
    if kind == "unit":
        # <f'(theta)> acts trivially on K^MW_1 of a finite field
        return KValue(K, v.degree, v.mode, norm_to(L, K, v.data))
    if kind == "Z":
        return KValue(K, v.degree, v.mode, (v.data[0] * relative_degree(L, K),))
    t = transfer(GWElem(L, *v.data), K, mode)
    return KValue(K, v.degree, v.mode, (t.rank, t.disc))


def restrict_value(v, L):
    K, kind = v.field, v.kind
    if K == L:
        return v
    if kind == "zero":
        return KValue.zero(L, v.degree, v.mode)
    if kind == "unit":
        return KValue(L, v.degree, v.mode, L.embed(v.data, K))
    if kind == "Z":
        return KValue(L, v.degree, v.mode, v.data)
    r = restrict(GWElem(K, *v.data), L)
    return KValue(L, v.degree, v.mode, (r.rank, r.disc))


def to_mode(v, mode):
    """Forget eta: the map from MW values to Milnor values."""
    if v.mode == mode:
        return v
    if mode == MW:
        raise ValueError("Milnor values do not lift canonically")
    kind = v.kind
    if kind == "GW":
        return KValue(v.field, 0, MILNOR, (v.data[0],))
    if kind == "unit":
        return KValue(v.field, 1, MILNOR, v.data)
    return KValue.zero(v.field, v.degree, MILNOR)


# ---------------------------------------------------------------------------
# residues


class _Pi:
    """Marker for the chosen uniformizer inside the rewriting engine."""

    def __repr__(self):
        return "PI"


PI = _Pi()


def _rewrite(place, x):
    """Rewrite ``x`` so each slot is PI or a unit, with at most one PI, in front.

    Returns ``{(k, slots): coeff}``; slots keep the PI marker.
    """
    F = x.field
    one = field_one(F)
    minus_one = coerce(F, -1)
    char2 = minus_one == one
    stack = [(c, k, list(s)) for c, k, s in x]
    out = {}

    def emit(c, k, slots):
        key = (k, tuple(slots))
        out[key] = out.get(key, 0) + c

    while stack:
        c, k, slots = stack.pop()
        if any(s is not PI and s == one for s in slots):
            continue
        i = next((j for j, s in enumerate(slots) if s is not PI and place.valuation(s) != 0), None)
        if i is not None:
            n, u = place.split(slots[i])
            a, b = epsilon_coefficients(n)
            # [pi^n] = n_eps [pi] = (a + b)[pi] + b eta[pi][-1]
            power = [(a + b, 0, [PI])]
            if b and not char2:
                power.append((b, 1, [PI, minus_one]))
            pieces = list(power)
            if u != one:
                # [pi^n u] = [pi^n] + [u] + eta[pi^n][u]
                pieces.append((1, 0, [u]))
                pieces.extend((cc, dk + 1, ss + [u]) for cc, dk, ss in power)
            for cc, dk, ss in pieces:
                if cc:
                    stack.append((c * cc, k + dk, slots[:i] + ss + slots[i + 1:]))
            continue
        pis = [j for j, s in enumerate(slots) if s is PI]
        if not pis or pis == [0]:
            emit(c, k, slots)
            continue
        if k >= 1:
            # eta-terms are symmetric in their slots
            units = [s for s in slots if s is not PI]
            stack.append((c, k, [PI] + [minus_one] * (len(pis) - 1) + units))
            continue
        j = next((j for j in range(1, len(slots)) if slots[j] is PI and slots[j - 1] is not PI), None)
        if j is not None:
            a = slots[j - 1]
            # [a][pi] = -[pi][a] - eta[-1][pi][a]
            stack.append((-c, k, slots[:j - 1] + [PI, a] + slots[j + 1:]))
            if not char2:
                stack.append((-c, k + 1, slots[:j - 1] + [minus_one, PI, a] + slots[j + 1:]))
            continue
        # PI's are in front: [pi][pi] = [pi][-1]
        stack.append((c, k, [PI, minus_one] + slots[2:]))
    return {key: c for key, c in out.items() if c}


def normalize_at(place, x):
    """π-normal form of ``x`` at ``place``.

    Every slot of the result is the uniformizer or a unit, and the
    uniformizer occurs at most once per term, in the first slot.  Only the
    defining relations are used, so the value in ``K^MW`` is unchanged.
    """
    pi = place.uniformizer
    terms = [(c, k, tuple(pi if s is PI else s for s in slots))
             for (k, slots), c in _rewrite(place, x).items()]
    return KMWElem(x.field, x.degree, terms)


def residue(place, x):
    """Residue ``d_v(x)`` in ``K^MW_{n-1}`` of the residue field of ``place``.

    >>> from mwcycles.places import RationalPlace
    >>> from mwcycles.number_field import QQ
    >>> value(residue(RationalPlace(5), symbol(QQ, 50)))
    KValue(F_5, deg 0, MW: rank=2, disc=0)
    """
    kappa = place.residue_field
    terms = []
    for (k, slots), c in _rewrite(place, x).items():
        if not slots or slots[0] is not PI:
            continue
        bars = tuple(place.residue_class(u) for u in slots[1:])
        terms.append((c * ETA_SIGN ** k, k, bars))
    return KMWElem(kappa, x.degree - 1, terms)


def residue_closed_form(place, u):
    """``v(u)_eps <(u pi^(-v(u)))bar>`` as a canonical GW element (degree-one oracle)."""
    n, w = place.split(u)
    kappa = place.residue_field
    if n == 0:
        return GWElem.zero(kappa)
    return n_epsilon(n, kappa) * angle(kappa, place.residue_class(w))


def support_of(x, places_of):
    """Union of the supports of the divisors of the entries of ``x``.

    ``places_of(u)`` returns the places where ``u`` is not a unit.
    """
    out = []
    for u in x.entries():
        for P in places_of(u):
            if P not in out:
                out.append(P)
    return out
