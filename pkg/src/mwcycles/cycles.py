"""Cycle complexes over one-dimensional models and the basic maps between them.

A model is a point ``Spec F``, the spectrum of a quadratic ring of integers,
the affine line (optionally with finitely many closed points removed) or
the projective line over a finite field.  Its cycles of dimension one sit
at the generic point; cycles of dimension zero are finite sums over closed
points with coefficients in the residue fields.

>>> from mwcycles.finite_field import make_finite_field
>>> X = AffineLine(make_finite_field(3))
>>> [X.point_label(x) for x in X.closed_points(1)]
['t', 't+1', 't+2']
"""
from __future__ import annotations

from sympy import factorint

from .errors import (FieldMismatch, NoPreimageFound, NotGlobalUnit, SupportMeetsZ,
                     UnsupportedMorphism)
from .finite_field import FFElem, FiniteField, Poly, factor_poly, irreducibles_up_to
from .function_field import RatFunc, RationalFunctionField
from .kmw import (MILNOR, MW, KMWElem, KValue, angle_elem, coerce, eta, evaluate, lift,
                  residue, symbol, transfer_value, restrict_value)
from .number_field import QQ, NumElem, QuadraticField, quadratic_field, split_prime
from .places import IdealPlace, InfinityPlace, PolyPlace, RationalPlace
from .classgroup import primes_up_to_norm

GENERIC = "generic"
OMEGA = "omega"


# ---------------------------------------------------------------------------
# models


class CurveModel:
    """Common interface; see the concrete subclasses."""

    kind = None
    function_field = None

    def closed_points(self, bound):
        raise NotImplementedError

    def support(self, alpha):
        """Closed points where some entry of ``alpha`` is not a unit."""
        raise NotImplementedError

    def point_label(self, x):
        return x.label().replace(" ", "")

    def __eq__(self, other):
        return type(self) is type(other) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"<model {self.spec()}>"


class SpecPoint:
    """The unique point of ``Spec F``."""

    def __init__(self, field):
        self.residue_field = field

    def label(self):
        return "pt"

    def __eq__(self, other):
        return isinstance(other, SpecPoint) and other.residue_field == self.residue_field

    def __hash__(self):
        return hash(("pt", self.residue_field))

    def sort_key(self):
        return (0,)

    @property
    def degree(self):
        return 1


class SpecField(CurveModel):
    """``Spec F`` for a finite field ``F`` (a zero-dimensional model)."""

    kind = "field"

    def __init__(self, field):
        self.base = field
        self.point = SpecPoint(field)

    def _key(self):
        return ("field", self.base)

    def spec(self):
        return f"field:{self.base.order}"

    def closed_points(self, bound=1):
        return [self.point]

    def support(self, alpha):
        return []

    def is_global_unit(self, a):
        return not coerce(self.base, a).is_zero()


class SpecOK(CurveModel):
    """``Spec O_K`` for ``K = Q(sqrt d)``; ``d = 1`` gives ``Spec Z``."""

    kind = "ok"

    def __init__(self, d):
        self.d = d
        self.function_field = QQ if d == 1 else quadratic_field(d)

    def _key(self):
        return ("ok", self.function_field)

    def spec(self):
        return f"ok:{self.d}"

    def closed_points(self, bound):
        K = self.function_field
        if K == QQ:
            from sympy import primerange
            return [RationalPlace(p) for p in primerange(2, int(bound) + 1)]
        return [IdealPlace(P) for P in primes_up_to_norm(K, bound)]

    def places_of(self, u):
        K = self.function_field
        if K == QQ:
            out = []
            for n in (u.numerator, u.denominator):
                out.extend(RationalPlace(p) for p in factorint(abs(n)))
            return sorted(set(out), key=lambda P: P.sort_key())
        N = u.norm()
        out = []
        for n in (N.numerator, N.denominator):
            for p in factorint(abs(n)):
                for P in split_prime(K, p):
                    pl = IdealPlace(P)
                    if pl not in out and pl.valuation(u) != 0:
                        out.append(pl)
        return sorted(out, key=lambda P: P.sort_key())

    def support(self, alpha):
        out = []
        for u in alpha.entries():
            for P in self.places_of(u):
                if P not in out:
                    out.append(P)
        return sorted(out, key=lambda P: P.sort_key())

    def is_global_unit(self, a):
        K = self.function_field
        a = coerce(K, a)
        if K == QQ:
            return a in (1, -1)
        return a.is_integral() and abs(a.norm()) == 1


class _Line(CurveModel):
    def __init__(self, field, removed=()):
        self.base = field
        self.function_field = RationalFunctionField(field)
        self.removed = tuple(sorted((g.monic() for g in removed), key=lambda g: g.sort_key()))
        self._places = {}

    def _key(self):
        return (self.kind, self.base, self.removed)

    def place(self, g):
        g = g.monic()
        if g not in self._places:
            self._places[g] = PolyPlace(self.function_field, g)
        return self._places[g]

    @property
    def infinity(self):
        if "inf" not in self._places:
            self._places["inf"] = InfinityPlace(self.function_field)
        return self._places["inf"]

    def finite_points(self, bound):
        return [self.place(g) for g in irreducibles_up_to(self.base, bound) if g not in self.removed]

    def finite_support(self, alpha):
        out = []
        for u in alpha.entries():
            for part in (u.num, u.den):
                if part.degree < 1:
                    continue
                for g, _ in factor_poly(part)[1]:
                    if g not in self.removed and self.place(g) not in out:
                        out.append(self.place(g))
        return sorted(out, key=lambda P: P.sort_key())

    def twist_unit(self, x):
        """Comparison unit between ``d pi_x`` and ``dt``: ``f'(theta)`` or ``-1`` at infinity."""
        kappa = x.residue_field
        if isinstance(x, InfinityPlace):
            return kappa(-1)
        g = x.g
        if g.degree == 1:
            return kappa.one
        return FFElem(kappa, g.derivative()(kappa.gen_raw, field=kappa))

    def is_global_unit(self, a):
        T = self.function_field
        a = T(a) if not isinstance(a, RatFunc) else a
        if a.is_zero():
            return False
        for part in (a.num, a.den):
            if part.degree >= 1:
                for g, _ in factor_poly(part)[1]:
                    if g not in self.removed:
                        return False
        return True

    def parse_point(self, text):
        from .literals import parse_place
        pl = parse_place(self.function_field, text)
        if isinstance(pl, InfinityPlace):
            return self.infinity
        return self.place(pl.g)


class AffineLine(_Line):
    """``A^1`` over ``F``, with the closed points of ``removed`` deleted."""

    kind = "a1"

    def spec(self):
        s = f"a1:{self.base.order}"
        for g in self.removed:
            s += "-" + g.to_str("t").replace(" ", "")
        return s

    def closed_points(self, bound):
        return self.finite_points(bound)

    def support(self, alpha):
        return self.finite_support(alpha)


class ProjLine(_Line):
    """``P^1`` over ``F``; infinity carries the uniformizer ``1/t``."""

    kind = "p1"

    def spec(self):
        return f"p1:{self.base.order}"

    def closed_points(self, bound):
        return self.finite_points(bound) + [self.infinity]

    def support(self, alpha):
        out = self.finite_support(alpha)
        inf = self.infinity
        if any(inf.valuation(u) != 0 for u in alpha.entries()):
            out.append(inf)
        return out


def parse_model(text):
    """``field:Q``, ``ok:D``, ``a1:Q`` or ``p1:Q``."""
    from .finite_field import finite_field_of_order
    from .errors import LiteralError
    kind, _, arg = text.strip().partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise LiteralError(f"bad model {text!r}") from None
    if kind == "ok":
        return SpecOK(n)
    F = finite_field_of_order(n)
    if kind == "a1":
        return AffineLine(F)
    if kind == "p1":
        return ProjLine(F)
    if kind == "field":
        return SpecField(F)
    raise LiteralError(f"bad model {text!r}")


# ---------------------------------------------------------------------------
# cycles


class Cycle:
    """Finite formal sum of coefficients over the points of a model.

    ``entries`` maps points (or :data:`GENERIC`) to symbolic elements over
    the residue field.  Equality of zero-dimensional cycles compares
    canonical values; generic entries compare syntactically.
    """

    def __init__(self, model, dim, degree, entries=None, mode=MW, twist=None):
        self.model = model
        self.dim = dim
        self.degree = degree
        self.mode = mode
        self.twist = twist
        clean = {}
        for x, e in (entries or {}).items():
            if e.degree != degree:
                raise ValueError(f"entry of degree {e.degree} in a cycle of degree {degree}")
            if mode == MILNOR:
                e = KMWElem(e.field, e.degree, {key: c for key, c in e.terms.items() if key[0] == 0})
            if e.is_zero():
                continue
            if dim == 0 and isinstance(e.field, FiniteField) and evaluate(e, mode).is_zero():
                continue
            clean[x] = e
        self.entries = clean

    def _like(self, entries, degree=None):
        return Cycle(self.model, self.dim, self.degree if degree is None else degree,
                     entries, self.mode, self.twist)

    def points(self):
        return sorted(self.entries, key=lambda x: x.sort_key() if x != GENERIC else (-1,))

    def values(self):
        """Canonical value at each point of a zero-dimensional cycle."""
        if self.dim != 0:
            raise ValueError("canonical values exist for zero-cycles only")
        return {x: evaluate(self.entries[x], self.mode) for x in self.points()}

    def __add__(self, other):
        if (other.model, other.dim, other.degree) != (self.model, self.dim, self.degree):
            raise FieldMismatch("cycles live in different groups")
        out = dict(self.entries)
        for x, e in other.entries.items():
            out[x] = out[x] + e if x in out else e
        return self._like(out)

    def __neg__(self):
        return self._like({x: -e for x, e in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        if (other.model, other.dim, other.degree) != (self.model, self.dim, self.degree):
            return False
        if self.dim == 0:
            return self.values() == other.values()
        return self.entries == other.entries

    def is_zero(self):
        return not self.entries

    def to_json(self):
        return {
            "model": self.model.spec(),
            "mode": self.mode,
            "twist": self.twist or "none",
            "entries": [{"point": GENERIC if x == GENERIC else self.model.point_label(x),
                         "value": str(self.entries[x])} for x in self.points()],
        }

    def __repr__(self):
        body = ", ".join(f"{GENERIC if x == GENERIC else self.model.point_label(x)}: {self.entries[x]}"
                         for x in self.points())
        return f"Cycle({self.model.spec()}, dim {self.dim}, deg {self.degree}: {{{body}}})"


def cycle_from_json(obj):
    """Inverse of :meth:`Cycle.to_json` for line and point models."""
    from .errors import LiteralError
    model = parse_model(obj["model"])
    mode = {"mw": MW, "milnor": MILNOR}.get(str(obj.get("mode", "MW")).lower())
    if mode is None:
        raise LiteralError(f"bad mode {obj.get('mode')!r}")
    twist = obj.get("twist", "none")
    twist = None if twist in (None, "none") else twist
    entries, dims, degs = {}, set(), set()
    for item in obj.get("entries", []):
        label = item["point"]
        if label == GENERIC:
            x, field, dims_ = GENERIC, model.function_field, 1
        elif isinstance(model, SpecField):
            x, field, dims_ = model.point, model.base, 0
        else:
            x = model.parse_point(label)
            field, dims_ = x.residue_field, 0
        e = _parse_entry(item["value"], field)
        entries[x] = e
        dims.add(dims_)
        degs.add(e.degree)
    if len(dims) > 1 or len(degs) > 1:
        raise LiteralError("mixed dimensions or degrees in a cycle")
    dim = dims.pop() if dims else 0
    degree = degs.pop() if degs else int(obj.get("degree", 0))
    return Cycle(model, dim, degree, entries, mode, twist)


def _parse_entry(text, field):
    from .literals import parse_symbol_literal
    return parse_symbol_literal(text, field)


# ---------------------------------------------------------------------------
# the basic maps


def differential(model, alpha, mode=MW, twist=None):
    """``d(alpha)``: the residues of a function-field element at every closed point.

    With ``twist="omega"`` (lines only) each residue is multiplied by the
    comparison unit of :meth:`twist_unit`, trivializing against ``dt``.
    """
    entries = {}
    for x in model.support(alpha):
        r = residue(x, alpha)
        if twist == OMEGA:
            r = angle_elem(r.field, model.twist_unit(x)) * r
        entries[x] = r
    return Cycle(model, 0, alpha.degree - 1, entries, mode, twist)


class ToBase:
    """Structure morphism of a line (or point) to ``Spec F``."""

    def __init__(self, model):
        self.source = model
        if not isinstance(model, (_Line, SpecField)):
            raise UnsupportedMorphism(f"no structure morphism for {model.spec()}")
        self.target = SpecField(model.base)


class PointInclusion:
    """Closed immersion ``Spec kappa(x) -> X``."""

    def __init__(self, model, point):
        self.target = model
        self.point = point
        self.source = SpecField(point.residue_field)


class FieldExtension:
    """``Spec L -> Spec K`` for a finite extension of finite fields."""

    def __init__(self, L, K):
        if K not in L.tower():
            raise UnsupportedMorphism("K must be a subfield of L")
        self.source = SpecField(L)
        self.target = SpecField(K)


def _point_transfer(model, x, v, twist):
    # omega-twisted entries are already trivialized against dt, so the
    # canonical (trace) transfer applies; untwisted ones use f'(theta)
    return transfer_value(v, model.base, "trace" if twist == OMEGA else "geometric")


def pushforward(f, c):
    """Componentwise transfer along ``f``; generic entries go to zero."""
    if isinstance(f, ToBase):
        if c.model != f.source:
            raise UnsupportedMorphism("cycle does not live on the source")
        F = f.target.base
        total = KValue.zero(F, c.degree, c.mode)
        if c.dim == 0:
            for x, v in c.values().items():
                if isinstance(c.model, SpecField):
                    total = total + v
                else:
                    total = total + _point_transfer(c.model, x, v, c.twist)
        return Cycle(f.target, 0, c.degree, {f.target.point: lift(total)}, c.mode)
    if isinstance(f, PointInclusion):
        if c.model != f.source or c.dim != 0:
            raise UnsupportedMorphism("cycle does not live on the source point")
        e = c.entries.get(f.source.point)
        entries = {} if e is None else {f.point: e}
        return Cycle(f.target, 0, c.degree, entries, c.mode, c.twist)
    if isinstance(f, FieldExtension):
        K = f.target.base
        total = KValue.zero(K, c.degree, c.mode)
        for v in c.values().values():
            total = total + _tower_transfer(v, K)
        return Cycle(f.target, 0, c.degree, {f.target.point: lift(total)}, c.mode)
    raise UnsupportedMorphism(f"pushforward along {f!r}")


def _tower_transfer(v, K):
    """Geometric transfer through each simple step of the tower."""
    L = v.field
    while L != K:
        v = transfer_value(v, L.base, "geometric")
        L = L.base
    return v


def pullback(g, c):
    """Restriction to the generic point (for ``ToBase``) or base extension."""
    if isinstance(g, ToBase):
        model = g.source
        if isinstance(model, SpecField):
            return c
        T = model.function_field
        e = c.entries.get(g.target.point)
        entries = {} if e is None else {GENERIC: e.map_entries(T.const, T)}
        return Cycle(model, 1, c.degree, entries, c.mode)
    if isinstance(g, FieldExtension):
        L = g.source.base
        e = c.entries.get(g.target.point)
        entries = {} if e is None else {g.source.point: e.map_entries(L, L)}
        return Cycle(g.source, 0, c.degree, entries, c.mode)
    raise UnsupportedMorphism(f"pullback along {g!r}")


def mult_unit(a, c):
    """``[a] . c`` for a global unit ``a`` of the model (degree goes up by one)."""
    model = c.model
    if not model.is_global_unit(a):
        raise NotGlobalUnit(f"{a} is not a unit on {model.spec()}")
    entries = {}
    for x, e in c.entries.items():
        if x == GENERIC:
            u = coerce(model.function_field, a)
        elif isinstance(x, SpecPoint):
            u = coerce(model.base, a)
        else:
            u = x.residue_class(coerce(model.function_field, a))
        entries[x] = symbol(e.field, u) * e
    return c._like(entries, c.degree + 1)


def mult_eta(c):
    """``eta . c`` (degree goes down by one); zero in Milnor mode."""
    entries = {x: eta(e.field) * e for x, e in c.entries.items()}
    return c._like(entries, c.degree - 1)


def boundary_triple(c, Z=None):
    """Boundary map of ``Z = V(t) -> A^1 <- A^1 - Z`` applied to a cycle on the complement.

    Returns the coefficient over ``F`` at the point of ``Z``.
    """
    model = c.model
    F = model.base
    t = Poly.x(F)
    if Z is None:
        Z = t
    if not isinstance(model, AffineLine) or Z not in model.removed:
        raise UnsupportedMorphism("the cycle must live on A^1 minus the point Z")
    for x in c.entries:
        if x != GENERIC and x.g == Z:
            raise SupportMeetsZ("cycle is supported on Z")
    place = PolyPlace(model.function_field, Z)
    e = c.entries.get(GENERIC)
    if c.dim == 0 or e is None:
        return KMWElem.zero(place.residue_field, c.degree - 1)
    return residue(place, e)


def punctured_line(F, *points):
    """``A^1`` minus the given monic irreducibles (``t`` by default)."""
    return AffineLine(F, points or (Poly.x(F),))


def reciprocity_sum(model, alpha):
    """``sum_x cores_x(d_x alpha)`` on ``P^1`` with the omega trivialization; always zero.

    >>> from mwcycles.finite_field import make_finite_field
    >>> X = ProjLine(make_finite_field(5))
    >>> T = X.function_field
    >>> reciprocity_sum(X, symbol(T, T.t ** 2 - 2)).is_zero()
    True
    """
    if not isinstance(model, ProjLine):
        raise UnsupportedMorphism("reciprocity is stated for the projective line")
    d = differential(model, alpha, MW, OMEGA)
    return pushforward(ToBase(model), d).values().get(ToBase(model).target.point,
                                                     KValue.zero(model.base, alpha.degree - 1))


# ---------------------------------------------------------------------------
# homotopy invariance: preimages under d


def h_preimage(target, bound=None, max_steps=10_000):
    """An ``alpha`` over ``F(t)`` with ``differential(alpha) = target`` on ``A^1``.

    Built by degree descent: the highest-degree point is cleared by a symbol
    in its own polynomial, which only creates residues at lower degrees.
    """
    model = target.model
    if not isinstance(model, AffineLine) or model.removed:
        raise UnsupportedMorphism("h_preimage works on the affine line")
    if target.dim != 0:
        raise ValueError("target must be a zero-cycle")
    T = model.function_field
    n = target.degree
    mode = target.mode
    alpha = KMWElem.zero(T, n + 1)
    remaining = target.values()
    remaining = {x: v for x, v in remaining.items() if not v.is_zero()}
    if bound is not None and any(x.degree > bound for x in remaining):
        raise ValueError("target is supported beyond the degree bound")
    for _ in range(max_steps):
        if not remaining:
            return alpha
        x = max(remaining, key=lambda y: (y.degree,) + y.sort_key())
        beta = _clear_point(model, x, remaining[x], mode)
        alpha = alpha + beta
        d = differential(model, beta, mode).values()
        for y, v in d.items():
            w = remaining.get(y, KValue.zero(y.residue_field, n, mode)) - v
            if w.is_zero():
                remaining.pop(y, None)
            else:
                remaining[y] = w
        if x in remaining:
            raise NoPreimageFound(f"failed to clear {model.point_label(x)}")
    raise NoPreimageFound("degree descent did not terminate")


def _clear_point(model, x, v, mode):
    """An element whose residue at ``x`` is ``v`` and whose other residues sit lower."""
    T = model.function_field
    f = T(x.g)
    kind = v.kind
    n = v.degree
    if kind == "zero":
        return KMWElem.zero(T, n + 1)
    if kind == "unit":
        g = T(x.lift(FFElem(x.residue_field, v.data)))
        return symbol(T, f, g)
    if kind == "Z":
        return symbol(T, f) * v.data[0]
    j = -n  # value lives in GW (j = 0) or W (j > 0); eta^j shifts it
    r, d = v.data
    if j % 2:
        r = -r  # d(eta^j y) = (-1)^j eta^j d(y)
    base = symbol(T, f) * r
    if d:
        g = T(x.lift(FFElem(x.residue_field, x.residue_field.nonsquare_raw)))
        base = symbol(T, f) * (r - 1) + symbol(T, g * f)
    if j == 0:
        return base
    return eta(T, j) * base
