"""Chow-Witt groups of zero cycles: quadratic number rings and the line.

The group is the cokernel of the total residue map from ``K^MW_1`` of the
function field into the sum of ``GW`` of the residue fields.  That sum is
infinite, so it is truncated to points of bounded norm (or degree), and the
relations are harvested from elements of bounded height.  Bounds double until
two consecutive stages agree and the witness conditions hold; the
:class:`StabilizationCertificate` records every stage.

>>> G, cert = chow_witt_number_ring(-1)
>>> str(G), cert.stable
('0', True)
"""
from __future__ import annotations

import math

from .abelian import (FPAbelianGroup, GroupInvariants, IntMatrix, LatticeBuilder,
                      invariants, lattices_equal)
from .classgroup import class_group, primes_up_to_norm, smooth_elements
from .cycles import GENERIC, OMEGA, AffineLine, ProjLine, SpecOK, differential
from .errors import InconsistentWithTheorem, NotStabilized
from .finite_field import irreducibles_up_to
from .kmw import MILNOR, MW, KMWElem, eta, evaluate, residue, symbol
from .number_field import QQ, NumElem, quadratic_field
from .places import IdealPlace

MAX_STAGES = 6


# ---------------------------------------------------------------------------
# the residue vector of a degree-one element


class TdivVector:
    """Sparse map from places to canonical ``GW`` elements of their residue fields."""

    def __init__(self, entries):
        self.entries = {P: g for P, g in entries.items() if not g.is_zero()}

    def places(self):
        return sorted(self.entries, key=lambda P: P.sort_key())

    def zdiv(self):
        """The rank part: the ordinary divisor."""
        return {P: self.entries[P].rank for P in self.places()}

    def is_zero(self):
        return not self.entries

    def __getitem__(self, P):
        return self.entries[P]

    def __eq__(self, other):
        return isinstance(other, TdivVector) and self.entries == other.entries

    def to_json(self):
        return [dict(prime=P.label(), **self.entries[P].to_json()) for P in self.places()]

    def __repr__(self):
        body = ", ".join(f"{P.label()}: {tuple(self.entries[P].coords())}" for P in self.places())
        return f"TdivVector({{{body}}})"


def tdiv(K, alpha):
    """Residues of a degree-one element at every prime of its support.

    ``K`` is ``QQ`` or a quadratic field; ``alpha`` a combination of ``[u]``.

    >>> from mwcycles.kmw import symbol
    >>> tdiv(QQ, symbol(QQ, 6))
    TdivVector({2: (1,), 3: (1, 1)})
    """
    if alpha.degree != 1:
        raise ValueError("tdiv takes elements of degree one")
    model = SpecOK(1 if K == QQ else K.d)
    out = {}
    for P in model.support(alpha):
        v = evaluate(residue(P, alpha))
        out[P] = v.gw()
    return TdivVector(out)


# ---------------------------------------------------------------------------
# certificates


class StabilizationCertificate:
    """Audit record for a truncated cokernel computation."""

    def __init__(self, kind, stages, group, stable, flags=None, witnesses=None, monotone=True):
        self.kind = kind
        self.stages = stages
        self.group = group
        self.stable = stable
        self.flags = flags or {"surjects_mod2": False, "hyperbolic_kernel_match": False,
                               "finite": group.free_rank == 0 if group else False}
        self.witnesses = witnesses or {}
        self.monotone = monotone

    @property
    def prime_bound(self):
        return self.stages[-1]["B"] if self.stages else None

    @property
    def height_bound(self):
        return self.stages[-1]["H"] if self.stages else None

    def to_json(self):
        return {
            "group": self.group.to_json() if self.group else None,
            "stable": self.stable,
            "stages": [{"B": s["B"], "H": s["H"], "order": s["order"],
                        "generators": s["generators"], "relations": s["relations"]}
                       for s in self.stages],
            "flags": dict(self.flags),
        }

    def __repr__(self):
        return f"<certificate {self.kind} stable={self.stable} group={self.group}>"


def _monotone(stages):
    orders = [s["order"] for s in stages]
    for a, b in zip(orders, orders[1:]):
        if a is not None and (b is None or b > a):
            return False
    return True


# ---------------------------------------------------------------------------
# presentations on rank and discriminant coordinates


class _Presentation:
    """Generators ``rank_x`` (and ``disc_x`` of order 2 where ``GW`` has it)."""

    def __init__(self, points, with_disc):
        self.points = points
        self.rank_index = {}
        self.disc_index = {}
        n = 0
        for x in points:
            self.rank_index[x] = n
            n += 1
        for x in points:
            if with_disc(x):
                self.disc_index[x] = n
                n += 1
        self.n = n
        self.rows = LatticeBuilder(n)
        self.milnor = LatticeBuilder(len(points))
        self.count = 0
        for i in self.disc_index.values():
            self.rows.add(self._unit(i, 2))

    def _unit(self, i, c=1):
        v = [0] * self.n
        v[i] = c
        return v

    def vector(self, coords):
        """``{point: (rank, disc)}`` to a vector; ``None`` if a point is outside."""
        v = [0] * self.n
        for x, (r, d) in coords.items():
            if x not in self.rank_index:
                return None
            v[self.rank_index[x]] = r
            if x in self.disc_index:
                v[self.disc_index[x]] = d % 2
        return v

    def add(self, coords):
        v = self.vector(coords)
        if v is None:
            return False
        self.count += 1
        self.milnor.add(v[:len(self.points)])
        return self.rows.add(v)

    def group(self):
        return invariants(FPAbelianGroup(self.n, self.rows.matrix()))

    def milnor_group(self):
        return invariants(FPAbelianGroup(len(self.points), self.milnor.matrix()))

    def labels(self, label):
        out = [f"rank@{label(x)}" for x in self.points]
        out += [f"disc@{label(x)}" for x in self.points if x in self.disc_index]
        return out


def _gw_coords(g):
    return (g.rank, g.disc)


# ---------------------------------------------------------------------------
# number rings


def _number_ring_stage(K, B, H, mode):
    S = primes_up_to_norm(K, B)
    places = [IdealPlace(P) for P in S]
    by_ideal = dict(zip(S, places))
    odd = (lambda x: x.ideal.p != 2) if mode == MW else (lambda x: False)
    pres = _Presentation(places, odd)
    hit = {x: set() for x in places if odd(x)}
    witnesses = []
    for alpha, div in smooth_elements(K, S, H):
        for a in (alpha, -alpha):
            t = tdiv(K, symbol(K, a))
            coords = {x: _gw_coords(t.entries[x]) for x in t.places()}
            for x, (r, d) in coords.items():
                if x in hit and r % 2:
                    hit[x].add(d)
            if pres.add(coords):
                witnesses.append(a)
    return pres, hit, witnesses, by_ideal


def _default_bound(K):
    return max(4, math.ceil(K.minkowski_bound()))


def chow_witt_number_ring(d, B=None, H=8, mode=MW, max_stages=MAX_STAGES, check=True):
    """``CH~^1`` of the ring of integers of ``Q(sqrt d)`` with its certificate.

    ``mode=MILNOR`` drops the discriminant coordinates and computes ``CH^1``.
    With ``check`` the exact-sequence flags are computed on the final stage
    and :class:`InconsistentWithTheorem` is raised if one fails.
    """
    K = quadratic_field(d)
    B = _default_bound(K) if B is None else B
    cl = invariants(class_group(K)[0])
    stages, prev, prev_ok = [], None, False
    for _ in range(max_stages):
        pres, hit, witnesses, _ = _number_ring_stage(K, B, H, mode)
        G = pres.group()
        stages.append({"B": B, "H": H, "order": G.order, "generators": pres.n,
                       "relations": pres.count})
        conditions = pres.milnor_group() == cl and all(len(s) == 2 for s in hit.values())
        if prev is not None and G == prev and conditions and prev_ok:
            cert = StabilizationCertificate("ok", stages, G, True, witnesses={
                "elements": [str(a) for a in witnesses]}, monotone=_monotone(stages))
            cert.presentation = pres
            cert.field = K
            if mode == MW:
                report = exact_sequence_report(pres)
                cert.flags = report["flags"]
                if check and not all(cert.flags.values()):
                    raise InconsistentWithTheorem(report)
            else:
                cert.flags = {"surjects_mod2": True, "hyperbolic_kernel_match": True,
                              "finite": G.free_rank == 0}
            return G, cert
        prev, prev_ok = G, conditions
        B, H = 2 * B, 2 * H
    cert = StabilizationCertificate("ok", stages, prev, False, monotone=_monotone(stages))
    raise NotStabilized(cert)


def exact_sequence_report(pres):
    """Check ``CH^1 -> CH~^1 -> CH^1/2 -> 0`` on a presentation.

    The quotient map sends ``rank_x`` to the class of ``x`` and kills the
    discriminant coordinates; the hyperbolic map sends ``x`` to ``<1> + <-1>``.
    """
    m = len(pres.points)
    rel = pres.rows.basis()
    milnor = pres.milnor.basis()
    # (i) relations go to CH^1/2, and the rank generators hit every class
    target = LatticeBuilder(m)
    for v in milnor:
        target.add(v)
    for i in range(m):
        target.add([2 if j == i else 0 for j in range(m)])
    surjects = all(list(v[:m]) in target for v in rel)
    # (ii) hyperbolic image plus relations equals the kernel of the quotient map
    hyper = []
    for x in pres.points:
        v = [0] * pres.n
        v[pres.rank_index[x]] = 2
        if x in pres.disc_index:
            kappa = x.residue_field
            v[pres.disc_index[x]] = 0 if kappa.is_square_raw(kappa.from_int(-1)) else 1
        hyper.append(v)
    kernel = [list(v) + [0] * (pres.n - m) for v in target.basis()]
    kernel += [pres._unit(i) for i in pres.disc_index.values()]
    match = lattices_equal(hyper + [list(v) for v in rel], kernel, pres.n)
    finite = pres.group().free_rank == 0
    return {"flags": {"surjects_mod2": surjects, "hyperbolic_kernel_match": match,
                      "finite": finite},
            "group": pres.group().to_json(), "mod2": _mod2(pres).to_json()}


def _mod2(pres):
    m = len(pres.points)
    cols = [tuple(v) for v in pres.milnor.basis()]
    cols += [tuple(2 if j == i else 0 for j in range(m)) for i in range(m)]
    return invariants(FPAbelianGroup(m, IntMatrix.from_columns(cols, m)))


def exact_sequence_check(d, **kw):
    """Flags for the exact sequence at ``d``; raises on a violation."""
    G, cert = chow_witt_number_ring(d, check=False, **kw)
    report = exact_sequence_report(cert.presentation)
    report["order"] = G.order
    report["class_group"] = invariants(class_group(cert.field)[0]).to_json()
    if not all(report["flags"].values()):
        raise InconsistentWithTheorem(report)
    return report


# ---------------------------------------------------------------------------
# the line


def _curve_relations(model, B):
    """Degree-one elements whose residues lie on points of degree at most ``B``."""
    F = model.base
    T = model.function_field
    polys = [T(g) for g in irreducibles_up_to(F, B)]
    consts = [T.const(F.from_int(-1)) if F.p != 2 else None]
    if F.p != 2:
        consts.append(T.const(F.nonsquare()))
    consts = [c for c in consts if c is not None]
    singles = polys + [c * f for c in consts for f in polys]
    for f in singles:
        yield symbol(T, f)
    pool = consts + polys
    for i, f in enumerate(pool):
        for g in pool[i:]:
            if f in polys or g in polys:
                yield eta(T) * symbol(T, f, g)


def chow_witt_curve(model, mode=MW, twist=None, B=1, max_stages=3):
    """Truncated ``CH~_0`` of ``A^1`` or ``P^1`` with a certificate.

    Generators are the points of degree at most ``B`` (and infinity on
    ``P^1``); relations are residues of symbols in polynomials of degree at
    most ``B``.  ``B`` doubles until two stages agree.
    """
    if not isinstance(model, (AffineLine, ProjLine)) or model.removed:
        raise ValueError("chow_witt_curve works on A^1 and P^1")
    F = model.base
    stages, prev = [], None
    for _ in range(max_stages):
        points = model.closed_points(B)
        with_disc = (lambda x: F.p != 2) if mode == MW else (lambda x: False)
        pres = _Presentation(points, with_disc)
        for alpha in _curve_relations(model, B):
            c = differential(model, alpha, mode, twist)
            coords = {}
            for x, v in c.values().items():
                coords[x] = (v.data[0], v.data[1] if v.kind == "GW" else 0)
            pres.add(coords)
        G = pres.group()
        stages.append({"B": B, "H": B, "order": G.order, "generators": pres.n,
                       "relations": pres.count})
        if prev is not None and G == prev:
            cert = StabilizationCertificate("curve", stages, G, True, monotone=_monotone(stages))
            cert.presentation = pres
            if mode == MW:
                cert.flags = exact_sequence_report(pres)["flags"]
            else:
                cert.flags = {"surjects_mod2": True, "hyperbolic_kernel_match": True,
                              "finite": G.free_rank == 0}
            cert.labels = pres.labels(model.point_label)
            return G, cert
        prev = G
        B *= 2
    raise NotStabilized(StabilizationCertificate("curve", stages, prev, False,
                                                 monotone=_monotone(stages)))


# ---------------------------------------------------------------------------
# oriented duality


def _tame_symbol_matrix(model, elements, B):
    """Milnor residues from valuations and tame symbols, indexed by codimension.

    Cohomological indexing: the generic point sits in codimension 0 and the
    closed points in codimension 1; ``K_n`` at codimension 0 maps to
    ``K_(n-1)`` at codimension 1.  Returns ``{(i, x): value}``.
    """
    out = {}
    for i, alpha in enumerate(elements):
        for x in model.closed_points(B):
            kappa = x.residue_field
            if alpha.degree == 1:
                total = 0
                for c, k, (u,) in alpha:
                    if k == 0:
                        total += c * x.valuation(u)
                if total:
                    out[(i, x)] = (total,)
            elif alpha.degree == 2:
                total = kappa.one_raw
                for c, k, (a, b) in alpha:
                    if k:
                        continue
                    va, vb = x.valuation(a), x.valuation(b)
                    # convention {pi, u} -> u, the inverse of Milnor's original
                    ts = (b ** va) / (a ** vb)
                    s = x.residue_class(ts).raw
                    if (va * vb) % 2:
                        s = kappa.neg(s)
                    total = kappa.mul(total, kappa.power(s, c))
                if total != kappa.one_raw:
                    out[(i, x)] = total
    return out


def _homological_matrix(model, elements, B):
    out = {}
    pts = set(model.closed_points(B))
    for i, alpha in enumerate(elements):
        for x, v in differential(model, alpha, MILNOR).values().items():
            if x in pts and not v.is_zero():
                out[(i, x)] = v.data
    return out


def oriented_duality_check(model, B=2, trials=40, seed=0):
    """Milnor-mode differentials agree under homological and cohomological indexing.

    Returns ``(ok, mismatches)``; elements are random degree-one and
    degree-two symbols in polynomials of degree at most ``B``.
    """
    import random
    rng = random.Random(seed)
    F = model.base
    T = model.function_field
    units = [u for u in F.units()]

    def rand_poly():
        while True:
            f = T.const(rng.choice(units))
            for g in rng.sample(irreducibles_up_to(F, B), rng.randint(0, 2)):
                f = f * T(g) ** rng.choice((1, -1, 2))
            return f

    elements = []
    for _ in range(trials):
        elements.append(symbol(T, rand_poly()) * rng.randint(1, 3))
        elements.append(symbol(T, rand_poly(), rand_poly()))
    hom = _homological_matrix(model, elements, B)
    coh = _tame_symbol_matrix(model, elements, B)
    bad = sorted({k for k in set(hom) | set(coh) if hom.get(k) != coh.get(k)},
                 key=lambda k: (k[0], k[1].sort_key()))
    return not bad, [(str(elements[i]), model.point_label(x)) for i, x in bad]
