"""Class groups of quadratic rings by bounded relation harvesting.

Relations come from principal ideals ``(alpha)`` whose factorization is
supported on the primes below the Minkowski bound.  Each relation is kept
with the element that produced it, so the presentation can be audited.

>>> from mwcycles.number_field import QuadraticField
>>> G, gens, rels = class_group(QuadraticField(-5))
>>> str(G.invariants())
'Z/2'
"""
from __future__ import annotations

from dataclasses import dataclass
from sympy import factorint, primerange

from .abelian import FPAbelianGroup, LatticeBuilder, invariants
from .errors import RelationSearchExhausted
from .number_field import NumElem, split_prime, valuation_at_ideal


def primes_up_to_norm(K, bound):
    """Prime ideals of norm at most ``bound``, sorted by (norm, p, index)."""
    out = []
    for p in primerange(2, int(bound) + 1):
        for P in split_prime(K, p):
            if P.norm <= bound:
                out.append(P)
    out.sort(key=lambda P: P.sort_key())
    return out


def int_norm(K, a, b):
    """Norm of ``a + b*w`` for integers ``a, b``."""
    return a * a + a * b * K.trace_w + b * b * K.norm_w


def factor_element(K, alpha):
    """``{PrimeIdeal: exponent}`` for the principal ideal ``(alpha)``."""
    N = alpha.norm()
    out = {}
    for n in (N.numerator, N.denominator):
        for p in factorint(abs(n)):
            for P in split_prime(K, p):
                if P in out:
                    continue
                e = valuation_at_ideal(P, alpha)
                if e:
                    out[P] = e
    return out


def smooth_part(n, primes):
    """Exponents of ``primes`` in ``n`` or ``None`` if ``n`` has another factor."""
    n = abs(n)
    if n == 0:
        return None
    exps = {}
    for p in primes:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            exps[p] = e
        if n == 1:
            break
    return exps if n == 1 else None


def box_elements(K, H):
    """Nonzero ``a + b w`` with ``|a|, |b| <= H``, ``b >= 0``, by increasing height."""
    for h in range(0, H + 1):
        for b in range(0, h + 1):
            for a in range(-h, h + 1):
                if max(abs(a), b) != h or (a, b) == (0, 0):
                    continue
                if b == 0 and a < 0:
                    continue
                yield a, b


def smooth_elements(K, S, H):
    """``(alpha, {P: v_P(alpha)})`` for box elements whose divisor is supported in ``S``."""
    by_p = {}
    for P in S:
        by_p.setdefault(P.p, []).append(P)
    rational = sorted(by_p)
    for a, b in box_elements(K, H):
        N = int_norm(K, a, b)
        exps = smooth_part(N, rational)
        if exps is None:
            continue
        alpha = NumElem(K, a, b)
        div = {}
        ok = True
        for p in exps:
            seen = 0
            for P in by_p[p]:
                e = valuation_at_ideal(P, alpha)
                if e:
                    div[P] = e
                    seen += e * P.residue_degree
            if seen != exps[p]:
                ok = False  # a prime above p lies outside S
                break
        if ok:
            yield alpha, div


@dataclass
class Relation:
    witness: NumElem
    row: tuple


def _class_group_at(K, S, H):
    index = {P: i for i, P in enumerate(S)}
    lat = LatticeBuilder(len(S))
    rels = []
    for alpha, div in smooth_elements(K, S, H):
        row = [0] * len(S)
        for P, e in div.items():
            row[index[P]] = e
        if row not in lat:
            lat.add(row)
            rels.append(Relation(alpha, tuple(row)))
    return lat, rels


def class_group(K, height=8, max_height=512):
    """Class group on the primes of norm at most the Minkowski bound.

    Returns ``(group, generators, relations)`` where each relation carries
    its witness element.  The box height doubles until the relation lattice
    has full rank and the invariants agree at two consecutive heights.
    """
    S = primes_up_to_norm(K, K.minkowski_bound())
    if not S:
        return FPAbelianGroup(0), [], []
    prev = None
    H = height
    while H <= max_height:
        lat, rels = _class_group_at(K, S, H)
        G = FPAbelianGroup(len(S), lat.matrix(), labels=[P.label() for P in S])
        inv = invariants(G)
        if inv.free_rank == 0 and inv == prev:
            return G, S, rels
        prev = inv if inv.free_rank == 0 else None
        H *= 2
    raise RelationSearchExhausted(f"relations for Q(sqrt {K.d}) not complete at height {max_height}")


def principal_search(K, ideal, box=64):
    """An ``alpha`` with ``(alpha) = ideal`` inside the box, or ``None``.

    ``ideal`` maps prime ideals to nonnegative exponents.
    """
    ideal = {P: e for P, e in ideal.items() if e}
    if any(e < 0 for e in ideal.values()):
        raise ValueError("only integral ideals are searched")
    if not ideal:
        return NumElem(K, 1, 0)
    target = 1
    for P, e in ideal.items():
        target *= P.norm ** e
    for a, b in box_elements(K, box):
        if abs(int_norm(K, a, b)) != target:
            continue
        alpha = NumElem(K, a, b)
        if all(valuation_at_ideal(P, alpha) == e for P, e in ideal.items()):
            return alpha
    return None
