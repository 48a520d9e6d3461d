"""Independent reference computations used by the tests.

Nothing here imports the package: each oracle recomputes its answer by a
different and deliberately naive method.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt


def det(rows):
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return int(out)


def gcd_of_minors_factors(rows):
    """Invariant factors ``d_k = D_k / D_{k-1}``, with ``D_k`` the gcd of k-minors."""
    if not rows or not rows[0]:
        return []
    m, n = len(rows), len(rows[0])
    D = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for I in combinations(range(m), k):
            for J in combinations(range(n), k):
                g = gcd(g, det([[rows[i][j] for j in J] for i in I]))
        if g == 0:
            break
        D.append(g)
    return [D[k] // D[k - 1] for k in range(1, len(D))]


def reduced_form_count(d):
    """Class number of the imaginary quadratic field ``Q(sqrt d)``, ``d < 0`` squarefree.

    Counts reduced primitive forms ``ax^2 + bxy + cy^2`` of the field discriminant.
    """
    D = d if d % 4 == 1 else 4 * d
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


# class numbers of a few real quadratic fields, from the standard tables
REAL_CLASS_NUMBERS = {2: 1, 3: 1, 5: 1, 6: 1, 10: 2, 13: 1, 15: 2}


def legendre(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def witt_table(q):
    """Classical ``W(F_q)`` as invariant factors."""
    if q % 2 == 0:
        return [2]
    return [2, 2] if q % 4 == 1 else [4]


def gw_table(q):
    """``(free_rank, torsion)`` of ``GW(F_q)``: ``Z`` for even q, ``Z + Z/2`` for odd q."""
    return (1, []) if q % 2 == 0 else (1, [2])


def prime_field_square_classes(p):
    """Squares of ``F_p^x`` by brute force."""
    return {x * x % p for x in range(1, p)}


def gw_class_brute(p, diag):
    """``(rank, disc)`` of the diagonal form over ``F_p`` with disc by squaring."""
    squares = prime_field_square_classes(p)
    prod = 1
    for a in diag:
        prod = prod * a % p
    return len(diag), 0 if prod in squares else 1


def p_adic(n, p):
    """``(v_p(n), n / p^v)`` for a nonzero rational ``n``."""
    n = Fraction(n)
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def necklace(q, n):
    """Number of monic irreducible polynomials of degree ``n`` over ``F_q``."""
    def mobius(m):
        res, k = 1, 2
        while k * k <= m:
            if m % k == 0:
                m //= k
                if m % k == 0:
                    return 0
                res = -res
            k += 1
        return -res if m > 1 else res
    return sum(mobius(n // d) * q ** d for d in range(1, n + 1) if n % d == 0) // n


def is_perfect_square(n):
    return n >= 0 and isqrt(n) ** 2 == n
