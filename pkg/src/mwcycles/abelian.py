"""Finitely presented abelian groups over exact integer matrices.

>>> invariants(FPAbelianGroup(2, IntMatrix([[2], [0]])))
GroupInvariants(free_rank=1, torsion=(2,))
>>> D, U, V = snf(IntMatrix([[2, 4], [0, 6]]))
>>> D.entries
((2, 0), (0, 6))
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .errors import DimensionMismatch

JSON_SAFE = 2**53


class IntMatrix:
    """Immutable rectangular matrix of Python integers."""

    __slots__ = ("entries", "rows", "cols")

    def __init__(self, entries, rows=None, cols=None):
        entries = tuple(tuple(int(x) for x in r) for r in entries)
        if rows is None:
            rows = len(entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise DimensionMismatch("ragged or mis-sized matrix")
        self.entries = entries
        self.rows = rows
        self.cols = cols

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        if any(len(c) != rows for c in columns):
            raise DimensionMismatch("column length differs from row count")
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    def columns(self):
        return [tuple(r[j] for r in self.entries) for j in range(self.cols)]

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise DimensionMismatch(f"{self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = other.columns()
        return IntMatrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.entries],
                         self.rows, other.cols)

    def apply(self, v):
        if len(v) != self.cols:
            raise DimensionMismatch("vector length")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({[list(r) for r in self.entries]})"

    def to_json(self):
        def enc(x):
            return x if abs(x) < JSON_SAFE else str(x)
        return {"rows": self.rows, "cols": self.cols,
                "entries": [[enc(x) for x in r] for r in self.entries]}

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls(obj)
        return cls([[int(x) for x in r] for r in obj["entries"]], obj["rows"], obj["cols"])


def snf(M):
    """Smith normal form: ``(D, U, V)`` with ``U @ M @ V == D``.

    Pivots are chosen as the smallest nonzero absolute value in the remaining
    block, ties broken row-major, so the transforms are reproducible.
    """
    m, n = M.rows, M.cols
    A = [list(r) for r in M.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, k, q):  # row_i -= q * row_k
        A[i] = [a - q * b for a, b in zip(A[i], A[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    def col_op(j, k, q):  # col_j -= q * col_k
        for r in A:
            r[j] -= q * r[k]
        for r in V:
            r[j] -= q * r[k]

    def swap_rows(i, k):
        A[i], A[k] = A[k], A[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in V:
            r[j], r[k] = r[k], r[j]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = A[i]
                for j in range(t, n):
                    a = row[j]
                    if a and (best is None or abs(a) < best[0]):
                        best = (abs(a), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = A[t][t]
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_op(i, t, A[i][t] // p)
                    clean = clean and A[i][t] == 0
            for j in range(t + 1, n):
                if A[t][j]:
                    col_op(j, t, A[t][j] // p)
                    clean = clean and A[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            row_op(t, bad[0], -1)
        if t < m and t < n and A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
    return IntMatrix(A, m, n), IntMatrix(U, m, m), IntMatrix(V, n, n)


def diagonal(D):
    return [D.entries[i][i] for i in range(min(D.rows, D.cols))]


@dataclass(frozen=True)
class GroupInvariants:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``."""

    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))

    @property
    def order(self):
        """Group order, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def normalized(self):
        t = [abs(d) for d in self.torsion if abs(d) != 1]
        free = self.free_rank + sum(1 for d in t if d == 0)
        t = [d for d in t if d]
        if not t:
            return GroupInvariants(free, ())
        D, _, _ = snf(IntMatrix([[t[i] if i == j else 0 for j in range(len(t))]
                                 for i in range(len(t))]))
        return GroupInvariants(free, tuple(d for d in diagonal(D) if d != 1))

    def to_json(self):
        return {"free_rank": self.free_rank, "invariant_factors": list(self.torsion)}

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


class FPAbelianGroup:
    """Generators ``e_1..e_n`` modulo the column span of ``relations``."""

    def __init__(self, n_gens, relations=None, labels=None):
        if relations is None:
            relations = IntMatrix.zeros(n_gens, 0)
        if relations.rows != n_gens:
            raise DimensionMismatch("relations must have n_gens rows")
        self.n_gens = n_gens
        self.relations = relations
        self.labels = labels

    def invariants(self):
        return invariants(self)

    def __repr__(self):
        return f"FPAbelianGroup({self.n_gens} gens, {self.relations.cols} relations)"


def invariants(G):
    """Invariant-factor decomposition of a finitely presented group."""
    if G.relations.cols == 0:
        return GroupInvariants(G.n_gens, ())
    D, _, _ = snf(G.relations)
    d = [x for x in diagonal(D) if x]
    return GroupInvariants(G.n_gens - len(d), tuple(x for x in d if x != 1))


def cokernel(M, target_torsion=None):
    """Cokernel of ``M`` into ``Z^a + (Z/t_i)`` encoded by extra torsion columns."""
    if target_torsion is None:
        target_torsion = [0] * M.rows
    if len(target_torsion) != M.rows:
        raise DimensionMismatch("torsion list length must equal the number of rows")
    cols = M.columns()
    for i, t in enumerate(target_torsion):
        if t:
            if t < 2:
                raise ValueError("torsion bounds are 0 (free) or >= 2")
            cols.append(tuple(t if k == i else 0 for k in range(M.rows)))
    return FPAbelianGroup(M.rows, IntMatrix.from_columns(cols, M.rows))


def membership(L, v):
    """Coefficients ``c`` with ``L @ c == v``, or ``None`` if ``v`` is not in the lattice."""
    if len(v) != L.rows:
        raise DimensionMismatch("vector length must equal the number of rows")
    D, U, V = snf(L)
    w = U.apply(v)
    y = [0] * L.cols
    for i, wi in enumerate(w):
        d = D.entries[i][i] if i < L.cols else 0
        if d == 0:
            if wi:
                return None
        else:
            if wi % d:
                return None
            y[i] = wi // d
    return V.apply(y)


def iso_eq(a, b):
    """Isomorphism test for finitely generated abelian groups."""
    return a.normalized() == b.normalized()


def kernel_basis(M):
    """Basis (list of columns) of the integer kernel of ``M``."""
    D, U, V = snf(M)
    r = sum(1 for x in diagonal(D) if x)
    Vc = V.columns()
    return [Vc[j] for j in range(r, M.cols)]


class LatticeBuilder:
    """Incremental echelon basis of a sublattice of ``Z^n``.

    Used when relations arrive in the thousands: only ``n`` vectors are ever
    kept, and duplicate relations cost one reduction pass.
    """

    def __init__(self, n):
        self.n = n
        self.rows = {}

    def add(self, v):
        v = list(v)
        if len(v) != self.n:
            raise DimensionMismatch("vector length")
        for c in range(self.n):
            if v[c] == 0:
                continue
            r = self.rows.get(c)
            if r is None:
                if v[c] < 0:
                    v = [-x for x in v]
                self.rows[c] = v
                self._reduce_above(c)
                return True
            a, b = r[c], v[c]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, r)]
                continue
            g, x, y = _xgcd(a, b)
            new_r = [x * ri + y * vi for ri, vi in zip(r, v)]
            v = [(a // g) * vi - (b // g) * ri for ri, vi in zip(r, v)]
            self.rows[c] = new_r
            self._reduce_above(c)
        return False

    def _reduce_above(self, c):
        piv = self.rows[c]
        for k, r in self.rows.items():
            if k < c and r[c]:
                q = r[c] // piv[c]
                if q:
                    self.rows[k] = [x - q * y for x, y in zip(r, piv)]
        for k in sorted(self.rows):
            if k > c:
                other = self.rows[k]
                if piv[k]:
                    q = piv[k] // other[k]
                    if q:
                        piv = [x - q * y for x, y in zip(piv, other)]
        self.rows[c] = piv

    def basis(self):
        return [tuple(self.rows[c]) for c in sorted(self.rows)]

    def matrix(self):
        return IntMatrix.from_columns(self.basis(), self.n)

    def __contains__(self, v):
        v = list(v)
        for c in range(self.n):
            if v[c] == 0:
                continue
            r = self.rows.get(c)
            if r is None or v[c] % r[c]:
                return False
            q = v[c] // r[c]
            v = [x - q * y for x, y in zip(v, r)]
        return True


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def lattices_equal(a, b, n):
    """Equality of the column spans of two lists of vectors in ``Z^n``."""
    la, lb = LatticeBuilder(n), LatticeBuilder(n)
    for v in a:
        la.add(v)
    for v in b:
        lb.add(v)
    return all(v in lb for v in la.basis()) and all(v in la for v in lb.basis())


def determinant_int(rows):
    """Exact integer determinant via Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k]), None)
            if sw is None:
                return 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]
