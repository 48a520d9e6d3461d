import random

import pytest
from hypothesis import given, settings, strategies as st

from mwcycles.abelian import (FPAbelianGroup, GroupInvariants, IntMatrix, LatticeBuilder, cokernel,
                              diagonal, invariants, iso_eq, kernel_basis, lattices_equal, membership, snf)
from mwcycles.errors import DimensionMismatch

from oracles import det, gcd_of_minors_factors


def matrices(max_rows=4, max_cols=4, lo=-10, hi=10):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def check_snf(rows):
    M = IntMatrix(rows)
    D, U, V = snf(M)
    assert U @ M @ V == D
    assert abs(det(U.entries)) == 1 and abs(det(V.entries)) == 1
    d = diagonal(D)
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j:
                assert D.entries[i][j] == 0
    assert all(x >= 0 for x in d)
    nz = [x for x in d if x]
    assert d[:len(nz)] == nz  # zeros trail
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    assert nz == gcd_of_minors_factors(rows)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_snf_properties(rows):
    check_snf(rows)


def test_snf_example():
    D, U, V = snf(IntMatrix([[2, 4], [0, 6]]))
    assert diagonal(D) == [2, 6]


@pytest.mark.parametrize("rows", [[[0]], [[0, 0], [0, 0]], [[7]], [[-3]], [[1, 2, 3]], [[4], [6]]])
def test_snf_edge_cases(rows):
    check_snf(rows)


def test_snf_large_entries():
    rng = random.Random(5)
    rows = [[rng.randint(-10**30, 10**30) for _ in range(3)] for _ in range(3)]
    check_snf(rows)


def test_matrix_json_roundtrip():
    M = IntMatrix([[1, -2], [3, 10**40]])
    assert IntMatrix.from_json(M.to_json()) == M
    assert IntMatrix.from_json([[1, 2]]) == IntMatrix([[1, 2]])


def test_ragged_matrix_rejected():
    with pytest.raises(DimensionMismatch):
        IntMatrix([[1, 2], [3]])


def test_invariants_of_presentations():
    G = FPAbelianGroup(2, IntMatrix([[2, 0], [0, 3]]))
    assert invariants(G) == GroupInvariants(0, (6,))
    assert str(invariants(G)) == "Z/6"
    assert invariants(FPAbelianGroup(3)) == GroupInvariants(3, ())
    assert str(GroupInvariants(0, ())) == "0"
    assert GroupInvariants(0, (2, 4)).order == 8
    assert GroupInvariants(1, (2,)).order is None


def test_iso_eq_normalizes():
    assert iso_eq(GroupInvariants(0, (2, 3)), GroupInvariants(0, (6,)))
    assert not iso_eq(GroupInvariants(0, (2, 2)), GroupInvariants(0, (4,)))


def test_cokernel_with_torsion_target():
    # Z/4 modulo 2
    assert invariants(cokernel(IntMatrix([[2]]), [4])) == GroupInvariants(0, (2,))
    assert invariants(cokernel(IntMatrix.zeros(2, 0), [0, 2])) == GroupInvariants(1, (2,))


@settings(max_examples=60, deadline=None)
@given(matrices(3, 3, -6, 6), st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_membership_roundtrip(rows, coeffs):
    M = IntMatrix(rows)
    c = coeffs[:M.cols] + [0] * (M.cols - len(coeffs[:M.cols]))
    v = M.apply(c)
    x = membership(M, v)
    assert x is not None and M.apply(x) == v


def test_membership_rejects():
    assert membership(IntMatrix([[2], [0]]), (1, 0)) is None


@settings(max_examples=60, deadline=None)
@given(matrices(3, 4, -6, 6))
def test_kernel_basis(rows):
    M = IntMatrix(rows)
    K = kernel_basis(M)
    for v in K:
        assert all(x == 0 for x in M.apply(v))
    rank = sum(1 for d in diagonal(snf(M)[0]) if d)
    assert len(K) == M.cols - rank


def test_lattice_builder():
    lb = LatticeBuilder(2)
    lb.add((2, 0))
    lb.add((0, 3))
    assert (4, 6) in lb
    assert (1, 0) not in lb
    assert lattices_equal([(2, 0), (0, 3)], [(2, 3), (0, 3)], 2)
    assert not lattices_equal([(2, 0)], [(1, 0)], 2)
