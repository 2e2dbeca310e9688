import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from magicforge.exactla import (
    DimensionMismatch,
    MatrixQ,
    SubspaceBasis,
    contains,
    det,
    eigenspace,
    intersect,
    nullspace,
    nullspace_sparse,
    rank,
    rref,
    span,
    subspace_sum,
)


def leibniz_det(rows):
    """Permutation expansion; independent of any elimination code."""
    n = len(rows)
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction((-1) ** inv)
        for i, p in enumerate(perm):
            term *= rows[i][p]
        total += term
    return total


def minors_rank(rows):
    """Largest k with a non-zero k x k minor."""
    m, n = len(rows), len(rows[0])
    for k in range(min(m, n), 0, -1):
        for ri in itertools.combinations(range(m), k):
            for ci in itertools.combinations(range(n), k):
                if leibniz_det([[rows[i][j] for j in ci] for i in ri]):
                    return k
    return 0


entries = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(entries, min_size=c, max_size=c), min_size=r, max_size=r)))


def square(max_n=4):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=60, deadline=None)
@given(square())
def test_det_matches_permutation_expansion(rows):
    assert det(MatrixQ.from_rows(rows)) == leibniz_det(rows)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_minors(rows):
    m = MatrixQ.from_rows(rows)
    assert rank(m) == minors_rank(rows)
    assert rank(m) == rank(m.T)


@settings(max_examples=60, deadline=None)
@given(matrices(4, 6))
def test_nullspace_is_kernel_of_right_size(rows):
    m = MatrixQ.from_rows(rows)
    ker = nullspace(m)
    assert ker.dim + rank(m) == m.cols
    for v in ker.basis:
        assert all(x == 0 for x in m @ list(v))


@settings(max_examples=40, deadline=None)
@given(matrices(3, 5), matrices(3, 5))
def test_sum_and_intersection_dimensions(a, b):
    n = min(len(a[0]), len(b[0]))
    u = span([r[:n] for r in a], n)
    w = span([r[:n] for r in b], n)
    s, i = subspace_sum(u, w), intersect(u, w)
    assert s.dim + i.dim == u.dim + w.dim
    assert contains(s, u) and contains(s, w)
    assert contains(u, i) and contains(w, i)


def test_rref_is_canonical():
    m = MatrixQ.from_rows([[2, 4, 6], [1, 2, 4], [3, 6, 10]])
    r, rk, piv = rref(m)
    assert rk == 2 and piv == [0, 2]
    assert r.row(0) == (1, 2, 0) and r.row(1) == (0, 0, 1)


def test_singular_det_is_zero():
    assert det(MatrixQ.from_rows([[1, 2], [2, 4]])) == 0
    assert det(MatrixQ.identity(5)) == 1


def test_sparse_nullspace_large_diagonal_blocks():
    # 200 independent 2-cycles x_i - x_{i+1} = 0 on disjoint pairs
    rows = [{2 * i: 1, 2 * i + 1: -1} for i in range(200)]
    ker = nullspace_sparse(rows, 400)
    assert len(ker) == 200
    for v in ker:
        assert all(sum(c * v.get(k, 0) for k, c in r.items()) == 0 for r in rows)


def test_eigenspace():
    m = MatrixQ.diag([1, -1, -1, 2])
    assert eigenspace(m, -1).dim == 2
    assert eigenspace(m, 3).dim == 0


def test_subspace_coordinates_roundtrip():
    s = span([[1, 1, 0], [0, 1, 1]], 3)
    v = [Fraction(2), Fraction(5), Fraction(3)]
    c = s.coordinates(v)
    back = [sum(ci * b[k] for ci, b in zip(c, s.basis)) for k in range(3)]
    assert back == v
    assert s.coordinates([1, 0, 0]) is None


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        subspace_sum(SubspaceBasis.full(2), SubspaceBasis.full(3))
    with pytest.raises(DimensionMismatch):
        MatrixQ.identity(2) @ MatrixQ.identity(3)
