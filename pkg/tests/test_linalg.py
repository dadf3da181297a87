import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from posetmorse.errors import SolveFailure
from posetmorse.linalg import (
    IntMatrix,
    dense_matmul,
    determinant,
    invariant_factors,
    rank,
    smith_normal_form,
    solve_integer,
)

from oracles import det, determinantal_factors, rank_mod


def small_matrices(max_side=4, bound=6):
    return st.integers(1, max_side).flatmap(
        lambda m: st.integers(1, max_side).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=m, max_size=m
            )
        )
    )


def test_two_by_two_example():
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.invariant_factors == (2, 4)
    assert invariant_factors(IntMatrix.from_dense([[2, 4], [6, 8]])) == [2, 4]


def test_zero_and_empty():
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0
    assert invariant_factors(IntMatrix.zeros(3, 2)) == []
    assert rank(IntMatrix.zeros(0, 4)) == 0


def test_torsion_block():
    # boundary of the projective plane's 2-chain pattern: one factor of 2
    M = [[1, 1], [1, 1], [0, 2]]
    assert invariant_factors(IntMatrix.from_dense(M)) == [1, 2]


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_snf_matches_determinantal_divisors(M):
    snf = smith_normal_form(M)
    assert list(snf.invariant_factors) == determinantal_factors(M)
    d = snf.invariant_factors
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert invariant_factors(IntMatrix.from_dense(M)) == list(d)


@settings(max_examples=150, deadline=None)
@given(small_matrices())
def test_snf_transforms(M):
    snf = smith_normal_form(M)
    m, n = len(M), len(M[0])
    D = dense_matmul(dense_matmul(snf.left, M), snf.right)
    expect = [[snf.diagonal[i] if i == j and i < min(m, n) else 0 for j in range(n)] for i in range(m)]
    assert D == expect
    assert abs(determinant(snf.left)) == 1 and abs(determinant(snf.right)) == 1
    eye = lambda k: [[int(i == j) for j in range(k)] for i in range(k)]
    assert dense_matmul(snf.left, snf.left_inv) == eye(m)
    assert dense_matmul(snf.right, snf.right_inv) == eye(n)


@settings(max_examples=100, deadline=None)
@given(small_matrices())
def test_rank_matches_rational_rank(M):
    assert rank(IntMatrix.from_dense(M)) == rank_mod(M)


@settings(max_examples=100, deadline=None)
@given(small_matrices(bound=9).filter(lambda M: len(M) == len(M[0])))
def test_determinant_matches_fraction_elimination(M):
    assert determinant(M) == det(M)


@settings(max_examples=100, deadline=None)
@given(small_matrices(), st.data())
def test_solve_recovers_integer_preimage(M, data):
    n = len(M[0])
    y = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n))
    b = [sum(a * v for a, v in zip(row, y)) for row in M]
    x = solve_integer(M, b)
    assert [sum(a * v for a, v in zip(row, x)) for row in M] == b


def test_solve_failures():
    with pytest.raises(SolveFailure):
        solve_integer([[2]], [1])
    with pytest.raises(SolveFailure):
        solve_integer([[1], [1]], [1, 0])
    assert solve_integer(IntMatrix.zeros(2, 0), [0, 0]) == []


def test_sparse_matrix_ops():
    A = IntMatrix.from_entries(2, 3, [(0, 0, 1), (1, 2, -2)])
    B = IntMatrix.from_dense([[1, 0], [0, 1], [3, 0]])
    assert (A @ B).to_dense() == [[1, 0], [-6, 0]]
    assert list(A.entries()) == [(0, 0, 1), (1, 2, -2)]
    assert A.transpose().to_dense() == [[1, 0], [0, 0], [0, -2]]
    assert (A - A).is_zero() and (A + (-A)).nnz() == 0
    assert A.select_columns([2]).column(0) == [0, -2]
    assert A.apply([1, 1, 1]) == [1, -2]
