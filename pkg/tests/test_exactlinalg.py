import random
from fractions import Fraction

import pytest
from gmpy2 import mpq

from hodgering.exactlinalg import (
    RationalMatrix,
    cokernel_dim,
    naive_rank_and_kernel,
    rank,
    rank_and_kernel,
    span_rank,
)


def matmul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


def rank4_matrix(seed=1):
    rng = random.Random(seed)
    A = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(6)]
    B = [[rng.randint(-5, 5) for _ in range(9)] for _ in range(4)]
    return matmul(A, B)


def random_matrix(rng):
    m, n = rng.randint(1, 12), rng.randint(1, 12)
    kind = rng.random()
    if kind < 0.3:
        # low rank by construction
        r = rng.randint(0, min(m, n))
        A = [[rng.randint(-4, 4) for _ in range(r)] for _ in range(m)]
        B = [[Fraction(rng.randint(-6, 6), rng.randint(1, 5)) for _ in range(n)] for _ in range(r)]
        return matmul(A, B) if r else [[0] * n for _ in range(m)]
    density = 0.15 if kind < 0.6 else 0.9
    return [[Fraction(rng.randint(-9, 9), rng.randint(1, 4)) if rng.random() < density else 0
             for _ in range(n)] for _ in range(m)]


def as_fractions(vs):
    return [[Fraction(int(x.numerator), int(x.denominator)) for x in v] for v in vs]


def test_trivial_examples():
    r = rank_and_kernel([[1, 0], [0, 1]])
    assert (r.rank, r.kernel_dim) == (2, 0)
    r = rank_and_kernel([[1, 1]])
    assert (r.rank, r.kernel_dim) == (1, 1)
    assert r.kernel_basis == [[mpq(-1), mpq(1)]]
    assert cokernel_dim([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 0
    assert cokernel_dim([[0], [0], [0]]) == 3


def test_rank_four_product():
    M = rank4_matrix()
    naive_rank, _ = naive_rank_and_kernel(M)
    assert naive_rank == 4
    r = rank_and_kernel(M)
    assert r.rank == 4 and r.kernel_dim == 5
    assert cokernel_dim(M) == 2
    for v in r.kernel_basis:
        assert all(x == 0 for x in RationalMatrix(M).apply(v))


def test_against_naive_oracle_200_random():
    rng = random.Random(20261016)
    for _ in range(200):
        rows = random_matrix(rng)
        nr, nbasis = naive_rank_and_kernel(rows)
        M = RationalMatrix(rows)
        for sparse in (False, True):
            res = rank_and_kernel(M, sparse=sparse)
            assert res.rank == nr
            assert res.rank + res.kernel_dim == M.ncols
            # reduced kernel bases are canonical, so they match exactly
            assert as_fractions(res.kernel_basis) == nbasis
        assert rank(M.transpose()) == nr


def test_kernel_vectors_annihilate():
    rng = random.Random(5)
    for _ in range(30):
        M = RationalMatrix(random_matrix(rng))
        res = rank_and_kernel(M)
        for v in res.kernel_basis:
            assert all(x == 0 for x in M.apply(v))
        # linear independence of the returned basis
        if res.kernel_basis:
            assert rank(res.kernel_basis) == len(res.kernel_basis)


def test_dense_sparse_bit_identical():
    rng = random.Random(9)
    for _ in range(40):
        rows = random_matrix(rng)
        dense = rank_and_kernel(RationalMatrix(rows, sparse=False), sparse=False)
        sparse = rank_and_kernel(RationalMatrix(rows, sparse=True), sparse=True)
        assert dense == sparse


def test_deterministic():
    M = rank4_matrix(3)
    assert rank_and_kernel(M) == rank_and_kernel(M)


def test_matrix_storage_and_bounds():
    M = RationalMatrix([{0: 1, 3: mpq(1, 2)}, {}], ncols=4)
    assert M.is_sparse and M.shape == (2, 4)
    assert M[0, 3] == mpq(1, 2) and M[1, 2] == 0
    assert M.density() == 0.25
    with pytest.raises(IndexError):
        M[2, 0]
    with pytest.raises(IndexError):
        RationalMatrix([{5: 1}], ncols=4)
    with pytest.raises(ValueError):
        RationalMatrix([[1, 2], [3]])
    assert M.dense_rows() == [[1, 0, 0, mpq(1, 2)], [0, 0, 0, 0]]


def test_empty_shapes():
    assert rank([]) == 0
    r = rank_and_kernel(RationalMatrix([], ncols=3))
    assert r.kernel_dim == 3


def test_span_rank_with_arbitrary_keys():
    vs = [{"a": 1, "b": 2}, {"a": 2, "b": 4}, {"c": mpq(1, 3)}]
    assert span_rank(vs) == 2
