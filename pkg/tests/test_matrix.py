import random

import pytest
from hypothesis import given, settings, strategies as st

from weylmul import QQ, BlockDiagonalMatrix, BlockCountMismatch, FieldMismatch, Matrix, ShapeMismatch
from weylmul import block_mul, mat_mul, mat_mul_schoolbook, prime_field

from oracles import FIELDS, FP


def rand_matrix(F, m, n, rng):
    return Matrix(m, n, [F.random(rng) for _ in range(m * n)], F)


def direct(A, B):
    F = A.field
    out = []
    for i in range(A.rows):
        for j in range(B.cols):
            out.append(F.coerce(sum(A[i, t] * B[t, j] for t in range(A.cols))))
    return Matrix(A.rows, B.cols, out, F)


def test_small_examples():
    A = Matrix.from_rows([[1, 2], [3, 4]], QQ)
    assert A @ Matrix.identity(2, QQ) == A
    assert A @ Matrix.from_rows([[0, 1], [1, 0]], QQ) == Matrix.from_rows([[2, 1], [4, 3]], QQ)


@pytest.mark.parametrize("F", FIELDS + [prime_field(13)])
def test_rectangular_against_direct_sum(F):
    rng = random.Random(17)
    A, B = rand_matrix(F, 17, 23, rng), rand_matrix(F, 23, 9, rng)
    assert mat_mul(A, B) == direct(A, B) == mat_mul_schoolbook(A, B)


@pytest.mark.parametrize("F, shapes", [(FP, 200), (QQ, 40)])
def test_strassen_equals_schoolbook(F, shapes):
    rng = random.Random(200)
    for _ in range(shapes):
        m, k, n = (rng.randint(1, 80) for _ in range(3))
        A, B = rand_matrix(F, m, k, rng), rand_matrix(F, k, n, rng)
        assert mat_mul(A, B, threshold=rng.choice([2, 5, 16])) == mat_mul_schoolbook(A, B)


@pytest.mark.parametrize("F", FIELDS)
@settings(max_examples=30, deadline=None)
@given(m=st.integers(1, 20), k=st.integers(1, 20), n=st.integers(1, 20), q=st.integers(1, 20),
       seed=st.integers(0, 2**32))
def test_associativity(F, m, k, n, q, seed):
    rng = random.Random(seed)
    A, B, C = rand_matrix(F, m, k, rng), rand_matrix(F, k, n, rng), rand_matrix(F, n, q, rng)
    assert mat_mul(mat_mul(A, B, 3), C, 3) == mat_mul(A, mat_mul(B, C, 3), 3)


def test_shape_and_field_errors():
    A = Matrix.zeros(2, 3, QQ)
    with pytest.raises(ShapeMismatch):
        mat_mul(A, A)
    with pytest.raises(FieldMismatch):
        mat_mul(A, Matrix.zeros(3, 2, FP))
    with pytest.raises(ShapeMismatch):
        Matrix(2, 2, [1, 2, 3], QQ)


def test_block_products():
    rng = random.Random(3)
    A, B = rand_matrix(FP, 6, 4, rng), rand_matrix(FP, 4, 5, rng)
    assert block_mul(BlockDiagonalMatrix([A]), BlockDiagonalMatrix([B])).blocks == [mat_mul(A, B)]

    X = BlockDiagonalMatrix([rand_matrix(FP, 3, 3, rng), rand_matrix(FP, 4, 2, rng)])
    ident = BlockDiagonalMatrix([Matrix.identity(3, FP), Matrix.identity(4, FP)])
    assert block_mul(ident, X) == X

    As = [rand_matrix(FP, m, k, rng) for m, k in ((5, 3), (2, 7), (4, 4))]
    Bs = [rand_matrix(FP, k, n, rng) for k, n in ((3, 6), (7, 1), (4, 4))]
    got = block_mul(BlockDiagonalMatrix(As), BlockDiagonalMatrix(Bs), threads=2)
    assert got.blocks == [mat_mul_schoolbook(a, b) for a, b in zip(As, Bs)]

    with pytest.raises(BlockCountMismatch):
        block_mul(BlockDiagonalMatrix(As), BlockDiagonalMatrix(Bs[:2]))


def test_dump():
    assert Matrix.from_rows([[1, 2], [3, 4]], QQ).dump() == "1 2\n3 4"
