"""Exact dense and block-diagonal matrices."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from operator import mul as _imul

import numpy as np

from .errors import BlockCountMismatch, FieldMismatch, ShapeMismatch
from .field import Field

STRASSEN_THRESHOLD = 64


@dataclass(eq=False)
class Matrix:
    rows: int
    cols: int
    entries: list  # row-major, length rows*cols
    field: Field

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def zeros(cls, rows: int, cols: int, field: Field) -> "Matrix":
        return cls(rows, cols, [field.zero] * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "Matrix":
        m = cls.zeros(n, n, field)
        for i in range(n):
            m.entries[i * n + i] = field.one
        return m

    @classmethod
    def from_rows(cls, rows: list, field: Field) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ShapeMismatch("ragged rows")
        return cls(r, c, [field.coerce(v) for row in rows for v in row], field)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def __setitem__(self, ij, value):
        i, j = ij
        self.entries[i * self.cols + j] = value

    def to_rows(self) -> list:
        c = self.cols
        return [self.entries[i * c : (i + 1) * c] for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.entries == other.entries

    def __matmul__(self, other):
        return mat_mul(self, other)

    def dump(self) -> str:
        f = self.field.format
        return "\n".join(" ".join(f(v) for v in row) for row in self.to_rows())


# -- kernels on lists of rows --------------------------------------------------


def _school_np(A: list, B: list, p: int) -> list:
    # entries < 2^31; splitting B into 16-bit halves keeps every int64 dot product below 2^63
    a = np.array(A, dtype=np.int64)
    b = np.array(B, dtype=np.int64)
    lo = a @ (b & 0xFFFF) % p
    hi = a @ (b >> 16) % p
    return ((hi << 16) % p + lo) % p


def _school(A: list, B: list, F: Field) -> list:
    if not A:
        return []
    n = len(B[0]) if B else 0
    p = F.modulus
    if p is not None and p < 1 << 31 and len(B) < 1 << 15 and len(A) * len(B) * n >= 512:
        return _school_np(A, B, p).tolist()
    cols = [list(c) for c in zip(*B)] if B else [[] for _ in range(n)]
    if p is None:
        return [[sum(map(_imul, row, c)) if row else F.zero for c in cols] for row in A]
    return [[sum(map(_imul, row, c)) % p for c in cols] for row in A]


def _madd(X, Y, F):
    fa = F.add
    return [[fa(a, b) for a, b in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _msub(X, Y, F):
    fs = F.sub
    return [[fs(a, b) for a, b in zip(rx, ry)] for rx, ry in zip(X, Y)]


def _pad(X, r, c, F):
    z = F.zero
    out = [row + [z] * (c - len(row)) for row in X]
    out.extend([[z] * c for _ in range(r - len(X))])
    return out


def _strassen(A: list, B: list, m: int, k: int, n: int, F: Field, threshold: int) -> list:
    if min(m, k, n) <= threshold:
        return _school(A, B, F)
    lo, hi = min(m, k, n), max(m, k, n)
    if hi > 2 * lo:
        # peel the longest dimension into squarish tiles
        if hi == m:
            h = m // 2
            return _strassen(A[:h], B, h, k, n, F, threshold) + _strassen(A[h:], B, m - h, k, n, F, threshold)
        if hi == n:
            h = n // 2
            left = _strassen(A, [r[:h] for r in B], m, k, h, F, threshold)
            right = _strassen(A, [r[h:] for r in B], m, k, n - h, F, threshold)
            return [a + b for a, b in zip(left, right)]
        h = k // 2
        X = _strassen([r[:h] for r in A], B[:h], m, h, n, F, threshold)
        Y = _strassen([r[h:] for r in A], B[h:], m, k - h, n, F, threshold)
        return _madd(X, Y, F)
    m2, k2, n2 = m + (m & 1), k + (k & 1), n + (n & 1)
    A = _pad(A, m2, k2, F)
    B = _pad(B, k2, n2, F)
    hm, hk, hn = m2 // 2, k2 // 2, n2 // 2
    A11 = [r[:hk] for r in A[:hm]]
    A12 = [r[hk:] for r in A[:hm]]
    A21 = [r[:hk] for r in A[hm:]]
    A22 = [r[hk:] for r in A[hm:]]
    B11 = [r[:hn] for r in B[:hk]]
    B12 = [r[hn:] for r in B[:hk]]
    B21 = [r[:hn] for r in B[hk:]]
    B22 = [r[hn:] for r in B[hk:]]

    def rec(X, Y):
        return _strassen(X, Y, hm, hk, hn, F, threshold)

    M1 = rec(_madd(A11, A22, F), _madd(B11, B22, F))
    M2 = rec(_madd(A21, A22, F), B11)
    M3 = rec(A11, _msub(B12, B22, F))
    M4 = rec(A22, _msub(B21, B11, F))
    M5 = rec(_madd(A11, A12, F), B22)
    M6 = rec(_msub(A21, A11, F), _madd(B11, B12, F))
    M7 = rec(_msub(A12, A22, F), _madd(B21, B22, F))
    C11 = _madd(_msub(_madd(M1, M4, F), M5, F), M7, F)
    C12 = _madd(M3, M5, F)
    C21 = _madd(M2, M4, F)
    C22 = _madd(_madd(_msub(M1, M2, F), M3, F), M6, F)
    top = [a + b for a, b in zip(C11, C12)]
    bottom = [a + b for a, b in zip(C21, C22)]
    return [row[:n] for row in (top + bottom)[:m]]


def mat_mul_schoolbook(A: Matrix, B: Matrix) -> Matrix:
    _check(A, B)
    rows = _school(A.to_rows(), B.to_rows(), A.field)
    return Matrix(A.rows, B.cols, [v for r in rows for v in r], A.field)


def mat_mul(A: Matrix, B: Matrix, threshold: int | None = None) -> Matrix:
    """Exact product, switching to Strassen above ``threshold`` (default 64)."""
    _check(A, B)
    F = A.field
    if A.rows == 0 or B.cols == 0 or A.cols == 0:
        return Matrix.zeros(A.rows, B.cols, F)
    t = STRASSEN_THRESHOLD if threshold is None else max(1, threshold)
    rows = _strassen(A.to_rows(), B.to_rows(), A.rows, A.cols, B.cols, F, t)
    return Matrix(A.rows, B.cols, [v for r in rows for v in r], F)


def _check(A: Matrix, B: Matrix):
    if A.field != B.field:
        raise FieldMismatch(f"{A.field.name} vs {B.field.name}")
    if A.cols != B.rows:
        raise ShapeMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")


@dataclass(eq=False)
class BlockDiagonalMatrix:
    blocks: list

    def __post_init__(self):
        if self.blocks:
            f = self.blocks[0].field
            if any(b.field != f for b in self.blocks):
                raise FieldMismatch("blocks over different fields")

    @property
    def shapes(self) -> list:
        return [b.shape for b in self.blocks]

    def __eq__(self, other):
        if not isinstance(other, BlockDiagonalMatrix):
            return NotImplemented
        return len(self.blocks) == len(other.blocks) and all(a == b for a, b in zip(self.blocks, other.blocks))

    def dump(self) -> str:
        return "\n\n".join(b.dump() for b in self.blocks)


def block_mul(A: BlockDiagonalMatrix, B: BlockDiagonalMatrix, threads: int = 1) -> BlockDiagonalMatrix:
    if len(A.blocks) != len(B.blocks):
        raise BlockCountMismatch(f"{len(A.blocks)} blocks vs {len(B.blocks)}")
    for a, b in zip(A.blocks, B.blocks):
        _check(a, b)
    if threads > 1 and len(A.blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return BlockDiagonalMatrix(list(pool.map(mat_mul, A.blocks, B.blocks)))
    return BlockDiagonalMatrix([mat_mul(a, b) for a, b in zip(A.blocks, B.blocks)])
