"""Evaluation of operators on polynomials and exponential polynomials.

``phi_matrix(L, k)`` is the matrix of ``L`` acting from polynomials of degree
``< k`` to degree ``< k + d``.  Its diagonal with offset ``t`` (row ``m + t``,
column ``m``) holds ``f_t(m) = sum_i L[i][i+t] * m(m-1)...(m-i+1)``, so each
diagonal is a single falling-factorial transform and the whole matrix can be
built and inverted with one convolution per diagonal.

``block_phi`` evaluates at ``x^m e^(a_j x)`` for several points ``a_j``; the
block at ``a_j`` is ``phi_matrix`` of ``L(x, D + a_j)`` truncated in ``D``,
and the truncations at all points come from one Hermite evaluation per
power of ``x``.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import poly as P
from .errors import DuplicatePoints, InconsistentMatrix, PreconditionViolated
from .field import Field
from .hermite import HermiteSpec, evaluate_raw, interpolate_raw
from .matrix import BlockDiagonalMatrix, Matrix
from .operator import DiffOperator


def _pmap(fn, items, threads: int):
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


@dataclass(frozen=True)
class EvalMatrix:
    mat: Matrix
    k: int
    dx: int


@dataclass(frozen=True)
class BlockEvalPlan:
    """Points and truncation orders for one product of bidegree bound ``(dhat, r)``."""

    field: Field
    points: tuple
    dhat: int
    r: int
    trunc_left: int
    trunc_right: int
    trunc_out: int

    def __post_init__(self):
        if len(set(self.points)) != len(self.points):
            raise DuplicatePoints("plan points must be distinct")

    @property
    def p(self) -> int:
        return len(self.points)

    @classmethod
    def build(cls, d: int, r: int, field: Field) -> "BlockEvalPlan":
        dhat = max(d, 1)
        p = max(1, -(-r // dhat))
        field.check_characteristic(p)
        plan = cls(field, tuple(field.from_int(j) for j in range(p)), dhat, r, 3 * dhat, 2 * dhat, 2 * dhat)
        assert plan.p * plan.trunc_out >= 2 * r - 1
        return plan


def phi_matrix(L: DiffOperator, k: int, dx: int | None = None) -> EvalMatrix:
    """``Phi_L^{k+dx, k}``; ``dx`` defaults to the x-degree bound of ``L``."""
    F = L.field
    d, r = L.bidegree
    dx = d if dx is None else dx
    if dx < d:
        raise PreconditionViolated(f"x-degree bound {dx} below operator bound {d}")
    F.check_characteristic(k + dx)
    rows = k + dx
    ent = [F.zero] * (rows * k)
    grid = L.rows
    for t in range(1 - r, d):
        lo = max(0, -t)
        hi = min(r, d - t)
        if lo >= hi or lo >= k:
            continue
        a = [F.zero] * lo + [grid[i][i + t] for i in range(lo, hi)]
        if not any(a):
            continue
        vals = P.falling_to_values(a, k, F)
        for m in range(lo, k):
            ent[(m + t) * k + m] = vals[m]
    return EvalMatrix(Matrix(rows, k, ent, F), k, dx)


def phi_inverse(M: EvalMatrix | Matrix, dx: int, rbound: int) -> DiffOperator:
    """The operator of x-degree ``< dx`` and order ``< rbound`` whose matrix is ``M``."""
    mat = M.mat if isinstance(M, EvalMatrix) else M
    F = mat.field
    k, rows = mat.cols, mat.rows
    if k < rbound:
        raise PreconditionViolated(f"{k} columns cannot determine order {rbound}")
    F.check_characteristic(k + dx)
    ent = mat.entries
    grid = [[F.zero] * dx for _ in range(rbound)]
    for t in range(1 - k, rows):
        m0 = max(0, -t)
        m1 = min(k, rows - t)
        v = [F.zero] * m0 + [ent[(m + t) * k + m] for m in range(m0, m1)]
        if not any(v):
            continue
        if t < 1 - rbound or t >= dx:
            raise InconsistentMatrix(f"nonzero diagonal {t} outside the bidegree")
        if m1 < k:
            raise InconsistentMatrix(f"diagonal {t} is cut off by the row count")
        a = P.values_to_falling(v, F)
        for i, c in enumerate(a):
            if c == 0:
                continue
            if i >= rbound or not 0 <= i + t < dx:
                raise InconsistentMatrix(f"diagonal {t} needs a term of order {i}")
            grid[i][i + t] = c
    return DiffOperator._raw(grid, F)


def truncated_conjugates(L: DiffOperator, plan: BlockEvalPlan, trunc: int, threads: int = 1) -> list:
    """``[L(x, D + a_j) mod D^trunc for each plan point a_j]``."""
    F = L.field
    F.check_characteristic(trunc)
    d, r = L.bidegree
    p = plan.p
    if L.is_zero():
        return [DiffOperator.zero(F) for _ in range(p)]
    spec = HermiteSpec.uniform(F, plan.points, trunc)
    _, inv_fact = F.factorials(trunc - 1)
    cols = [[L.rows[i][j] for i in range(r)] for j in range(d)]
    evals = _pmap(lambda c: evaluate_raw(c, spec), cols, threads)
    fmul = F.mul
    out = []
    for a in range(p):
        grid = [[fmul(evals[j][a][i], inv_fact[i]) for j in range(d)] for i in range(trunc)]
        out.append(DiffOperator._raw(grid, F))
    return out


def block_phi(L: DiffOperator, plan: BlockEvalPlan, k: int, trunc: int, dx: int | None = None,
              threads: int = 1) -> BlockDiagonalMatrix:
    """Block ``j`` is the matrix of ``L`` on ``K[x]_k e^(a_j x)``."""
    if trunc < k:
        raise PreconditionViolated("truncation order must be at least the block width")
    dx = max(L.degree_bound, plan.dhat) if dx is None else dx
    conj = truncated_conjugates(L, plan, trunc, threads)
    return BlockDiagonalMatrix(_pmap(lambda c: phi_matrix(c, k, dx).mat, conj, threads))


def block_phi_inverse(M: BlockDiagonalMatrix, plan: BlockEvalPlan, dx: int, rbound: int,
                      threads: int = 1) -> DiffOperator:
    """Recover the operator of bidegree ``< (dx, rbound)`` from its block evaluation matrix."""
    F = plan.field
    if len(M.blocks) != plan.p:
        raise InconsistentMatrix(f"{len(M.blocks)} blocks for {plan.p} points")
    k = M.blocks[0].cols
    if plan.p * k < rbound:
        raise PreconditionViolated(f"{plan.p} blocks of width {k} cannot determine order {rbound}")
    F.check_characteristic(k + dx)
    local = _pmap(lambda b: phi_inverse(b, dx, k).padded(dx, k), M.blocks, threads)
    if all(not any(any(row) for row in g) for g in local):
        return DiffOperator.zero(F)
    spec = HermiteSpec.uniform(F, plan.points, k)
    fact, _ = F.factorials(k - 1)
    fmul = F.mul

    def recover(j):
        blocks = [[fmul(g[i][j], fact[i]) for i in range(k)] for g in local]
        col = interpolate_raw(blocks, spec)
        if len(col) > rbound:
            raise InconsistentMatrix(f"x^{j} coefficient has order {len(col) - 1} >= {rbound}")
        return col

    cols = _pmap(recover, list(range(dx)), threads)
    z = F.zero
    grid = [[cols[j][i] if i < len(cols[j]) else z for j in range(dx)] for i in range(rbound)]
    return DiffOperator._raw(grid, F)
