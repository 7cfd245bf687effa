"""Operator multiplication: evaluation at exponential polynomials and dispatch."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CharacteristicTooSmall, PreconditionViolated
from .evaluation import BlockEvalPlan, block_phi, block_phi_inverse
from .matrix import block_mul
from .operator import DiffOperator, naive_mul
from .reflection import reflect_fast, reflect_inverse


@dataclass
class DispatchConfig:
    """Thresholds for :func:`mul` in ``auto`` mode.

    Products with ``min(d, r) <= naive_min`` or ``d * r <= naive_area`` go to
    :func:`naive_mul`.  When the field characteristic is too small for the
    fast path, products with ``d * r <= fallback_area`` still run naively.
    """

    naive_min: int = 4
    naive_area: int = 256
    fallback_area: int = 4096
    threads: int = 1


config = DispatchConfig()


def guard_bound(d: int, r: int) -> int:
    return 8 * max(d, r)


def _bounds(K: DiffOperator, L: DiffOperator) -> tuple[int, int]:
    return max(K.degree_bound, L.degree_bound), max(K.order_bound, L.order_bound)


def mul_tall(K: DiffOperator, L: DiffOperator) -> DiffOperator:
    """Product for ``r >= d`` by evaluation on ``x^m e^(j x)``, ``j < ceil(r/d)``."""
    K._check(L)
    F = K.field
    d, r = _bounds(K, L)
    if d < 1 or r < d:
        raise PreconditionViolated(f"mul_tall needs r >= d >= 1, got d={d}, r={r}")
    F.check_characteristic(guard_bound(d, r))
    if K.is_zero() or L.is_zero():
        return DiffOperator.zero(F)
    th = config.threads
    plan = BlockEvalPlan.build(d, r, F)
    dh = plan.dhat
    A = block_phi(K, plan, plan.trunc_left, plan.trunc_left, dx=dh, threads=th)
    B = block_phi(L, plan, plan.trunc_right, plan.trunc_right, dx=dh, threads=th)
    C = block_mul(A, B, threads=th)
    return block_phi_inverse(C, plan, dx=2 * dh - 1, rbound=2 * r - 1, threads=th)


def mul_wide(K: DiffOperator, L: DiffOperator) -> DiffOperator:
    """Product for ``d >= r``: reflect, multiply with :func:`mul_tall`, reflect back."""
    K._check(L)
    d, r = _bounds(K, L)
    if r < 1 or d < r:
        raise PreconditionViolated(f"mul_wide needs d >= r >= 1, got d={d}, r={r}")
    K.field.check_characteristic(guard_bound(d, r))
    if K.is_zero() or L.is_zero():
        return DiffOperator.zero(K.field)
    return reflect_inverse(mul_tall(reflect_fast(K), reflect_fast(L)))


def mul_fast(K: DiffOperator, L: DiffOperator) -> DiffOperator:
    K._check(L)
    if K.is_zero() or L.is_zero():
        return DiffOperator.zero(K.field)
    d, r = _bounds(K, L)
    return mul_tall(K, L) if r >= d else mul_wide(K, L)


def mul(K: DiffOperator, L: DiffOperator, algorithm: str = "auto") -> DiffOperator:
    """``K * L`` in canonical form.

    ``algorithm`` is ``"auto"`` (threshold dispatch), ``"naive"`` or ``"fast"``.
    """
    K._check(L)
    if K.is_zero() or L.is_zero():
        return DiffOperator.zero(K.field)
    if algorithm == "naive":
        return naive_mul(K, L)
    if algorithm == "fast":
        return mul_fast(K, L)
    if algorithm != "auto":
        raise ValueError(f"unknown algorithm {algorithm!r}")
    d, r = _bounds(K, L)
    if min(d, r) <= config.naive_min or d * r <= config.naive_area:
        return naive_mul(K, L)
    try:
        K.field.check_characteristic(guard_bound(d, r))
    except CharacteristicTooSmall:
        if d * r <= config.fallback_area:
            return naive_mul(K, L)
        raise
    return mul_fast(K, L)
