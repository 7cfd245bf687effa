"""Exact multiplication of linear differential operators in K[x, D]."""

from .errors import (
    BlockCountMismatch,
    CharacteristicTooSmall,
    DivisionByZero,
    DuplicatePoints,
    FieldMismatch,
    InconsistentMatrix,
    ParseError,
    PreconditionViolated,
    ShapeMismatch,
    WeylError,
)
from .evaluation import BlockEvalPlan, block_phi, block_phi_inverse, phi_inverse, phi_matrix
from .field import QQ, Field, FieldElement, PrimeField, RationalField, parse_field, prime_field
from .hermite import HermiteSpec, HermiteValues, hermite_evaluate, hermite_interpolate
from .matrix import BlockDiagonalMatrix, Matrix, block_mul, mat_mul, mat_mul_schoolbook
from .multiply import mul, mul_fast, mul_tall, mul_wide
from .operator import DiffOperator, apply, conjugate_exp, naive_mul, psi, reflect_naive, truncate_order
from .poly import Polynomial
from .reflection import reflect_fast, reflect_inverse

__all__ = [
    "BlockCountMismatch", "CharacteristicTooSmall", "DivisionByZero", "DuplicatePoints",
    "FieldMismatch", "InconsistentMatrix", "ParseError", "PreconditionViolated", "ShapeMismatch",
    "WeylError", "BlockEvalPlan", "block_phi", "block_phi_inverse", "phi_inverse", "phi_matrix",
    "QQ", "Field", "FieldElement", "PrimeField", "RationalField", "parse_field", "prime_field",
    "HermiteSpec", "HermiteValues", "hermite_evaluate", "hermite_interpolate",
    "BlockDiagonalMatrix", "Matrix", "block_mul", "mat_mul", "mat_mul_schoolbook",
    "mul", "mul_fast", "mul_tall", "mul_wide", "DiffOperator", "apply", "conjugate_exp",
    "naive_mul", "psi", "reflect_naive", "truncate_order", "Polynomial",
    "reflect_fast", "reflect_inverse",
]
