"""Differential operators in canonical form ``sum L[i][j] x^j D^i``.

Row ``i`` of the grid is the coefficient polynomial of ``D^i``; column ``j``
is the power of ``x``.  The grid is rectangular (``r`` rows of width ``d``)
and trimmed, so ``bidegree`` is the tight bound ``(d, r)``.
"""

from __future__ import annotations

import json

import numpy as np

from . import poly as P
from .errors import FieldMismatch, ParseError
from .field import Field, parse_field


class DiffOperator:
    __slots__ = ("rows", "field")

    def __init__(self, rows, field: Field):
        self.rows = _normalize([[field.coerce(c) for c in row] for row in rows], field)
        self.field = field

    @classmethod
    def _raw(cls, rows: list, field: Field) -> "DiffOperator":
        obj = cls.__new__(cls)
        obj.rows = _normalize(rows, field)
        obj.field = field
        return obj

    # constructors ---------------------------------------------------------------
    @classmethod
    def zero(cls, field: Field) -> "DiffOperator":
        return cls._raw([], field)

    @classmethod
    def scalar(cls, c, field: Field) -> "DiffOperator":
        return cls._raw([[field.coerce(c)]], field)

    @classmethod
    def monomial(cls, j: int, i: int, field: Field, c=1) -> "DiffOperator":
        """``c * x^j * D^i``."""
        rows = [[] for _ in range(i)] + [[field.zero] * j + [field.coerce(c)]]
        return cls._raw(rows, field)

    @classmethod
    def from_polynomial(cls, poly: P.Polynomial) -> "DiffOperator":
        return cls._raw([list(poly.coeffs)], poly.field)

    @classmethod
    def from_terms(cls, terms, field: Field) -> "DiffOperator":
        """Build from ``(i, j, c)`` triples (``c * x^j * D^i``), summing repeats."""
        acc: dict[tuple[int, int], object] = {}
        for i, j, c in terms:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            acc[i, j] = field.add(acc.get((i, j), field.zero), field.coerce(c))
        if not acc:
            return cls.zero(field)
        r = max(i for i, _ in acc) + 1
        d = max(j for _, j in acc) + 1
        rows = [[field.zero] * d for _ in range(r)]
        for (i, j), c in acc.items():
            rows[i][j] = c
        return cls._raw(rows, field)

    @classmethod
    def random(cls, field: Field, d: int, r: int, rng) -> "DiffOperator":
        """Dense operator of bidegree at most ``(d, r)`` drawn from ``rng`` (a ``random.Random``)."""
        return cls._raw([[field.random(rng) for _ in range(d)] for _ in range(r)], field)

    # shape ----------------------------------------------------------------------
    @property
    def order_bound(self) -> int:
        return len(self.rows)

    @property
    def degree_bound(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def bidegree(self) -> tuple[int, int]:
        """``(d, r)``: strict bounds on the x-degree and the order."""
        return self.degree_bound, self.order_bound

    def is_zero(self) -> bool:
        return not self.rows

    def coeff(self, i: int, j: int):
        if i < len(self.rows) and j < self.degree_bound:
            return self.rows[i][j]
        return self.field.zero

    def terms(self):
        """Yield ``(i, j, c)`` for nonzero coefficients, ordered by ``i`` then ``j``."""
        for i, row in enumerate(self.rows):
            for j, c in enumerate(row):
                if c != 0:
                    yield i, j, c

    def padded(self, d: int, r: int) -> list:
        """Grid copied into an ``r x d`` array of zeros."""
        z = self.field.zero
        out = [list(row) + [z] * (d - len(row)) for row in self.rows[:r]]
        out.extend([[z] * d for _ in range(r - len(out))])
        return out

    # arithmetic -----------------------------------------------------------------
    def _check(self, other: "DiffOperator"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")

    def __add__(self, other):
        self._check(other)
        F = self.field
        n = max(self.order_bound, other.order_bound)
        rows = [P.add(self.rows[i] if i < self.order_bound else [], other.rows[i] if i < other.order_bound else [], F)
                for i in range(n)]
        return DiffOperator._raw(rows, F)

    def __neg__(self):
        F = self.field
        return DiffOperator._raw([[F.neg(c) for c in row] for row in self.rows], F)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        from .multiply import mul

        return mul(self, other)

    def __call__(self, poly: P.Polynomial) -> P.Polynomial:
        return apply(self, poly)

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field.name, tuple(map(tuple, self.rows))))

    # text -----------------------------------------------------------------------
    def __str__(self):
        F = self.field
        parts = []
        for i, j, c in self.terms():
            monos = []
            if j:
                monos.append("x" if j == 1 else f"x^{j}")
            if i:
                monos.append("D" if i == 1 else f"D^{i}")
            parts.append(P.format_term(F, c, monos))
        return P.join_terms(parts)

    def __repr__(self):
        return f"DiffOperator({str(self)!r}, {self.field.name})"

    @classmethod
    def parse(cls, text: str, field: Field) -> "DiffOperator":
        terms = []
        for coeff, factors in P.parse_terms(text, field):
            i = j = 0
            seen_d = False
            for var, e in factors:
                if var == "x":
                    if seen_d:
                        raise ParseError(f"x after D in {text!r}; write terms as c*x^j*D^i")
                    j += e
                elif var == "D":
                    seen_d = True
                    i += e
                else:
                    raise ParseError(f"unknown symbol {var!r}")
            terms.append((i, j, coeff))
        return cls.from_terms(terms, field)

    def to_json(self) -> str:
        F = self.field
        return json.dumps({"field": F.name, "terms": [[i, j, F.format(c)] for i, j, c in self.terms()]})

    @classmethod
    def from_json(cls, text: str) -> "DiffOperator":
        try:
            data = json.loads(text)
            field = parse_field(data["field"])
            return cls.from_terms([(int(i), int(j), field.parse(str(c))) for i, j, c in data["terms"]], field)
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"bad operator JSON: {exc}") from exc


def _normalize(rows: list, field: Field) -> list:
    rows = [P.trim(list(r)) for r in rows]
    while rows and not rows[-1]:
        rows.pop()
    if not rows:
        return []
    d = max(len(r) for r in rows)
    z = field.zero
    return [r + [z] * (d - len(r)) if len(r) < d else r for r in rows]


# -- basic operations -----------------------------------------------------------


def apply(L: DiffOperator, poly: P.Polynomial) -> P.Polynomial:
    """``sum_i L_i(x) * poly^(i)(x)``."""
    if L.field != poly.field:
        raise FieldMismatch(f"{L.field.name} vs {poly.field.name}")
    F = L.field
    out: list = []
    deriv = list(poly.coeffs)
    for i, row in enumerate(L.rows):
        if i:
            deriv = P.derivative(deriv, F)
        if not deriv:
            break
        out = P.add(out, P.mul(row, deriv, F), F)
    return P.Polynomial._raw(out, F)


def naive_mul(K: DiffOperator, L: DiffOperator) -> DiffOperator:
    """Reference product ``K L`` using only the rule ``D a(x) = a(x) D + a'(x)``.

    ``D^i L`` is built by left-multiplying by ``D`` one step at a time; each
    coefficient ``K[i][a] x^a`` of ``K`` then adds a shifted, scaled copy of
    ``D^i L`` to the result (schoolbook convolution in ``x``).  No division is
    performed, so any field works.
    """
    K._check(L)
    F = K.field
    if K.is_zero() or L.is_zero():
        return DiffOperator.zero(F)
    p = F.modulus
    dK, rK = K.bidegree
    dL, rL = L.bidegree
    rows = rK + rL - 1
    cur = np.full((rows, dL), F.zero, dtype=object)
    cur[:rL] = np.array(L.rows, dtype=object).reshape(rL, dL)
    out = np.full((rows, dK + dL - 1), F.zero, dtype=object)
    scale = np.array([F.from_int(j) for j in range(1, dL)], dtype=object)
    active = rL
    for i, krow in enumerate(K.rows):
        if i:
            # D * sum_m C_m D^m = sum_m (C_m' D^m + C_m D^(m+1))
            nxt = np.full_like(cur, F.zero)
            nxt[:active, :-1] = cur[:active, 1:] * scale
            nxt[1 : active + 1] += cur[:active]
            cur = nxt % p if p is not None else nxt
            active += 1
        block = cur[:active]
        for a, c in enumerate(krow):
            if c:
                out[:active, a : a + dL] += c * block
    if p is not None:
        out %= p
    return DiffOperator._raw(out.tolist(), F)


def truncate_order(L: DiffOperator, n: int) -> DiffOperator:
    """Drop every term of order ``>= n``."""
    return DiffOperator._raw([list(r) for r in L.rows[:n]], L.field)


def conjugate_exp(L: DiffOperator, alpha) -> DiffOperator:
    """``L(x, D + alpha)`` by a Taylor shift of each x-column viewed as a polynomial in D."""
    F = L.field
    F.check_characteristic(L.order_bound)
    alpha = F.coerce(alpha)
    d, r = L.bidegree
    cols = [[L.rows[i][j] for i in range(r)] for j in range(d)]
    shifted = [P.taylor_shift(c, alpha, F) for c in cols]
    return DiffOperator._raw([[shifted[j][i] for j in range(d)] for i in range(r)], F)


def psi(L: DiffOperator) -> DiffOperator:
    """The involution ``x -> -x, D -> -D``."""
    F = L.field
    neg = F.neg
    rows = [[neg(c) if (i + j) & 1 else c for j, c in enumerate(row)] for i, row in enumerate(L.rows)]
    return DiffOperator._raw(rows, F)


def reflect_naive(L: DiffOperator) -> DiffOperator:
    """``x -> D, D -> -x`` by expanding ``D^j * (sum_i L[i][j] (-x)^i)`` with :func:`naive_mul`."""
    F = L.field
    d, r = L.bidegree
    out = DiffOperator.zero(F)
    for j in range(d):
        col = [L.rows[i][j] if i % 2 == 0 else F.neg(L.rows[i][j]) for i in range(r)]
        if not any(col):
            continue
        right = DiffOperator._raw([col], F)
        out = out + naive_mul(DiffOperator.monomial(0, j, F), right)
    return out
