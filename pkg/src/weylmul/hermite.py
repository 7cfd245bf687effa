"""Fast Hermite evaluation and interpolation over a subproduct tree.

Evaluation reduces ``P`` down a balanced tree of moduli ``(x - a_j)**c_j``
and reads each leaf residue as a Taylor expansion at ``a_j``.  Interpolation
runs the opposite way: a local solution per leaf, multiplied by the inverse
of its cofactor ``M / (x - a_j)**c_j``, then combined pairwise up the tree.
Both directions cost ``O(M(d) log k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache

from . import poly as P
from .errors import DuplicatePoints
from .field import Field

CLASSICAL_CUTOFF = 48


@dataclass(frozen=True)
class HermiteSpec:
    field: Field
    points: tuple
    multiplicities: tuple

    def __post_init__(self):
        pts = tuple(self.field.coerce(a) for a in self.points)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "multiplicities", tuple(int(c) for c in self.multiplicities))
        if len(pts) != len(self.multiplicities) or not pts:
            raise ValueError("need one positive multiplicity per point")
        if any(c < 1 for c in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if len(set(pts)) != len(pts):
            raise DuplicatePoints("evaluation points must be pairwise distinct")

    @property
    def total(self) -> int:
        return sum(self.multiplicities)

    @classmethod
    def uniform(cls, field: Field, points, c: int) -> "HermiteSpec":
        return cls(field, tuple(points), (c,) * len(points))


@dataclass(frozen=True)
class HermiteValues:
    """``blocks[j] = (P(a_j), P'(a_j), ..., P^(c_j - 1)(a_j))``."""

    blocks: tuple

    def flat(self) -> list:
        return [v for b in self.blocks for v in b]


@dataclass(eq=False)
class _Node:
    poly: list
    lo: int
    hi: int
    left: "_Node | None" = None
    right: "_Node | None" = None
    rev_inv: list = dc_field(default_factory=list)


class SubproductTree:
    """Balanced product tree of ``(x - a_j)**c_j`` in the given point order."""

    def __init__(self, spec: HermiteSpec):
        F = spec.field
        F.check_characteristic(max(spec.multiplicities))
        self.spec = spec
        self.field = F
        self.root = self._build(0, len(spec.points))
        self._cofactor_inv: list | None = None

    def _leaf_poly(self, a, c: int) -> list:
        # (x - a)^c = sum_k binom(c, k) (-a)^(c-k) x^k
        F = self.field
        fact, inv_fact = F.factorials(c)
        na = F.neg(a)
        pw = [F.one]
        for _ in range(c):
            pw.append(F.mul(pw[-1], na))
        return [F.mul(F.mul(fact[c], F.mul(inv_fact[k], inv_fact[c - k])), pw[c - k]) for k in range(c + 1)]

    def _build(self, lo: int, hi: int) -> _Node:
        if hi - lo == 1:
            return _Node(self._leaf_poly(self.spec.points[lo], self.spec.multiplicities[lo]), lo, hi)
        mid = (lo + hi) // 2
        left, right = self._build(lo, mid), self._build(mid, hi)
        return _Node(P.mul(left.poly, right.poly, self.field), lo, hi, left, right)

    def _rem(self, a: list, node: _Node) -> list:
        F = self.field
        m = len(node.poly)
        if len(a) < m:
            return a
        qn = len(a) - m + 1
        if m <= CLASSICAL_CUTOFF or qn <= CLASSICAL_CUTOFF:
            return P._divrem_classical(a, node.poly, F)[1]
        if len(node.rev_inv) < qn:
            node.rev_inv = P.series_inverse(node.poly[::-1], max(qn, m - 1), F)
        return P.divrem_with_inverse(a, node.poly, node.rev_inv, F)[1]

    def residues(self, a: list) -> list:
        """``[a mod (x - a_j)**c_j for each j]`` via a remainder tree."""
        out = [None] * len(self.spec.points)

        def down(node, r):
            r = self._rem(r, node)
            if node.left is None:
                out[node.lo] = r
            else:
                down(node.left, r)
                down(node.right, r)

        down(self.root, P.trim(list(a)))
        return out

    def cofactor_inverses(self) -> list:
        """Per leaf, the inverse of ``M/(x-a_j)**c_j`` in powers of ``(x - a_j)``, mod ``(x - a_j)**c_j``."""
        if self._cofactor_inv is not None:
            return self._cofactor_inv
        F = self.field
        spec = self.spec
        res = [None] * len(spec.points)

        def down(node, cof):
            if node.left is None:
                res[node.lo] = cof
                return
            for child, sib in ((node.left, node.right), (node.right, node.left)):
                c = self._rem(cof, child)
                s = self._rem(sib.poly, child)
                down(child, self._rem(P.mul(c, s, F), child))

        down(self.root, [F.one])
        inv = []
        for j, cof in enumerate(res):
            c = spec.multiplicities[j]
            local = P.taylor_shift(cof + [F.zero] * (c - len(cof)), spec.points[j], F)
            inv.append(P.series_inverse(local, c, F))
        self._cofactor_inv = inv
        return inv

    def combine(self, leaf_values: list) -> list:
        """``sum_j leaf_values[j] * M / (x - a_j)**c_j`` computed up the tree."""
        F = self.field

        def up(node):
            if node.left is None:
                return leaf_values[node.lo]
            a, b = up(node.left), up(node.right)
            return P.add(P.mul(a, node.right.poly, F), P.mul(b, node.left.poly, F), F)

        return P.trim(up(self.root))


@lru_cache(maxsize=64)
def tree_for(spec: HermiteSpec) -> SubproductTree:
    return SubproductTree(spec)


def evaluate_raw(coeffs: list, spec: HermiteSpec) -> list:
    """Hermite data of a coefficient list, as a list of per-point blocks."""
    tree = tree_for(spec)
    F = spec.field
    out = []
    for j, r in enumerate(tree.residues(coeffs)):
        c = spec.multiplicities[j]
        fact, _ = F.factorials(c - 1)
        local = P.taylor_shift(r + [F.zero] * (c - len(r)), spec.points[j], F)
        out.append(F.vmul(local, fact))
    return out


def interpolate_raw(blocks: list, spec: HermiteSpec) -> list:
    """The unique coefficient list of degree ``< spec.total`` matching ``blocks``."""
    tree = tree_for(spec)
    F = spec.field
    inv = tree.cofactor_inverses()
    leaves = []
    for j, vals in enumerate(blocks):
        c = spec.multiplicities[j]
        if len(vals) != c:
            raise ValueError(f"block {j} has {len(vals)} values, expected {c}")
        _, inv_fact = F.factorials(c - 1)
        taylor = F.vmul(vals, inv_fact)
        local = P.mullow(taylor, inv[j], c, F)
        leaves.append(P.taylor_shift(local, F.neg(spec.points[j]), F))
    return tree.combine(leaves)


def hermite_evaluate(poly: P.Polynomial, spec: HermiteSpec) -> HermiteValues:
    if poly.field != spec.field:
        from .errors import FieldMismatch

        raise FieldMismatch(f"{poly.field.name} vs {spec.field.name}")
    return HermiteValues(tuple(tuple(b) for b in evaluate_raw(list(poly.coeffs), spec)))


def hermite_interpolate(values: HermiteValues, spec: HermiteSpec) -> P.Polynomial:
    return P.Polynomial._raw(interpolate_raw([list(b) for b in values.blocks], spec), spec.field)
