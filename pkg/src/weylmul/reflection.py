"""Fast reflection ``x -> D, D -> -x`` through Taylor shifts.

For the input ``L = sum p[i][j] x^j D^i`` the reflection is
``sum (-1)^i p[i][j] D^j x^i``; with ``p~[i][j] = (-1)^i p[i][j]`` and the
result written as ``sum q[u][v] x^u D^v``, the scaled coefficients along each
diagonal of the grid are related by a shift ``x -> x + 1``:

* order-major (``r >= d``): for ``k = v - u``, with
  ``F_k = sum_u u! p~[u][u+k] x^(u+k)``, the coefficient of ``x^s`` in
  ``F_k(x + 1)`` is ``(s-k)! q[s-k][s]`` for every ``s >= max(k, 0)``;
* degree-major (``d > r``): for ``k = u - v``, with
  ``F_k = sum_v v! p~[v+k][v] x^(v+k)``, the coefficient of ``x^s`` in
  ``F_k(x + 1)`` is ``(s-k)! q[s][s-k]``.

The second form shifts polynomials of length ``r`` instead of ``d``, which
keeps the cost at ``min(d M(r), r M(d))``.
"""

from __future__ import annotations

from . import poly as P
from .operator import DiffOperator, psi


def reflect_fast(L: DiffOperator) -> DiffOperator:
    F = L.field
    d, r = L.bidegree
    if L.is_zero():
        return L
    F.check_characteristic(d + r)
    fact, inv_fact = F.factorials(max(d, r))
    p = L.rows
    fmul, fneg = F.mul, F.neg
    z = F.zero
    out = [[z] * r for _ in range(d)]  # order < d, x-degree < r
    one = F.one
    if r >= d:
        for k in range(1 - r, d):
            lo, hi = max(0, -k), min(r, d - k)
            Fk = [z] * d
            for u in range(lo, hi):
                c = fmul(fact[u], p[u][u + k])
                Fk[u + k] = fneg(c) if u & 1 else c
            if not any(Fk):
                continue
            G = P.taylor_shift(Fk, one, F)
            for s in range(max(k, 0), d):
                u = s - k
                if u >= r:
                    break
                out[s][u] = fmul(G[s], inv_fact[u])
    else:
        for k in range(1 - d, r):
            lo, hi = max(0, -k), min(d, r - k)
            Fk = [z] * r
            for v in range(lo, hi):
                c = fmul(fact[v], p[v + k][v])
                Fk[v + k] = fneg(c) if (v + k) & 1 else c
            if not any(Fk):
                continue
            G = P.taylor_shift(Fk, one, F)
            for s in range(max(k, 0), r):
                v = s - k
                if v >= d:
                    break
                out[v][s] = fmul(G[s], inv_fact[v])
    return DiffOperator._raw(out, F)


def reflect_inverse(L: DiffOperator) -> DiffOperator:
    """Inverse reflection ``x -> -D, D -> x``."""
    return reflect_fast(psi(L))
