"""Dense univariate polynomials over an exact field.

Low-level routines operate on plain lists of field values (index ``i`` holds
the coefficient of ``x**i``) and take the field as an explicit argument;
:class:`Polynomial` wraps them for interactive use.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

import gmpy2
import numpy as np

from .errors import DivisionByZero, FieldMismatch, ParseError
from .field import Field


@dataclass
class MulConfig:
    """Kernel selection for :func:`mul`.

    ``kernel`` is ``"auto"`` (Kronecker substitution for prime fields,
    Karatsuba otherwise), ``"karatsuba"`` or ``"schoolbook"``.
    """

    schoolbook_threshold: int = 32
    kronecker_threshold: int = 6
    kernel: str = "auto"


config = MulConfig()


def trim(a: list) -> list:
    n = len(a)
    while n and a[n - 1] == 0:
        n -= 1
    return a if n == len(a) else a[:n]


def add(a: list, b: list, F: Field) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    fadd = F.add
    for i, c in enumerate(b):
        out[i] = fadd(out[i], c)
    return out


def sub(a: list, b: list, F: Field) -> list:
    n = max(len(a), len(b))
    z = F.zero
    fsub = F.sub
    out = []
    for i in range(n):
        out.append(fsub(a[i] if i < len(a) else z, b[i] if i < len(b) else z))
    return out


def scale(a: list, c, F: Field) -> list:
    fmul = F.mul
    return [fmul(x, c) for x in a]


def derivative(a: list, F: Field) -> list:
    fmul, fi = F.mul, F.from_int
    return [fmul(a[i], fi(i)) for i in range(1, len(a))]


def evaluate(a: list, x0, F: Field):
    acc = F.zero
    fadd, fmul = F.add, F.mul
    for c in reversed(a):
        acc = fadd(fmul(acc, x0), c)
    return acc


# -- multiplication kernels ---------------------------------------------------


def schoolbook(a: list, b: list, F: Field) -> list:
    """Quadratic convolution; the reference every faster kernel is checked against."""
    out = schoolbook_unreduced(a, b, F)
    p = F.modulus
    return [x % p for x in out] if p is not None else out


def schoolbook_unreduced(a: list, b: list, F: Field) -> list:
    """Schoolbook product; prime-field entries are left as unreduced integers."""
    la, lb = len(a), len(b)
    if not la or not lb:
        return []
    if la < lb:
        a, b, la, lb = b, a, lb, la
    out = [F.zero] * (la + lb - 1)
    for j, y in enumerate(b):
        if y:
            out[j : j + la] = [o + x * y for o, x in zip(out[j : j + la], a)]
    return out


def _karatsuba(a: list, b: list, F: Field, base: int) -> list:
    la, lb = len(a), len(b)
    if la < lb:
        a, b, la, lb = b, a, lb, la
    if lb <= base:
        if lb == 0:
            return []
        # unbalanced: cut the long operand into lb-sized chunks
        if la > 2 * lb and lb > base // 2:
            return _chunked(a, b, F, base)
        return schoolbook(a, b, F)
    if la >= 2 * lb:
        return _chunked(a, b, F, base)
    h = (la + 1) // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _karatsuba(a0, b0, F, base)
    z2 = _karatsuba(a1, b1, F, base) if b1 else []
    z1 = _karatsuba(add(a0, a1, F), add(b0, b1, F), F, base)
    z1 = sub(sub(z1, z0, F), z2, F)
    out = [F.zero] * (la + lb - 1)
    fadd = F.add
    for i, c in enumerate(z0):
        out[i] = c
    for i, c in enumerate(z1):
        if i + h < len(out):
            out[i + h] = fadd(out[i + h], c)
    for i, c in enumerate(z2):
        out[i + 2 * h] = fadd(out[i + 2 * h], c)
    return out


def _chunked(a: list, b: list, F: Field, base: int) -> list:
    lb = len(b)
    out = [F.zero] * (len(a) + lb - 1)
    fadd = F.add
    for s in range(0, len(a), lb):
        part = _karatsuba(a[s : s + lb], b, F, base)
        for i, c in enumerate(part):
            out[s + i] = fadd(out[s + i], c)
    return out


def karatsuba(a: list, b: list, F: Field) -> list:
    if not a or not b:
        return []
    return _karatsuba(a, b, F, config.schoolbook_threshold)


def kronecker(a: list, b: list, p: int) -> list:
    """Product over Z/p by packing both operands into one big integer each."""
    la, lb = len(a), len(b)
    if not la or not lb:
        return []
    bits = 2 * (p - 1).bit_length() + min(la, lb).bit_length()
    width = max((bits + 7) // 8, 8)
    n = la + lb - 1
    if n >= 96 and p < 1 << 32 and width <= 16:
        A = gmpy2.from_binary(_HDR + _pack32(a, width))
        B = gmpy2.from_binary(_HDR + _pack32(b, width))
        return _unpack32(gmpy2.to_binary(A * B)[2:], n, width, p)
    A = gmpy2.mpz(int.from_bytes(b"".join([c.to_bytes(width, "little") for c in a]), "little"))
    B = gmpy2.mpz(int.from_bytes(b"".join([c.to_bytes(width, "little") for c in b]), "little"))
    raw = int(A * B).to_bytes(n * width, "little")
    frm = int.from_bytes
    return [frm(raw[i : i + width], "little") % p for i in range(0, n * width, width)]


# gmpy2 binary format for a nonnegative mpz: type byte, sign byte, little-endian magnitude
_HDR = b"\x01\x01"


def _pack32(a: list, width: int) -> bytes:
    buf = np.zeros((len(a), width), dtype=np.uint8)
    buf[:, :8] = np.asarray(a, dtype="<u8").view(np.uint8).reshape(-1, 8)
    return buf.tobytes()


def _unpack32(raw: bytes, n: int, width: int, p: int) -> list:
    need = n * width
    if len(raw) < need:
        raw = raw + bytes(need - len(raw))
    buf = np.frombuffer(raw, dtype=np.uint8, count=need).reshape(n, width)
    lo = np.ascontiguousarray(buf[:, :8]).view("<u8").ravel()
    hi_bytes = np.zeros((n, 8), dtype=np.uint8)
    hi_bytes[:, : width - 8] = buf[:, 8:]
    hi = hi_bytes.view("<u8").ravel()
    two64 = np.uint64((1 << 64) % p)
    pp = np.uint64(p)
    return ((lo % pp + (hi % pp) * two64 % pp) % pp).tolist()


def mul(a: list, b: list, F: Field) -> list:
    """Exact product; the result has length ``len(a) + len(b) - 1`` (or 0)."""
    if not a or not b:
        return []
    short = min(len(a), len(b))
    kernel = config.kernel
    if kernel == "schoolbook":
        return schoolbook(a, b, F)
    if kernel == "auto" and F.modulus is not None:
        if short < config.kronecker_threshold:
            return schoolbook(a, b, F)
        return kronecker(a, b, F.modulus)
    if short <= config.schoolbook_threshold:
        return schoolbook(a, b, F)
    return karatsuba(a, b, F)


def mullow(a: list, b: list, n: int, F: Field) -> list:
    """First ``n`` coefficients of ``a*b``, zero padded."""
    out = mul(a[:n], b[:n], F)[:n]
    if len(out) < n:
        out = out + [F.zero] * (n - len(out))
    return out


# -- division -----------------------------------------------------------------


def series_inverse(f: list, n: int, F: Field) -> list:
    """``g`` with ``f*g = 1 mod x**n``; requires ``f[0] != 0``."""
    if not f or F.is_zero(f[0]):
        raise DivisionByZero("power series with zero constant term")
    g = [F.inv(f[0])]
    prec = 1
    two = F.from_int(2)
    while prec < n:
        prec = min(2 * prec, n)
        fg = mullow(f, g, prec, F)
        corr = [F.neg(c) for c in fg]
        corr[0] = F.add(corr[0], two)
        g = mullow(g, corr, prec, F)
    return g[:n]


def _divrem_classical(a: list, b: list, F: Field):
    rem = list(a)
    m = len(b)
    lead_inv = F.inv(b[-1])
    p = F.modulus
    if p is not None:
        # reduce lazily: entries only need to be canonical when read as a pivot
        q = [0] * (len(a) - m + 1)
        for k in range(len(a) - m, -1, -1):
            c = rem[k + m - 1] % p * lead_inv % p
            q[k] = c
            if c:
                rem[k : k + m] = [x - c * y for x, y in zip(rem[k : k + m], b)]
        return q, trim([x % p for x in rem[: m - 1]])
    q = [F.zero] * (len(a) - m + 1)
    fsub, fmul = F.sub, F.mul
    for k in range(len(a) - m, -1, -1):
        c = fmul(rem[k + m - 1], lead_inv)
        q[k] = c
        if c:
            for i in range(m):
                rem[k + i] = fsub(rem[k + i], fmul(c, b[i]))
    return q, trim(rem[: m - 1])


def divrem_with_inverse(a: list, b: list, rev_inv: list, F: Field):
    """Fast division given ``rev_inv = 1/reverse(b)`` to at least ``len(a)-len(b)+1`` terms."""
    m = len(b)
    n = len(a)
    if n < m:
        return [], trim(list(a))
    qn = n - m + 1
    qrev = mullow(a[::-1][:qn], rev_inv[:qn], qn, F)
    q = trim(qrev[::-1])
    if m == 1:
        return q, []
    low = mul(b[: m - 1], q[: m - 1], F)[: m - 1]
    r = sub(a[: m - 1], low, F)
    return q, trim(r)


def divrem(a: list, b: list, F: Field):
    """Quotient and remainder of ``a`` by ``b`` (lists, both trimmed on return)."""
    b = trim(list(b))
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = trim(list(a))
    m = len(b)
    if len(a) < m:
        return [], a
    qn = len(a) - m + 1
    if m <= 48 or qn <= 48:
        q, r = _divrem_classical(a, b, F)
        return trim(q), r
    rev_inv = series_inverse(b[::-1], qn, F)
    return divrem_with_inverse(a, b, rev_inv, F)


# -- shifts and factorial transforms -----------------------------------------


def taylor_shift(a: list, c, F: Field) -> list:
    """Coefficients of ``a(x + c)`` via one convolution.

    With ``A_i = i! a_i`` and ``E_j = c**j / j!`` the shifted coefficient of
    ``x**k`` is ``(1/k!) sum_i A_i E_{i-k}``.
    """
    n = len(a)
    if n <= 1 or F.is_zero(c):
        return list(a)
    fact, inv_fact = F.factorials(n - 1)
    fmul = F.mul
    scaled = F.vmul(a, fact)[::-1]
    powers = [F.one]
    for _ in range(1, n):
        powers.append(fmul(powers[-1], c))
    conv = mullow(scaled, F.vmul(powers, inv_fact), n, F)
    return F.vmul(conv[::-1], inv_fact)


def falling_to_values(a: list, N: int, F: Field) -> list:
    """``[f(0), ..., f(N-1)]`` for ``f(m) = sum_i a_i m(m-1)...(m-i+1)``."""
    if N <= 0:
        return []
    fact, inv_fact = F.factorials(N - 1)
    conv = mullow(list(a[:N]), inv_fact, N, F) if a else [F.zero] * N
    return F.vmul(conv, fact)


def values_to_falling(v: list, F: Field) -> list:
    """Inverse of :func:`falling_to_values` for ``N = len(v)``."""
    N = len(v)
    if not N:
        return []
    fact, inv_fact = F.factorials(N - 1)
    fneg = F.neg
    scaled = F.vmul(v, inv_fact)
    alt = [inv_fact[u] if u % 2 == 0 else fneg(inv_fact[u]) for u in range(N)]
    return mullow(scaled, alt, N, F)


# -- user-facing wrapper ------------------------------------------------------

_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


class Polynomial:
    """Immutable dense polynomial.

    >>> from weylmul.field import QQ
    >>> p = Polynomial.parse("x^2 - 1", QQ)
    >>> p.degree, str(p.shift(QQ.one))
    (2, 'x^2 + 2*x')
    """

    __slots__ = ("coeffs", "field")

    def __init__(self, coeffs, field: Field):
        self.coeffs = tuple(trim([field.coerce(c) for c in coeffs]))
        self.field = field

    @classmethod
    def _raw(cls, coeffs: list, field: Field) -> "Polynomial":
        obj = cls.__new__(cls)
        obj.coeffs = tuple(trim(coeffs))
        obj.field = field
        return obj

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: "Polynomial"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")

    def __add__(self, other):
        self._check(other)
        return Polynomial._raw(add(list(self.coeffs), list(other.coeffs), self.field), self.field)

    def __sub__(self, other):
        self._check(other)
        return Polynomial._raw(sub(list(self.coeffs), list(other.coeffs), self.field), self.field)

    def __neg__(self):
        return Polynomial._raw([self.field.neg(c) for c in self.coeffs], self.field)

    def __mul__(self, other):
        self._check(other)
        return Polynomial._raw(mul(list(self.coeffs), list(other.coeffs), self.field), self.field)

    def __divmod__(self, other):
        self._check(other)
        q, r = divrem(list(self.coeffs), list(other.coeffs), self.field)
        return Polynomial._raw(q, self.field), Polynomial._raw(r, self.field)

    def __call__(self, x0):
        return evaluate(self.coeffs, self.field.coerce(x0), self.field)

    def shift(self, c) -> "Polynomial":
        return Polynomial._raw(taylor_shift(list(self.coeffs), self.field.coerce(c), self.field), self.field)

    def derivative(self) -> "Polynomial":
        return Polynomial._raw(derivative(list(self.coeffs), self.field), self.field)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.name, self.coeffs))

    def __repr__(self):
        return f"Polynomial({str(self)!r}, {self.field.name})"

    def __str__(self):
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            parts.append(format_term(self.field, c, [mono] if mono else []))
        return join_terms(parts)

    @classmethod
    def parse(cls, text: str, field: Field) -> "Polynomial":
        coeffs: dict[int, object] = {}
        for coeff, factors in parse_terms(text, field):
            k = 0
            for var, e in factors:
                if var != "x":
                    raise ParseError(f"unexpected variable {var!r} in polynomial")
                k += e
            coeffs[k] = field.add(coeffs.get(k, field.zero), coeff)
        if not coeffs:
            return cls._raw([], field)
        out = [field.zero] * (max(coeffs) + 1)
        for k, c in coeffs.items():
            out[k] = c
        return cls._raw(out, field)


# -- shared term grammar (also used for operators) ---------------------------


def format_term(field: Field, c, monos: list[str]) -> str:
    """Render ``c*m1*m2``, dropping a unit coefficient; a leading ``-`` marks negatives."""
    text = field.format(c)
    neg = text.startswith("-")
    if neg:
        text = text[1:]
    if monos:
        body = "*".join(monos) if text == "1" else "*".join([text] + monos)
    else:
        body = text
    return "-" + body if neg else body


def join_terms(parts: list[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for t in parts[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


_FACTOR = re.compile(r"^([A-Za-z])(?:\^(\d+))?$")


def parse_terms(text: str, field: Field):
    """Yield ``(coefficient, [(var, exponent), ...])`` for a signed sum of terms."""
    s = text.strip()
    if not s:
        raise ParseError("empty expression")
    pos = 0
    expect_term = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or (m.group(1) is None and not expect_term):
            raise ParseError(f"cannot parse {text!r} near position {pos}")
        sign, body = m.group(1), m.group(2).strip()
        pos = m.end()
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coeff = field.one
        factors = []
        for tok in body.split("*"):
            tok = tok.strip()
            fm = _FACTOR.match(tok)
            if fm:
                factors.append((fm.group(1), int(fm.group(2) or 1)))
            elif tok and tok[0].isdigit():
                coeff = field.mul(coeff, field.parse(tok))
            else:
                raise ParseError(f"bad factor {tok!r} in {text!r}")
        if sign == "-":
            coeff = field.neg(coeff)
        expect_term = False
        yield coeff, factors
