"""Exact coefficient fields.

Two backends are provided: :class:`RationalField` (values are reduced
:class:`fractions.Fraction`) and :class:`PrimeField` (values are canonical
residues in ``[0, p)``).  Algorithms work on the raw values and call the
field object for arithmetic; :class:`FieldElement` is the checked,
operator-overloading wrapper for callers who want one.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import gmpy2

from .errors import CharacteristicTooSmall, DivisionByZero, FieldMismatch, ParseError


class Field:
    """Common interface; subclasses fix the value representation."""

    kind: str
    modulus: int | None = None

    zero: object
    one: object

    # arithmetic on raw values -------------------------------------------------
    def from_int(self, n: int):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def vmul(self, a: list, b: list) -> list:
        """Elementwise product of two sequences (truncated to the shorter)."""
        m = self.mul
        return [m(x, y) for x, y in zip(a, b)]

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def coerce(self, value):
        """Map an int, Fraction or string to a canonical value of this field."""
        raise NotImplementedError

    def random(self, rng, bound: int | None = None):
        raise NotImplementedError

    # text -----------------------------------------------------------------------
    def format(self, a) -> str:
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    # guards ---------------------------------------------------------------------
    def check_characteristic(self, bound: int) -> None:
        """Raise unless every integer in ``1..bound`` is invertible."""
        if self.modulus is not None and self.modulus <= bound:
            raise CharacteristicTooSmall(
                f"{self.name} cannot invert integers up to {bound}"
            )

    def factorials(self, n: int) -> tuple[list, list]:
        """Return ``([0!, ..., n!], [1/0!, ..., 1/n!])``."""
        self.check_characteristic(n)
        return _factorial_table(self, n)

    def element(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    @property
    def name(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"Field({self.name!r})"

    def __eq__(self, other):
        return isinstance(other, Field) and self.name == other.name

    def __hash__(self):
        return hash(self.name)


class RationalField(Field):
    kind = "rational"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @property
    def name(self) -> str:
        return "rational"

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return 1 / a

    def div(self, a, b):
        if b == 0:
            raise DivisionByZero("division by zero")
        return a / b

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        return Fraction(value)

    def random(self, rng, bound=None):
        bound = bound or 9
        num = rng.randint(-bound, bound)
        den = rng.randint(1, 3)
        return Fraction(num, den)

    def format(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def parse(self, text):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational scalar {text!r}") from exc


class PrimeField(Field):
    kind = "prime"

    def __init__(self, modulus: int):
        if modulus < 2 or not gmpy2.is_prime(modulus, 32):
            raise ValueError(f"{modulus} is not prime")
        self.modulus = int(modulus)
        self.zero = 0
        self.one = 1

    @property
    def name(self) -> str:
        return f"fp:{self.modulus}"

    def from_int(self, n):
        return n % self.modulus

    def add(self, a, b):
        s = a + b
        return s - self.modulus if s >= self.modulus else s

    def sub(self, a, b):
        s = a - b
        return s + self.modulus if s < 0 else s

    def mul(self, a, b):
        return a * b % self.modulus

    def vmul(self, a, b):
        p = self.modulus
        return [x * y % p for x, y in zip(a, b)]

    def neg(self, a):
        return self.modulus - a if a else 0

    def inv(self, a):
        if a % self.modulus == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.modulus)

    def coerce(self, value):
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.modulus, value.denominator % self.modulus)
        return int(value) % self.modulus

    def random(self, rng, bound=None):
        return rng.randrange(self.modulus)

    def format(self, a) -> str:
        return str(a)

    def parse(self, text):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.div(int(num) % self.modulus, int(den) % self.modulus)
            return int(text) % self.modulus
        except ValueError as exc:
            raise ParseError(f"bad residue {text!r}") from exc


QQ = RationalField()


@lru_cache(maxsize=None)
def prime_field(p: int) -> PrimeField:
    return PrimeField(p)


def parse_field(spec: str) -> Field:
    """``"rational"`` or ``"fp:<p>"``."""
    spec = spec.strip().lower()
    if spec in ("rational", "qq", "q"):
        return QQ
    if spec.startswith("fp:"):
        try:
            return prime_field(int(spec[3:]))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field {spec!r}")


def characteristic_guard(field: Field, bound: int) -> None:
    field.check_characteristic(bound)


_FACT_CACHE: dict[Field, tuple[list, list]] = {}


def _factorial_table(field: Field, n: int):
    cached = _FACT_CACHE.get(field)
    if cached is not None and len(cached[0]) > n:
        return cached[0][: n + 1], cached[1][: n + 1]
    # grow geometrically so repeated small requests stay cheap
    size = max(n, 2 * len(cached[0]) if cached else 16)
    if field.modulus is not None:
        size = min(size, field.modulus - 1)
    fact = [field.one]
    for k in range(1, size + 1):
        fact.append(field.mul(fact[-1], field.from_int(k)))
    inv_fact = [field.zero] * (size + 1)
    inv_fact[size] = field.inv(fact[size])
    for k in range(size, 0, -1):
        inv_fact[k - 1] = field.mul(inv_fact[k], field.from_int(k))
    _FACT_CACHE[field] = (fact, inv_fact)
    return fact[: n + 1], inv_fact[: n + 1]


def factorial_table(n: int, field: Field) -> tuple[list, list]:
    return field.factorials(n)


class FieldElement:
    """An immutable field value tied to its field.

    >>> a = QQ.element("1/2"); a + QQ.element("1/3")
    FieldElement(rational, 5/6)
    """

    __slots__ = ("field", "value")

    def __init__(self, field: Field, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
            return other.value
        if isinstance(other, (int, Fraction)):
            return self.field.coerce(other)
        return NotImplemented

    def _wrap(self, value):
        return FieldElement(self.field, value)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.add(self.value, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(self.value, o))

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.sub(o, self.value))

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.mul(self.value, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(self.value, o))

    def __rtruediv__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._wrap(self.field.div(o, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def inv(self):
        return self._wrap(self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field.name} vs {other.field.name}")
            return self.value == other.value
        if isinstance(other, (int, Fraction)):
            return self.value == self.field.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field.name, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __str__(self):
        return self.field.format(self.value)

    def __repr__(self):
        return f"FieldElement({self.field.name}, {self})"
