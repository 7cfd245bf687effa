from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from weylmul import QQ, CharacteristicTooSmall, DivisionByZero, FieldMismatch, ParseError, parse_field, prime_field
from weylmul.field import characteristic_guard, factorial_table

from oracles import FP, scalars


def test_rational_addition():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)


def test_prime_inverse_matches_brute_force():
    F = prime_field(7)
    brute = next(k for k in range(1, 7) if 3 * k % 7 == 1)
    assert F.inv(3) == brute == 5


@pytest.mark.parametrize("F", [QQ, FP])
def test_zero_is_additive_identity(F):
    z = F.from_int(0)
    assert z == F.zero
    assert F.add(F.from_int(17), z) == F.from_int(17)


def test_factorial_tables():
    assert factorial_table(4, QQ)[0] == [1, 1, 2, 6, 24]
    fact, inv = factorial_table(4, prime_field(101))
    assert fact == [1, 1, 2, 6, 24]
    assert all(prime_field(101).mul(f, g) == 1 for f, g in zip(fact, inv))
    with pytest.raises(CharacteristicTooSmall):
        factorial_table(5, prime_field(5))


def test_characteristic_guard():
    characteristic_guard(QQ, 10**9)
    characteristic_guard(prime_field(97), 64)
    with pytest.raises(CharacteristicTooSmall):
        characteristic_guard(prime_field(97), 200)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        FP.inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.div(1, 0)


def test_nonprime_modulus_rejected():
    with pytest.raises(ValueError):
        prime_field(91)


def test_parse_field():
    assert parse_field("rational") is QQ
    assert parse_field("fp:97") == prime_field(97)
    with pytest.raises(ParseError):
        parse_field("complex")


def test_scalar_text_roundtrip():
    assert QQ.format(QQ.parse("-3/6")) == "-1/2"
    assert FP.parse("1/2") == FP.inv(2)


def test_element_wrapper():
    F = prime_field(7)
    a, b = F.element(3), F.element(5)
    assert a * b == F.element(1)
    assert a / a == F.element(1)
    assert -a + a == F.element(0)
    with pytest.raises(FieldMismatch):
        a + prime_field(11).element(3)


@pytest.mark.parametrize("F", [QQ, FP])
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(scalars(F)) for _ in range(3))
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    assert F.add(a, b) == F.add(b, a)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == F.zero
    assert F.sub(a, b) == F.add(a, F.neg(b))
    if not F.is_zero(a):
        assert F.mul(a, F.inv(a)) == F.one
