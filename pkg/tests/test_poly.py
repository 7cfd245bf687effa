import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from weylmul import QQ, Polynomial, prime_field
from weylmul import poly as P
from weylmul.poly import falling_to_values, taylor_shift, values_to_falling

from oracles import FIELDS, FP, FP_SMALL, coeff_lists, conv, falling, scalars


def poly(text, F=QQ):
    return Polynomial.parse(text, F)


def test_spec_products():
    assert poly("x + 1") * poly("x - 1") == poly("x^2 - 1")
    p = poly("3*x^4 - x + 1/2")
    assert p * poly("1") == p
    assert (p * poly("0")).is_zero()


@pytest.mark.parametrize("F", [QQ, FP, prime_field(97)])
def test_degree_40_matches_convolution(F):
    rng = random.Random(40)
    a = [F.random(rng) for _ in range(41)]
    b = [F.random(rng) for _ in range(41)]
    assert P.mul(a, b, F) == conv(a, b, F)


@pytest.mark.parametrize("kernel", ["schoolbook", "karatsuba"])
@pytest.mark.parametrize("F", FIELDS)
def test_kernels_agree(F, kernel):
    rng = random.Random(7)
    for n in (1, 5, 33, 70, 130):
        a = [F.random(rng) for _ in range(n)]
        b = [F.random(rng) for _ in range(n + 3)]
        fn = P.schoolbook if kernel == "schoolbook" else P.karatsuba
        assert P.trim(fn(a, b, F)) == conv(a, b, F)


@pytest.mark.parametrize("p", [97, 2**31 - 1, 4294967291, 2**61 - 1])
def test_kronecker_packing(p):
    rng = random.Random(p)
    F = prime_field(p)
    for n in (1, 7, 95, 96, 200):
        a = [rng.randrange(p) for _ in range(n)]
        b = [rng.randrange(p) for _ in range(n // 2 + 1)]
        assert P.trim(P.kronecker(a, b, p)) == conv(a, b, F)


def test_divrem_examples():
    assert divmod(poly("x^2"), poly("x - 1")) == (poly("x + 1"), poly("1"))
    p = poly("x^5 - 2*x + 7")
    assert divmod(p, poly("1")) == (p, poly("0"))


@pytest.mark.parametrize("F", FIELDS)
def test_divrem_reconstruction(F):
    rng = random.Random(30)
    for na, nb in ((31, 8), (200, 90), (300, 60)):
        a = Polynomial([F.random(rng) for _ in range(na)], F)
        b = Polynomial([F.random(rng) for _ in range(nb - 1)] + [F.one], F)
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_divide_by_zero_polynomial():
    with pytest.raises(ZeroDivisionError):
        divmod(poly("x"), poly("0"))


def test_taylor_shift_examples():
    assert poly("x^2").shift(1) == poly("x^2 + 2*x + 1")
    p = poly("x^7 - 3*x + 2")
    assert p.shift(0) == p
    assert poly("x^3 - x").shift(2) == poly("x^3 + 6*x^2 + 11*x + 6")


@pytest.mark.parametrize("F", FIELDS)
@given(data=st.data())
def test_taylor_shift_binomial_oracle(F, data):
    a = data.draw(coeff_lists(F, 15))
    c = data.draw(scalars(F))
    expect = [0] * len(a)
    for i, ai in enumerate(a):
        for k in range(i + 1):
            expect[k] += ai * comb(i, k) * c ** (i - k)
    expect = [F.coerce(v) for v in expect]
    assert taylor_shift([F.coerce(v) for v in a], F.coerce(c), F) == expect


def test_falling_factorial_examples():
    assert falling_to_values([1], 4, QQ) == [1, 1, 1, 1]
    assert falling_to_values([0, 1], 5, QQ) == [0, 1, 2, 3, 4]
    assert falling_to_values([0, 0, 1], 5, QQ) == [0, 0, 2, 6, 12]
    assert values_to_falling([1, 1, 1, 1], QQ) == [1, 0, 0, 0]
    assert values_to_falling([0, 0, 2, 6, 12], QQ) == [0, 0, 1, 0, 0]


@pytest.mark.parametrize("F", [QQ, FP_SMALL])
@given(data=st.data())
def test_falling_roundtrip_and_direct_sum(F, data):
    a = [F.coerce(v) for v in data.draw(coeff_lists(F, 10))]
    N = data.draw(st.integers(1, 14))
    vals = falling_to_values(a, N, F)
    direct = [F.coerce(sum(c * falling(m, i) for i, c in enumerate(a))) for m in range(N)]
    assert vals == direct
    padded = (a + [F.zero] * N)[:N]
    assert values_to_falling(vals, F) == padded


@pytest.mark.parametrize("F", FIELDS)
@settings(max_examples=60)
@given(data=st.data())
def test_ring_laws(F, data):
    a, b, c = (Polynomial(data.draw(coeff_lists(F)), F) for _ in range(3))
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


def test_series_inverse():
    rng = random.Random(3)
    F = FP
    f = [1 + rng.randrange(F.modulus - 1)] + [F.random(rng) for _ in range(99)]
    g = P.series_inverse(f, 100, F)
    assert P.mullow(f, g, 100, F) == [1] + [0] * 99


def test_text_roundtrip_and_evaluation():
    p = poly("-1/2*x^3 + x - 4")
    assert str(p) == "-1/2*x^3 + x - 4"
    assert Polynomial.parse(str(p), QQ) == p
    assert p(2) == -6
    assert p.derivative() == poly("-3/2*x^2 + 1")
    assert str(poly("0")) == "0"


@pytest.mark.parametrize("F", FIELDS)
@given(data=st.data())
def test_taylor_shift_inverse_and_evaluation(F, data):
    p = Polynomial(data.draw(coeff_lists(F, 15)), F)
    a = F.coerce(data.draw(scalars(F)))
    x0 = F.coerce(data.draw(scalars(F)))
    assert p.shift(a).shift(F.neg(a)) == p
    assert p.shift(a)(x0) == p(F.add(x0, a))
