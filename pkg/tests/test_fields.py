import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from matlength.errors import FieldMismatchError, ParseError
from matlength.fields import (
    GF,
    QQ,
    Field,
    Scalar,
    is_prime,
    parse_field,
    parse_scalar,
    scalar_add,
    scalar_inv,
    scalar_mul,
    scalar_neg,
)


def q(text):
    return parse_scalar(text, QQ)


def test_rational_examples():
    assert scalar_add(q("1/2"), q("1/3")) == q("5/6")
    assert scalar_mul(q("-2/7"), q("7/2")) == q("-1")
    assert scalar_neg(q("3")) == q("-3")


def test_prime_field_inverse():
    f = GF(5)
    assert scalar_inv(Scalar(f, 2)) == Scalar(f, 3)
    for a in range(1, 5):
        assert Scalar(f, a) * scalar_inv(Scalar(f, a)) == Scalar(f, 1)


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        scalar_inv(q("0"))
    with pytest.raises(ZeroDivisionError):
        scalar_inv(Scalar(GF(7), 14))


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        Scalar(GF(5), 1) + Scalar(GF(7), 1)
    with pytest.raises(FieldMismatchError):
        Scalar(QQ, 1) * Scalar(GF(3), 1)


@pytest.mark.parametrize(
    "text, field, num, den",
    [
        ("-2/7", QQ, -2, 7),
        ("3/6", QQ, 1, 2),
        ("0/5", QQ, 0, 1),
        ("+4", QQ, 4, 1),
        ("7", GF(5), 2, 1),
        ("-1", GF(5), 4, 1),
        ("1/2", GF(5), 3, 1),
    ],
)
def test_parse_scalar(text, field, num, den):
    s = parse_scalar(text, field)
    assert (s.numerator, s.denominator) == (num, den)


@pytest.mark.parametrize("text", ["1/0", "", "1.5", "abc", "1/-2", "--1", "1 / 2", "0x10", "2/5/7"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ParseError):
        parse_scalar(text, QQ)


def test_parse_scalar_denominator_vanishing_mod_p():
    with pytest.raises(ParseError):
        parse_scalar("1/5", GF(5))


def test_parse_scalar_wrong_field_type():
    with pytest.raises(FieldMismatchError):
        parse_scalar("1", "Q")


def test_parse_field():
    assert parse_field("Q") == QQ
    assert parse_field("GF(7)") == GF(7)
    assert str(parse_field("GF(2)")) == "GF(2)"
    for bad in ("GF(4)", "GF(1)", "F7", "GF(2147483648)", "q"):
        with pytest.raises(ParseError):
            parse_field(bad)


def test_prime_check_matches_sieve():
    limit = 3000
    sieve = [True] * limit
    sieve[0] = sieve[1] = False
    for i in range(2, limit):
        if sieve[i]:
            for j in range(i * i, limit, i):
                sieve[j] = False
    assert [p for p in range(limit) if is_prime(p)] == [p for p in range(limit) if sieve[p]]
    assert is_prime(2147483647)
    Field(2147483647)
    big = next(p for p in range(2**31, 2**31 + 100) if is_prime(p))
    with pytest.raises(ValueError):
        Field(big)


def test_scalar_is_immutable():
    s = q("1/2")
    with pytest.raises(AttributeError):
        s.value = Fraction(1)


fields = st.sampled_from([QQ, GF(2), GF(5), GF(101), GF(2147483647)])
ints = st.integers(-(2**70), 2**70)


@st.composite
def scalar_triples(draw):
    f = draw(fields)
    if f.p is None:
        vals = [Fraction(draw(ints), draw(st.integers(1, 2**40))) for _ in range(3)]
    else:
        vals = [draw(ints) for _ in range(3)]
    return [Scalar(f, v) for v in vals]


@given(scalar_triples())
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + (-x) == 0
    if not x.is_zero():
        assert x * x.inverse() == 1


@given(scalar_triples())
def test_render_parse_idempotent(xyz):
    for x in xyz:
        once = parse_scalar(str(x), x.field)
        assert once == x
        assert parse_scalar(str(once), x.field) == once
        if x.field.p is None:
            from math import gcd

            assert gcd(abs(x.numerator), x.denominator) == 1 and x.denominator >= 1


def test_rational_stress_256_bit():
    rng = random.Random(7)
    for _ in range(300):
        a = Fraction(rng.getrandbits(256) - 2**255, rng.getrandbits(256) | 1)
        b = Fraction(rng.getrandbits(256) - 2**255, rng.getrandbits(256) | 1)
        x, y = Scalar(QQ, a), Scalar(QQ, b)
        assert (x * y).value == a * b
        assert ((x + y) - y).value == a
        if b:
            assert ((x * y) / y).value == a
        assert parse_scalar(str(x * y), QQ) == x * y
