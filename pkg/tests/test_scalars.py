import pytest
from hypothesis import given
from hypothesis import strategies as st

from bifree.errors import ParseError
from bifree.scalars import (ONE, ZERO, GaussianRational, decimal_magnitude,
                            format_scalar, parse_scalar, qi)

rationals = st.fractions(max_denominator=50)
scalars = st.builds(GaussianRational, rationals, rationals)


def test_constants():
    assert not ZERO
    assert ONE
    assert ONE + qi(-1) == ZERO
    assert ONE == 1 and ZERO == 0


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(scalars)
def test_multiplicative_inverse(a):
    if a:
        assert a * (ONE / a) == ONE


@given(scalars)
def test_conjugation(a):
    assert a.conjugate().conjugate() == a
    norm = a * a.conjugate()
    assert norm.im == 0
    assert norm.re >= 0


@given(scalars)
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


def test_parse_forms():
    assert parse_scalar("1") == ONE
    assert parse_scalar("-3/6") == qi(-1, 2)
    assert parse_scalar("0/1 + 1/3 i") == qi(0, 1, 1, 3)
    assert parse_scalar("1/2 - 2/3 i") == qi(1, 2, -2, 3)
    assert parse_scalar("5 i") == qi(0, 1, 5)


@pytest.mark.parametrize("bad", ["", "one", "1/0", "1//2", "1 + i", "2 + 3"])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_scalar(bad)


def test_integer_interop():
    assert qi(1, 2) * 2 == ONE
    assert 3 * qi(1, 3) == ONE
    assert qi(3, 4) / 3 == qi(1, 4)
    assert qi(2) ** 5 == qi(32)
    assert qi(1, 2, 1, 2) ** 2 == qi(0, 1, 1, 2)


def test_decimal_magnitude():
    assert decimal_magnitude(qi(1, 4)) == "0.250000000000"
    assert decimal_magnitude(qi(-3, 2)) == "1.500000000000"
    assert decimal_magnitude(qi(0, 1, 3, 4)) == "0.750000000000"
    # |3/5 + 4/5 i| = 1
    assert decimal_magnitude(qi(3, 5, 4, 5)) == "1.000000000000"
