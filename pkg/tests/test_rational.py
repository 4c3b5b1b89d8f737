"""Exact scalar arithmetic and the p/q wire format."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vertexkz import format_rat, parse_rat, rat

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=40)


def test_parse_and_format_round_trip():
    assert parse_rat("3/4") == Fraction(3, 4)
    assert parse_rat("-7") == Fraction(-7)
    assert format_rat(Fraction(-3, 4)) == "-3/4"
    assert format_rat(Fraction(10, 5)) == "2"


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_rat("one half")
    with pytest.raises(ValueError):
        parse_rat("1/0")


def test_rat_rejects_floats_and_bools():
    with pytest.raises(TypeError):
        rat(0.5)  # type: ignore[arg-type]
    with pytest.raises(TypeError):
        rat(True)  # type: ignore[arg-type]


@given(rationals, rationals)
def test_canonical_form_after_arithmetic(a, b):
    for value in (a + b, a - b, a * b):
        assert value.denominator > 0
        import math

        assert math.gcd(abs(value.numerator), value.denominator) == 1


@given(rationals)
def test_additive_inverse(a):
    assert a + (-a) == 0


@given(rationals, rationals)
def test_multiplicative_inverse(a, b):
    if a != 0 and b != 0:
        q = a / b
        assert q * (b / a) == 1


@given(rationals, rationals)
def test_format_round_trips_exactly(a, b):
    assert parse_rat(format_rat(a)) == a
    if b != 0:
        assert parse_rat(format_rat(a / b)) == a / b
