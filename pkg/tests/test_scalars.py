from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sasaki7.scalars import ExactField, FloatField, Surd, format_scalar, make_field, parse_scalar, rational_sqrt

from strategies import rationals

T = Fraction(1, 5)
surds = st.builds(lambda a, b: Surd(a, b, T), rationals, rationals)


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(0)) == 0


def test_surd_basic_arithmetic():
    s = Surd(0, 1, T)
    assert s * s == T
    assert (1 / s) == 5 * s
    assert (s + 1) * (s - 1) == T - 1
    assert float(s) == pytest.approx(5 ** -0.5)


def test_surd_zero_iff_both_parts_zero():
    assert not Surd(0, 0, T)
    assert Surd(0, 1, T) != 0
    assert Surd(Fraction(1, 2), 0, T) == Fraction(1, 2)


@given(surds, surds, surds)
def test_surd_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    if x != 0:
        assert x * (1 / x) == 1


@given(surds)
def test_surd_text_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x


def test_format_examples():
    assert format_scalar(Fraction(3, 2)) == "3/2"
    assert format_scalar(Surd(0, -2, T)) == "-2*sqrt(1/5)"
    assert format_scalar(Surd(1, Fraction(1, 2), 2)) == "1+1/2*sqrt(2)"


def test_exact_field_square_t_stays_rational():
    f = ExactField(Fraction(4, 9))
    assert f.sqrt_t() == Fraction(2, 3)
    assert isinstance(f.sqrt_t(), Fraction)


def test_exact_field_sqrt():
    f = ExactField(T)
    assert f.sqrt(Fraction(4, 5)) == 2 * f.sqrt_t()
    assert f.sqrt(Fraction(4)) == 2
    with pytest.raises(ValueError):
        f.sqrt(Fraction(3))


def test_float_field_tolerance():
    f = FloatField(0.2, tol=1e-9)
    assert f.is_zero(1e-10)
    assert not f.is_zero(1e-8)
    with pytest.raises(ValueError):
        FloatField(1, tol=0)


def test_make_field():
    assert make_field("exact", 1).mode == "exact"
    assert make_field("float", 1).mode == "float"
    with pytest.raises(ValueError):
        make_field("symbolic", 1)
    with pytest.raises(ValueError):
        make_field("float", -1)
