from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from sasaki7.exterior import (
    Form, Metric, blade_name, eta, evaluate, form_inner, grade_project, hodge, interior,
    matrix_derivation, norm2, parse_blade, wedge,
)
from sasaki7.sasaki import canonical_omega
from sasaki7.scalars import ExactField, Surd

from strategies import antisymmetric7, forms, homogeneous_forms, metrics, mixed_forms, rationals, vectors7

OMEGA = canonical_omega()
VOL = eta(1, 2, 3, 4, 5, 6, 7)


def test_blade_names_round_trip():
    assert blade_name(parse_blade("η135")) == "η135"
    assert blade_name(0) == "1"
    assert repr(eta(1, 2, 3) - eta(1, 4, 5)) == "η123 - η145"


def test_wedge_examples():
    assert wedge(eta(1), eta(2)) == eta(1, 2)
    assert wedge(eta(1), eta(1)).is_zero()
    assert wedge(eta(2), eta(1)) == -eta(1, 2)
    assert wedge(eta(1, 2, 3), hodge(eta(1, 2, 3))) == VOL


def test_wedge_overflow_is_zero():
    assert wedge(eta(1, 2, 3, 4), eta(5, 6, 7, 1)).is_zero()


def test_interior_examples():
    assert interior(1, eta(1, 2, 3)) == eta(2, 3)
    assert interior(2, eta(1, 2, 3)) == -eta(1, 3)
    assert interior([1, 0, 0, 0, 0, 0, 0], eta(1, 4)) == eta(4)


def test_hodge_examples():
    assert hodge(VOL) == Form.scalar(1)
    assert hodge(eta(1, 2, 3)) == eta(4, 5, 6, 7)
    s = Surd(0, 1, Fraction(1, 5))
    g = Metric.squashed(s)
    assert hodge(s ** 3 * eta(1, 2, 3), g) == eta(4, 5, 6, 7)


def test_hodge_of_omega_unit_weights():
    expected = (-eta(1, 2, 4, 7) - eta(1, 2, 5, 6) + eta(1, 3, 4, 6) - eta(1, 3, 5, 7)
                - eta(2, 3, 4, 5) - eta(2, 3, 6, 7) + eta(4, 5, 6, 7))
    assert hodge(OMEGA) == expected


def test_hodge_rejects_mixed_degree():
    with pytest.raises(ValueError):
        hodge(eta(1) + eta(1, 2))


def test_form_inner_examples():
    assert norm2(OMEGA) == 7
    with pytest.raises(ValueError):
        form_inner(eta(1), eta(1, 2))
    g = Metric((2, 1, 1, 1, 1, 1, 1), 1)
    assert form_inner(eta(1, 2), eta(1, 2), g) == Fraction(1, 4)


def test_grade_project_examples():
    assert grade_project(OMEGA, 3) == OMEGA
    assert grade_project(OMEGA, 2).is_zero()
    assert grade_project(Form.scalar(1) + eta(1, 2), 2) == eta(1, 2)


def test_degree_and_zero_form():
    assert Form().degree is None
    assert OMEGA.degree == 3
    with pytest.raises(ValueError):
        (eta(1) + eta(1, 2)).degree


def test_json_round_trip():
    a = Fraction(1, 3) * OMEGA + eta(4) - Surd(0, 2, 5) * eta(1, 2)
    assert Form.from_json(a.to_json(), ExactField(5)) == a
    assert OMEGA.to_json()["3"]["η145"] == "-1"


def test_evaluate_determinant_convention():
    assert evaluate(eta(1, 2), (1, 2)) == 1
    assert evaluate(eta(1, 2), (2, 1)) == -1
    assert evaluate(OMEGA, (2, 4, 6)) == -1


# properties -------------------------------------------------------------

@given(mixed_forms(), mixed_forms())
def test_wedge_matches_brute_force(a, b):
    assert wedge(a, b) == oracles.wedge(a, b)


@given(mixed_forms(), mixed_forms(), mixed_forms())
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(homogeneous_forms(), homogeneous_forms())
def test_wedge_graded_commutative(a, b):
    p, q = a.degree or 0, b.degree or 0
    assert wedge(a, b) == (-1) ** (p * q) * wedge(b, a)


@given(mixed_forms(), mixed_forms(), mixed_forms(), rationals)
def test_wedge_bilinear(a, b, c, x):
    assert wedge(a + x * b, c) == wedge(a, c) + x * wedge(b, c)
    assert wedge(c, a + x * b) == wedge(c, a) + x * wedge(c, b)


@given(homogeneous_forms(), metrics)
def test_double_hodge_is_identity(a, g):
    assert hodge(hodge(a, g), g) == a


@given(homogeneous_forms(), metrics)
def test_hodge_matches_brute_force(a, g):
    assert hodge(a, g) == oracles.hodge(a, g.weights, g.orientation)


@given(st.integers(0, 7).flatmap(lambda k: st.tuples(forms(k), forms(k))), metrics)
def test_wedge_star_is_inner_times_volume(pair, g):
    a, b = pair
    assert wedge(a, hodge(b, g)) == form_inner(a, b, g) * g.volume()


@given(st.integers(0, 7).flatmap(lambda k: forms(k)), metrics)
def test_inner_positive_and_rational(a, g):
    n = norm2(a, g)
    assert isinstance(n, (int, Fraction))
    assert (n > 0) == (not a.is_zero())
    assert all(isinstance(c, (int, Fraction)) for _, c in hodge(a, g).items())


@given(vectors7, homogeneous_forms(), mixed_forms())
def test_interior_antiderivation(v, a, b):
    p = a.degree or 0
    lhs = interior(v, wedge(a, b))
    rhs = wedge(interior(v, a), b) + (-1) ** p * wedge(a, interior(v, b))
    assert lhs == rhs


@given(vectors7, mixed_forms())
def test_interior_squares_to_zero(v, a):
    assert interior(v, interior(v, a)).is_zero()


@given(antisymmetric7(), homogeneous_forms(), mixed_forms())
def test_matrix_derivation_leibniz(mat, a, b):
    lhs = matrix_derivation(mat, wedge(a, b))
    rhs = wedge(matrix_derivation(mat, a), b) + wedge(a, matrix_derivation(mat, b))
    assert lhs == rhs
