from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import model_at
from sasaki7 import coset, linalg
from sasaki7.coset import CosetSpace
from sasaki7.exterior import Form, eta, wedge
from sasaki7 import sasaki

from strategies import forms, rationals

SU2 = {
    "basis": ["x", "y", "z"],
    "brackets": [["x", "y", [["z", "2"]]], ["y", "z", [["x", "2"]]], ["z", "x", [["y", "2"]]]],
    "h_indices": [],
    "metric_weights": ["1", "1", "1"],
}


@lru_cache(maxsize=None)
def invariant_basis(k: int) -> tuple:
    return tuple(oracles.invariant_form_basis(model_at(Fraction(1)).space, k))


@st.composite
def invariant_forms(draw):
    k = draw(st.integers(0, 7))
    basis = invariant_basis(k)
    coeffs = draw(st.lists(rationals, min_size=len(basis), max_size=len(basis)))
    return sum((c * b for c, b in zip(coeffs, basis)), Form())


def test_invariant_form_dimensions():
    # 1-forms: the three contact forms; 0- and 7-forms always invariant
    assert [len(invariant_basis(k)) for k in (0, 1, 7)] == [1, 3, 1]
    assert len(invariant_basis(3)) == len(invariant_basis(4))


def test_validate_model(model):
    assert all(coset.validate(model.space).values())


def test_validate_detects_broken_jacobi(model):
    c = model.space.constants.copy()
    c[0, 1, 2] += 1
    c[1, 0, 2] -= 1
    bad = CosetSpace(model.space.names, c, model.space.h_indices, model.space.metric_weights)
    assert coset.validate(bad)["jacobi"] is False


def test_validate_detects_non_reductive(model):
    c = model.space.constants.copy()
    # [h1, e4] acquires an h-component
    c[7, 3, 8] += 1
    c[3, 7, 8] -= 1
    bad = CosetSpace(model.space.names, c, model.space.h_indices, model.space.metric_weights)
    assert coset.validate(bad)["reductive"] is False


def test_validate_detects_non_invariant_metric(model):
    w = (1, 1, 1, 2, 1, 1, 1)
    bad = CosetSpace(model.space.names, model.space.constants, model.space.h_indices, w)
    report = coset.validate(bad)
    assert report["metric_invariant"] is False and report["metric_positive"] is True


def test_su2_as_coset_with_trivial_isotropy():
    space = CosetSpace.from_json(SU2)
    assert (space.dim_g, space.dim_h, space.dim_m) == (3, 0, 3)
    assert all(coset.validate(space).values())


def test_json_round_trip(model):
    data = json.loads(model.space.dumps())
    again = CosetSpace.from_json(data)
    assert np.array_equal(again.constants, model.space.constants)
    assert again.h_indices == model.space.h_indices
    assert again.metric_weights == model.space.metric_weights


def test_json_round_trip_with_surd_weights():
    m = model_at(Fraction(1, 5))
    again = CosetSpace.from_json(json.loads(m.space.dumps()))
    assert again.metric_weights == m.space.metric_weights


def test_from_json_errors():
    with pytest.raises(ValueError):
        CosetSpace.from_json(dict(SU2, metric_weights=["1", "1"]))
    with pytest.raises(ValueError):
        CosetSpace.from_json(dict(SU2, orientation=3))
    with pytest.raises(ValueError):
        CosetSpace.from_json(dict(SU2, brackets=[[0, 5, [[1, "1"]]]]))


def test_d_examples(model):
    sp = model.space
    assert coset.d_invariant(eta(1), sp) == -2 * (eta(2, 3) + eta(4, 5) + eta(6, 7))
    assert coset.d_invariant(coset.d_invariant(eta(2), sp), sp).is_zero()


def test_levi_civita_matches_linear_system_oracle():
    for t in (Fraction(1), Fraction(1, 4), Fraction(9, 4)):
        m = model_at(t)
        lc = coset.levi_civita(m.space)
        ref, rank = oracles.levi_civita_float(m.space.m_bracket, m.space.squares)
        assert rank == 343  # unique solution
        mine = np.array([[[float(lam[k, j]) for j in range(7)] for k in range(7)] for lam in lc.maps])
        assert np.allclose(mine, ref, atol=1e-9)


def test_levi_civita_examples(model):
    lc = model.levi_civita
    assert linalg.is_zero_array(lc.maps[0][:, 0])  # ∇_ξ1 ξ1 = 0
    assert coset.torsion_form(lc, model.space).is_zero()


def test_with_zero_torsion_is_levi_civita(model):
    conn = coset.with_torsion(model.levi_civita, Form(), model.metric)
    assert all(linalg.is_zero_array(a - b) for a, b in zip(conn.maps, model.levi_civita.maps))


@given(forms(3, 6))
def test_with_torsion_has_that_torsion(t):
    m = model_at(Fraction(1, 4))
    conn = coset.with_torsion(m.levi_civita, t, m.metric)
    assert coset.torsion_form(conn, m.space) == t


def test_with_torsion_rejects_wrong_degree(model):
    with pytest.raises(ValueError):
        coset.with_torsion(model.levi_civita, eta(1, 2), model.metric)


def test_curvature_symmetries():
    for t in (Fraction(1), Fraction(1, 2), Fraction(4)):
        m = model_at(t)
        data = m.curvature_lc
        for i in range(7):
            for j in range(7):
                assert linalg.is_zero_array(data.R[i][j] + data.R[j][i])
        assert linalg.is_zero_array(data.ric - data.ric.T)


def test_non_parallel_torsion_is_rejected(model):
    conn = coset.with_torsion(model.levi_civita, eta(1, 4, 5), model.metric)
    assert not coset.torsion_is_parallel(conn, model.space)
    with pytest.raises(ValueError):
        coset.ricci_of_torsion_connection(conn, model.space)
    with pytest.raises(ValueError):
        coset.holonomy_closure(conn, model.space)


def test_holonomy_matches_float_oracle(model):
    ch = model.characteristic
    ops = [np.array(coset.curvature_operator(ch, model.space, i, j), dtype=float)
           for i in range(7) for j in range(i + 1, 7)]
    assert oracles.holonomy_dimension_float(ops) == len(model.holonomy) == 6


def test_spinor_derivative_needs_invariant_spinor(model):
    with pytest.raises(ValueError):
        coset.spinor_derivative_invariant(model.levi_civita, model.rep.gammas[3] @ model.psi0,
                                          model.rep, model.space)


# properties -------------------------------------------------------------

@given(forms(2, 4))
def test_d_matches_brute_force_formula(a):
    sp = model_at(Fraction(1)).space
    assert coset.d_invariant(a, sp) == oracles.d_invariant(a, sp.m_bracket)


@given(invariant_forms())
def test_d_squared_vanishes_on_invariant_forms(a):
    sp = model_at(Fraction(1)).space
    assert coset.d_invariant(coset.d_invariant(a, sp), sp).is_zero()


@given(invariant_forms(), invariant_forms())
def test_d_leibniz_on_invariant_forms(a, b):
    sp = model_at(Fraction(1)).space
    p = a.degree or 0
    lhs = coset.d_invariant(wedge(a, b), sp)
    rhs = wedge(coset.d_invariant(a, sp), b) + (-1) ** p * wedge(a, coset.d_invariant(b, sp))
    assert lhs == rhs


vectors10 = st.lists(rationals, min_size=10, max_size=10).map(linalg.obj)


@given(vectors10, vectors10, vectors10)
def test_jacobi_identity_random_elements(x, y, z):
    sp = model_at(Fraction(1)).space
    br = sp.bracket
    total = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
    assert linalg.is_zero_array(total)


def _as_matrix(x):
    basis = sasaki.sp2_basis()
    out = [[(0, 0, 0, 0), (0, 0, 0, 0)], [(0, 0, 0, 0), (0, 0, 0, 0)]]
    for c, b in zip(x, basis):
        for r in range(2):
            for k in range(2):
                out[r][k] = tuple(u + c * v for u, v in zip(out[r][k], b[r][k]))
    return tuple(tuple(row) for row in out)


@given(vectors10, vectors10)
def test_bracket_matches_quaternion_matrices(x, y):
    sp = model_at(Fraction(1)).space
    a, b = _as_matrix(x), _as_matrix(y)
    comm = sasaki._matsub(sasaki._matmul(a, b), sasaki._matmul(b, a))
    assert linalg.is_zero_array(sp.bracket(x, y) - linalg.obj(sasaki._coordinates(comm)))
