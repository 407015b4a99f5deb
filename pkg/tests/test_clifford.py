from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given

import oracles
from sasaki7 import clifford, linalg
from sasaki7.exterior import Form, eta, interior, matrix_derivation, norm2, wedge
from sasaki7.sasaki import canonical_omega

from strategies import antisymmetric7, metrics, vectors7

REP = clifford.build_rep()
OMEGA = canonical_omega()
I8 = linalg.eye(8)


def test_generators_square_to_minus_one_and_anticommute():
    g = REP.gammas
    for i in range(7):
        assert linalg.is_zero_array(g[i] @ g[i] + I8)
        assert linalg.is_zero_array(g[i] + g[i].T)
        for j in range(i + 1, 7):
            assert linalg.is_zero_array(g[i] @ g[j] + g[j] @ g[i])


def test_volume_element_sign_of_chosen_module():
    # the octonion generators give -Id; after switching modules it is +Id
    assert linalg.is_zero_array(REP.volume_element() - I8)


def test_build_rep_is_deterministic():
    other = clifford.build_rep()
    assert all(linalg.is_zero_array(a - b) for a, b in zip(REP.gammas, other.gammas))


def test_omega_spectrum():
    w = REP.form_matrix(OMEGA)
    assert len(clifford.eigenspace(w, -7)) == 1
    assert len(clifford.eigenspace(w, 1)) == 7
    # numpy cross-check of the full spectrum
    ev = np.sort(np.linalg.eigvalsh(w.astype(float)))
    assert np.allclose(ev, [-7] + [1] * 7)


def test_build_rep_rejects_non_calibration():
    with pytest.raises(ValueError):
        clifford.build_rep(eta(1, 2, 3))


def test_canonical_spinor():
    psi = clifford.canonical_spinor(OMEGA, REP)
    assert psi @ psi == 1
    assert linalg.is_zero_array(REP.form_matrix(OMEGA) @ psi + 7 * psi)
    first = next(x for x in psi if x != 0)
    assert first > 0


def test_canonical_spinor_rejects_perturbed_form():
    with pytest.raises(ValueError):
        clifford.canonical_spinor(OMEGA + eta(1, 2), REP)


def test_spin_lift_of_elementary_rotation():
    a = linalg.zeros(7, 7)
    a[1, 0], a[0, 1] = 1, -1  # a e1 = e2
    assert linalg.is_zero_array(clifford.spin_lift(a, REP) - REP.pairs[0][1] / 2)


def test_spin_lift_rejects_non_antisymmetric():
    with pytest.raises(ValueError):
        clifford.spin_lift(linalg.eye(7), REP)


def _g2_algebra():
    """Derivations of so(7) killing ω, by brute force over the 21 generators."""
    basis = []
    for i in range(7):
        for j in range(i + 1, 7):
            a = linalg.zeros(7, 7)
            a[j, i], a[i, j] = 1, -1
            basis.append(a)
    cols = []
    for a in basis:
        d = matrix_derivation(a, OMEGA)
        cols.append([d[b] for b in range(128)])
    kernel = linalg.nullspace(linalg.obj(cols).T)
    return [sum((c * a for c, a in zip(v, basis)), linalg.zeros(7, 7)) for v in kernel]


def test_stabiliser_of_omega_is_g2_and_commutes_with_omega():
    g2 = _g2_algebra()
    assert len(g2) == 14
    w = REP.form_matrix(OMEGA)
    psi = clifford.canonical_spinor(OMEGA, REP)
    for a in g2:
        s = clifford.spin_lift(a, REP)
        assert linalg.is_zero_array(s @ w - w @ s)
        assert linalg.is_zero_array(s @ psi)


def test_induced_form_examples(model):
    psi0 = model.psi0
    assert clifford.induced_g2_form(psi0, REP) == OMEGA
    omega1 = model.nearly_parallel[0]
    assert clifford.induced_g2_form(REP.gammas[0] @ psi0, REP) == omega1
    with pytest.raises(ValueError):
        clifford.induced_g2_form(2 * psi0, REP)


def test_split_and_casimir(model):
    split = clifford.split_spinor_module(REP, model.psi0)
    assert split.dims == (1, 3, 4)
    t = REP.form_matrix(model.torsion)
    for v in split.sigma3:
        assert linalg.is_zero_array(t @ v - 10 * v)
    space = clifford.casimir_condition_eigenspace(model.torsion, REP, 42)
    assert len(space) == 5
    assert clifford.casimir_condition_eigenspace(Form(), REP, 42) == []
    assert len(clifford.casimir_condition_eigenspace(Form(), REP, 0)) == 8


def test_act_dispatch(model):
    psi0 = model.psi0
    assert linalg.is_zero_array(clifford.act(model.torsion, psi0, REP) + 6 * psi0)
    assert linalg.is_zero_array(clifford.act(1, psi0, REP) - REP.gammas[0] @ psi0)


# properties -------------------------------------------------------------

@given(vectors7, vectors7, metrics)
def test_clifford_relation_random_vectors(u, v, g):
    x, y = REP.vector_matrix(u, g), REP.vector_matrix(v, g)
    assert linalg.is_zero_array(x @ y + y @ x + 2 * g.inner_vectors(u, v) * I8)


@given(antisymmetric7(), antisymmetric7())
def test_spin_lift_is_homomorphism(a, b):
    lhs = clifford.spin_lift(a @ b - b @ a, REP)
    sa, sb = clifford.spin_lift(a, REP), clifford.spin_lift(b, REP)
    assert linalg.is_zero_array(lhs - (sa @ sb - sb @ sa))


@given(antisymmetric7(), vectors7)
def test_spin_lift_intertwines_vectors(a, v):
    s = clifford.spin_lift(a, REP)
    x = REP.vector_matrix(v)
    assert linalg.is_zero_array(s @ x - x @ s - REP.vector_matrix(list(a @ linalg.obj(v))))


@given(vectors7)
def test_induced_form_of_random_unit_spinor(u):
    psi = linalg.obj(oracles.rational_unit_vector(u))
    w = clifford.induced_g2_form(psi, REP)
    assert norm2(w) == 7
    assert linalg.is_zero_array(REP.form_matrix(w) @ psi + 7 * psi)


@given(vectors7, vectors7)
def test_induced_form_under_unit_vector(u, v):
    psi = linalg.obj(oracles.rational_unit_vector(u))
    xi = oracles.rational_unit_vector(v[:6])
    w1 = clifford.induced_g2_form(psi, REP)
    w2 = clifford.induced_g2_form(REP.vector_matrix(xi) @ psi, REP)
    xi_form = sum((c * eta(i + 1) for i, c in enumerate(xi)), Form())
    assert w2 == -w1 + 2 * wedge(interior(xi, w1), xi_form)
