"""Real Clifford algebra Cl(7) on the 8-dimensional spin module.

The generators are left multiplications by imaginary octonions, which gives
antisymmetric 8x8 integer matrices with ``γ_i γ_j + γ_j γ_i = -2 δ_ij``.
Spinors are length-8 numpy object arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg
from .exterior import DIM, FULL, UNIT, Form, Metric, blade_indices
from .scalars import ExactField, Field

EXACT = ExactField(1)
SPIN_DIM = 8

# Octonion multiplication: e_i e_j = e_k for each triple read cyclically.
OCTONION_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 7, 6), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 6, 5))

# c_ijk of the induced 3-form is this sign times <γ_i γ_j γ_k ψ, ψ>; it is
# forced to -1 by requiring ω(ψ)·ψ = -7ψ with |ω|² = 7.
INDUCED_FORM_SIGN = -1


@dataclass(frozen=True, eq=False)
class CliffordRep:
    gammas: tuple

    @cached_property
    def pairs(self) -> list:
        return [[gi @ gj for gj in self.gammas] for gi in self.gammas]

    @cached_property
    def blade_matrices(self) -> list:
        """``γ_{i1} ... γ_{ik}`` for every blade, indexed by blade bitmask."""
        out = [None] * (FULL + 1)
        for b in range(FULL + 1):
            m = linalg.eye(SPIN_DIM)
            for i in blade_indices(b):
                m = m @ self.gammas[i - 1]
            out[b] = m
        return out

    def form_matrix(self, a: Form, metric: Metric = UNIT) -> np.ndarray:
        """Clifford action of a (possibly mixed-degree) form.

        ``η_i`` is ``1/w_i`` times a unit covector, so a blade acts as its
        gamma product divided by its weight.
        """
        out = linalg.zeros(SPIN_DIM, SPIN_DIM)
        for b, c in a.items():
            out = out + (c / metric.blade_weight(b)) * self.blade_matrices[b]
        return out

    def vector_matrix(self, v, metric: Metric = UNIT) -> np.ndarray:
        """Clifford action of a vector given in frame coordinates."""
        if isinstance(v, int):
            v = [1 if i == v - 1 else 0 for i in range(DIM)]
        out = linalg.zeros(SPIN_DIM, SPIN_DIM)
        for i, c in enumerate(v):
            if c != 0:
                out = out + (c * metric.weights[i]) * self.gammas[i]
        return out

    def volume_element(self) -> np.ndarray:
        return self.blade_matrices[FULL]

    def to_json(self) -> list:
        from .scalars import format_scalar

        return [[[format_scalar(x) for x in row] for row in g] for g in self.gammas]


def octonion_generators() -> list:
    c = {}
    for i, j, k in OCTONION_TRIPLES:
        for a, b, d in ((i, j, k), (j, k, i), (k, i, j)):
            c[a, b] = (d, 1)
            c[b, a] = (d, -1)
    gammas = []
    for i in range(1, DIM + 1):
        g = linalg.zeros(SPIN_DIM, SPIN_DIM)
        g[i, 0] = 1   # e_i * 1 = e_i
        g[0, i] = -1  # e_i * e_i = -1
        for j in range(1, DIM + 1):
            if (i, j) in c:
                k, s = c[i, j]
                g[k, j] = s
        gammas.append(g)
    return gammas


def build_rep(calibration: Form | None = None) -> CliffordRep:
    """Generators on which ``calibration`` (default: the model's ω) has eigenvalue -7.

    Cl(7) has two inequivalent irreducible real modules; negating all seven
    generators swaps them and flips the sign of every 3-form action.
    """
    if calibration is None:
        from .sasaki import canonical_omega

        calibration = canonical_omega()
    gammas = octonion_generators()
    rep = CliffordRep(tuple(gammas))
    m = rep.form_matrix(calibration)
    if len(linalg.nullspace(m + 7 * linalg.eye(SPIN_DIM))) == 1:
        return rep
    if len(linalg.nullspace(m - 7 * linalg.eye(SPIN_DIM))) == 1:
        return CliffordRep(tuple(-g for g in gammas))
    raise ValueError("calibration form does not act with a simple eigenvalue ±7")


def act(a, psi: np.ndarray, rep: CliffordRep, metric: Metric = UNIT) -> np.ndarray:
    """Clifford product of a form (or frame vector) with a spinor."""
    if isinstance(a, Form):
        return rep.form_matrix(a, metric) @ psi
    return rep.vector_matrix(a, metric) @ psi


def eigenspace(mat: np.ndarray, value, field: Field = EXACT) -> list:
    return linalg.nullspace(mat - value * linalg.eye(mat.shape[0]), field)


def normalize(v: np.ndarray, field: Field = EXACT) -> np.ndarray:
    """Unit vector with its first nonzero component positive."""
    v = v / field.sqrt(v @ v)
    for x in v:
        if not field.is_zero(x):
            if float(x) < 0:
                v = -v
            break
    return v


def canonical_spinor(omega: Form, rep: CliffordRep, metric: Metric = UNIT, field: Field = EXACT) -> np.ndarray:
    """Unit spinor spanning the -7 eigenspace of ``omega``."""
    kernel = eigenspace(rep.form_matrix(omega, metric), -7, field)
    if len(kernel) != 1:
        raise ValueError(f"eigenvalue -7 has multiplicity {len(kernel)}, expected 1")
    return normalize(kernel[0], field)


def spin_lift(a: np.ndarray, rep: CliffordRep, field: Field = EXACT) -> np.ndarray:
    """Lift of ``a ∈ so(7)`` (orthonormal frame, ``a @ v`` convention) to spinors.

    ``σ(a) = ¼ Σ_ij <a e_i, e_j> γ_i γ_j``; with this index order ``σ`` is a
    Lie algebra homomorphism and ``[σ(a), X·] = (aX)·``.
    """
    a = np.asarray(a, dtype=object)
    if not linalg.is_zero_array(a + a.T, field):
        raise ValueError("spin_lift needs an antisymmetric matrix")
    out = linalg.zeros(SPIN_DIM, SPIN_DIM)
    for i in range(DIM):
        for j in range(DIM):
            if i != j and a[j, i] != 0:
                out = out + a[j, i] * rep.pairs[i][j]
    return out / 4


def induced_g2_form(psi: np.ndarray, rep: CliffordRep, metric: Metric = UNIT, field: Field = EXACT) -> Form:
    """3-form with coefficients ``-<γ_i γ_j γ_k ψ, ψ>`` in the orthonormal coframe."""
    if not field.is_zero(psi @ psi - 1):
        raise ValueError("induced_g2_form needs a unit spinor")
    coeffs = {}
    for b in range(FULL + 1):
        if bin(b).count("1") == 3:
            c = INDUCED_FORM_SIGN * ((rep.blade_matrices[b] @ psi) @ psi)
            coeffs[b] = c * metric.blade_weight(b)
    return Form(coeffs)


@dataclass(frozen=True, eq=False)
class SpinorSplitting:
    sigma1: list
    sigma3: list
    sigma4: list

    @property
    def dims(self) -> tuple:
        return len(self.sigma1), len(self.sigma3), len(self.sigma4)


def split_spinor_module(rep: CliffordRep, psi0: np.ndarray, vertical: Sequence[int] = (1, 2, 3)) -> SpinorSplitting:
    """``R·Ψ0``, ``T^v·Ψ0`` and ``T^h·Ψ0`` with orthonormal bases.

    Unit vectors act by anticommuting antisymmetric matrices, so the
    ``γ_i Ψ0`` are automatically orthonormal.
    """
    horizontal = [i for i in range(1, DIM + 1) if i not in vertical]
    return SpinorSplitting(
        [np.array(psi0, dtype=object)],
        [rep.gammas[i - 1] @ psi0 for i in vertical],
        [rep.gammas[i - 1] @ psi0 for i in horizontal],
    )


def casimir_condition_eigenspace(torsion: Form, rep: CliffordRep, scal, metric: Metric = UNIT,
                                 field: Field = EXACT) -> list:
    """Spinors with ``4 T² ψ = (2 Scal + |T|²) ψ``."""
    from .exterior import norm2

    t = rep.form_matrix(torsion, metric)
    value = 2 * scal + norm2(torsion, metric)
    return eigenspace(4 * (t @ t), value, field)


def project(vectors: Sequence[np.ndarray], v: np.ndarray) -> np.ndarray:
    """Orthogonal projection onto the span of orthonormal ``vectors``."""
    out = linalg.zeros(len(v))
    for u in vectors:
        out = out + (u @ v) * u
    return out
