"""The 3-Sasakian 7-sphere Sp(2)/Sp(1) with its canonical G2-structure.

The Lie algebra sp(2) is realised by 2x2 quaternionic matrices ``A`` with
``A* = -A``.  Basis (indices into the structure constants):

* ``0..2``  vertical ``ξ_α = diag(u_α, 0)`` with ``u = (i, j, k)``;
* ``3..6``  horizontal ``e_{4..7} = [[0, -q], [conj(q), 0]]`` with
  ``q = 1, i, j, k``;
* ``7..9``  isotropy ``diag(0, u_α)``.

The metric on ``m`` has coframe weights ``(s, s, s, 1, 1, 1, 1)`` with
``s = sqrt(t)``; ``t = 1`` is the 3-Sasakian metric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable

import numpy as np

from . import clifford, coset, linalg
from .coset import CosetSpace, covariant_derivative, d_invariant
from .exterior import DIM, Form, Metric, eta, evaluate, form_inner, hodge, interior, norm2, wedge
from .scalars import ExactField, Field

VERTICAL = (1, 2, 3)
HORIZONTAL = (4, 5, 6, 7)

# Complex structures φ_1, φ_2, φ_3 on span(e4..e7), column convention.
PHI_HORIZONTAL = (
    ((0, -1, 0, 0), (1, 0, 0, 0), (0, 0, 0, -1), (0, 0, 1, 0)),
    ((0, 0, -1, 0), (0, 0, 0, 1), (1, 0, 0, 0), (0, -1, 0, 0)),
    ((0, 0, 0, -1), (0, 0, -1, 0), (0, 1, 0, 0), (1, 0, 0, 0)),
)

BASIS_NAMES = ("ξ1", "ξ2", "ξ3", "e4", "e5", "e6", "e7", "h1", "h2", "h3")


# quaternions as integer 4-tuples (real, i, j, k) -------------------------

def _qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def _qconj(q):
    return (q[0], -q[1], -q[2], -q[3])


def _qadd(p, q):
    return tuple(x + y for x, y in zip(p, q))


_Q0 = (0, 0, 0, 0)
_UNITS = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


def _matmul(a, b):
    return tuple(
        tuple(_qadd(_qmul(a[r][0], b[0][c]), _qmul(a[r][1], b[1][c])) for c in range(2))
        for r in range(2)
    )


def _matsub(a, b):
    return tuple(tuple(tuple(x - y for x, y in zip(a[r][c], b[r][c])) for c in range(2)) for r in range(2))


def sp2_basis() -> list:
    out = [((_UNITS[a], _Q0), (_Q0, _Q0)) for a in (1, 2, 3)]
    for q in _UNITS:
        out.append(((_Q0, tuple(-x for x in q)), (_qconj(q), _Q0)))
    out += [((_Q0, _Q0), (_Q0, _UNITS[a])) for a in (1, 2, 3)]
    return out


def _coordinates(x) -> list:
    """Coordinates of an sp(2) matrix in :func:`sp2_basis`."""
    top, low = x[0][0], x[1][1]
    off = x[1][0]
    if top[0] or low[0] or x[0][1] != tuple(-c for c in _qconj(off)):
        raise ValueError("matrix is not in sp(2)")
    return [top[1], top[2], top[3], off[0], -off[1], -off[2], -off[3], low[1], low[2], low[3]]


def sp2_structure_constants() -> np.ndarray:
    basis = sp2_basis()
    n = len(basis)
    c = np.zeros((n, n, n), dtype=object)
    for a in range(n):
        for b in range(n):
            br = _matsub(_matmul(basis[a], basis[b]), _matmul(basis[b], basis[a]))
            c[a, b, :] = _coordinates(br)
    return c


def canonical_omega() -> Form:
    """``η123 - η145 - η167 - η246 + η257 - η347 - η356``."""
    return (eta(1, 2, 3) - eta(1, 4, 5) - eta(1, 6, 7) - eta(2, 4, 6)
            + eta(2, 5, 7) - eta(3, 4, 7) - eta(3, 5, 6))


@dataclass(frozen=True)
class G2TypeSplit:
    p1: object
    p7: Form
    p27: Form


def characteristic_torsion(omega: Form, g: Metric, space: CosetSpace, field: Field = ExactField(1)) -> Form:
    """Torsion ``-*dω + (1/6)(dω, *ω) ω`` of a cocalibrated G2-structure."""
    if not d_invariant(hodge(omega, g), space).is_zero(field):
        raise ValueError("G2-structure is not cocalibrated")
    dw = d_invariant(omega, space)
    return -hodge(dw, g) + form_inner(dw, hodge(omega, g), g) / 6 * omega


def type_split(tau: Form, omega: Form, g: Metric, field: Field = ExactField(1)) -> G2TypeSplit:
    """Orthogonal split of a 3-form into its 1-, 7- and 27-dimensional G2 parts."""
    p1 = form_inner(tau, omega, g) / norm2(omega, g)
    seven = [hodge(wedge(eta(i), omega), g) for i in range(1, DIM + 1)]
    gram = linalg.obj([[form_inner(a, b, g) for b in seven] for a in seven])
    rhs = linalg.obj([form_inner(tau, a, g) for a in seven])
    coeffs = linalg.solve(gram, rhs, field)
    p7 = Form()
    for c, a in zip(coeffs, seven):
        p7 = p7 + c * a
    return G2TypeSplit(p1, p7, tau - p1 * omega - p7)


class SasakiModel:
    """Invariant data of Sp(2)/Sp(1) at deformation parameter ``t = s**2``.

    Every derived quantity is computed once on first access.
    """

    def __init__(self, t=1, field: Field | None = None):
        self.field = field if field is not None else ExactField(t)
        if float(t) <= 0:
            raise ValueError("t must be positive")
        self.t = self.field(t)
        self.s = self.field.sqrt_t()
        constants = sp2_structure_constants()
        constants = np.vectorize(self.field, otypes=[object])(constants)
        s = self.s
        self.space = CosetSpace(BASIS_NAMES, constants, (7, 8, 9), (s, s, s, 1, 1, 1, 1))

    def __repr__(self):
        return f"SasakiModel(t={self.t}, field={self.field!r})"

    @property
    def metric(self) -> Metric:
        return self.space.metric

    @cached_property
    def deta(self) -> tuple:
        return tuple(d_invariant(eta(a), self.space) for a in VERTICAL)

    @cached_property
    def phis(self) -> tuple:
        """φ_α: ``½ ad(ξ_α)`` on the vertical block, fixed matrices on the horizontal one."""
        mb = self.space.m_bracket
        out = []
        for a in range(3):
            p = linalg.zeros(DIM, DIM)
            for b in range(3):
                for k in range(3):
                    p[k, b] = mb[a, b, k] / 2
            for r in range(4):
                for c in range(4):
                    p[3 + r, 3 + c] = PHI_HORIZONTAL[a][r][c]
            out.append(p)
        return tuple(out)

    # forms --------------------------------------------------------------
    @cached_property
    def F1(self) -> Form:
        return eta(1, 2, 3)

    @cached_property
    def F2(self) -> Form:
        total = Form()
        for a, d in zip(VERTICAL, self.deta):
            total = total + wedge(eta(a), d)
        return total / 2 + 3 * self.F1

    @cached_property
    def omega(self) -> Form:
        return self.F1 + self.F2

    @cached_property
    def F1s(self) -> Form:
        return self.s ** 3 * self.F1

    @cached_property
    def F2s(self) -> Form:
        return self.s * self.F2

    @cached_property
    def omega_s(self) -> Form:
        return self.F1s + self.F2s

    @cached_property
    def torsion(self) -> Form:
        return characteristic_torsion(self.omega_s, self.metric, self.space, self.field)

    # spinors ------------------------------------------------------------
    @cached_property
    def rep(self) -> clifford.CliffordRep:
        return clifford.build_rep(canonical_omega())

    @cached_property
    def psi0(self) -> np.ndarray:
        return clifford.canonical_spinor(self.omega_s, self.rep, self.metric, self.field)

    def clifford_vector(self, i: int) -> np.ndarray:
        return self.rep.vector_matrix(i, self.metric)

    def clifford_form(self, a: Form) -> np.ndarray:
        return self.rep.form_matrix(a, self.metric)

    # connections --------------------------------------------------------
    @cached_property
    def levi_civita(self) -> coset.ConnectionMap:
        return coset.levi_civita(self.space)

    @cached_property
    def characteristic(self) -> coset.ConnectionMap:
        return coset.with_torsion(self.levi_civita, self.torsion, self.metric)

    @cached_property
    def curvature_lc(self) -> coset.CurvatureData:
        return coset.curvature(self.levi_civita, self.space)

    @cached_property
    def ricci_c(self) -> np.ndarray:
        return coset.ricci_of_torsion_connection(self.characteristic, self.space, self.field)

    @cached_property
    def holonomy(self) -> list:
        return coset.holonomy_closure(self.characteristic, self.space, self.field)

    @cached_property
    def spinor_derivative_lc(self) -> list:
        return coset.spinor_derivative_invariant(self.levi_civita, self.psi0, self.rep, self.space, self.field)

    @cached_property
    def nearly_parallel(self) -> tuple:
        return nearly_parallel_forms(self)


def build_model(t=1, field: Field | None = None) -> SasakiModel:
    return SasakiModel(t, field)


def canonical_structure(m: SasakiModel) -> tuple:
    return m.F1, m.F2, m.omega


def nearly_parallel_forms(m: SasakiModel) -> tuple:
    """``ω_α = ½ η_α∧dη_α - ½ Σ_{β≠α} η_β∧dη_β``."""
    parts = [wedge(eta(a), d) / 2 for a, d in zip(VERTICAL, m.deta)]
    total = parts[0] + parts[1] + parts[2]
    return tuple(2 * p - total for p in parts)


# reports -------------------------------------------------------------------

@dataclass(frozen=True)
class Identity:
    """A named identity whose residual vanishes when it holds."""

    id: str
    statement: str
    compute: Callable[[], object]


def residual_values(res) -> list:
    if isinstance(res, Form):
        return list(dict(res.items()).values())
    if isinstance(res, bool):
        return [0 if res else 1]
    if isinstance(res, np.ndarray):
        return list(res.flat)
    if isinstance(res, (list, tuple)):
        out = []
        for r in res:
            out.extend(residual_values(r))
        return out
    return [res]


def residual_is_zero(res, field: Field) -> bool:
    return all(field.is_zero(x) for x in residual_values(res))


def residual_size(res) -> float:
    return max((abs(float(x)) for x in residual_values(res)), default=0.0)


def _eta_tensor_xi(a: int, b: int) -> np.ndarray:
    """Matrix of ``η_a ⊗ ξ_b``: ``X -> η_a(X) ξ_b``."""
    out = linalg.zeros(DIM, DIM)
    out[b - 1, a - 1] = 1
    return out


def _metric_matrix(m: SasakiModel) -> np.ndarray:
    g = linalg.zeros(DIM, DIM)
    for i, w2 in enumerate(m.space.squares):
        g[i, i] = w2
    return g


def verify_structure(m: SasakiModel) -> list:
    """Bracket relations, quaternionic φ relations and the dη formulas."""
    space, phis = m.space, m.phis
    mb = space.m_bracket
    e = linalg.eye(DIM)
    G = _metric_matrix(m)
    ids = [
        Identity("struct.coset_valid", "sp(2) = sp(1) ⊕ m is reductive with invariant metric",
                 lambda: [v for v in coset.validate(space, m.field).values()]),
    ]
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        ids.append(Identity(f"struct.bracket_{a}{b}", f"[ξ{a}, ξ{b}] = 2ξ{c}",
                            lambda a=a, b=b, c=c: mb[a - 1, b - 1] - 2 * e[c - 1]))
    for a, b in itertools.permutations((1, 2, 3), 2):
        c = 6 - a - b
        sign = 1 if (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)) else -1
        rhs = "" if sign > 0 else "-"
        ids.append(Identity(
            f"struct.phi{a}phi{b}", f"φ{a}∘φ{b} = {rhs}φ{c} + η{b}⊗ξ{a}",
            lambda a=a, b=b, c=c, sign=sign: phis[a - 1] @ phis[b - 1] - sign * phis[c - 1] - _eta_tensor_xi(b, a)))
    for a in VERTICAL:
        ids.append(Identity(f"struct.phi{a}_square", f"φ{a}² = -Id + η{a}⊗ξ{a}",
                            lambda a=a: phis[a - 1] @ phis[a - 1] + e - _eta_tensor_xi(a, a)))
        ids.append(Identity(f"struct.phi{a}_isometry", f"g(φ{a}X, φ{a}Y) = g(X,Y) - η{a}(X)η{a}(Y)",
                            lambda a=a: phis[a - 1].T @ G @ phis[a - 1] - G + _eta_tensor_xi(a, a)))
        ids.append(Identity(f"struct.phi{a}_kills_xi", f"φ{a}ξ{a} = 0", lambda a=a: phis[a - 1][:, a - 1]))
    expected = (
        -2 * (eta(2, 3) + eta(4, 5) + eta(6, 7)),
        2 * (eta(1, 3) - eta(4, 6) + eta(5, 7)),
        -2 * (eta(1, 2) + eta(4, 7) + eta(5, 6)),
    )
    for a in VERTICAL:
        ids.append(Identity(f"struct.deta{a}", f"dη{a} = {expected[a - 1]}",
                            lambda a=a: m.deta[a - 1] - expected[a - 1]))

        def deta_phi(a=a):
            d = m.deta[a - 1]
            mat = linalg.obj([[evaluate(d, (i + 1, j + 1)) for j in range(DIM)] for i in range(DIM)])
            return mat - 2 * (G @ phis[a - 1])

        ids.append(Identity(f"struct.deta{a}_phi", f"dη{a}(X,Y) = 2g(X, φ{a}Y)", deta_phi))
    ids.append(Identity("struct.contact", "η1 ∧ (dη1)³ ≠ 0",
                        lambda: not wedge(wedge(wedge(eta(1), m.deta[0]), m.deta[0]), m.deta[0]).is_zero(m.field)))
    ids.append(Identity("struct.einstein", "Ric = 6·Id, Scal = 42",
                        lambda: [m.curvature_lc.ric_endo - 6 * e, m.curvature_lc.scal - 42]))
    return ids


def verify_g2_torsion(m: SasakiModel) -> list:
    """Exterior identities of the canonical G2-structure at the 3-Sasakian metric."""
    g, sp = m.metric, m.space
    F1, F2, w, T = m.F1, m.F2, m.omega, m.torsion
    star = lambda a: hodge(a, g)  # noqa: E731
    d = lambda a: d_invariant(a, sp)  # noqa: E731
    sasaki_sum = wedge(eta(1), m.deta[0]) + wedge(eta(2), m.deta[1]) + wedge(eta(3), m.deta[2])
    split = lambda: type_split(T, w, g, m.field)  # noqa: E731
    return [
        Identity("g2.omega_blades", "ω = F1 + F2 = η123 - η145 - η167 - η246 + η257 - η347 - η356",
                 lambda: w - canonical_omega()),
        Identity("g2.F2_blades", "F2 = -η145 - η167 - η246 + η257 - η347 - η356",
                 lambda: F2 - (canonical_omega() - eta(1, 2, 3))),
        Identity("g2.orientation", "*F1 = η4567 (resolved orientation)", lambda: star(F1) - eta(4, 5, 6, 7)),
        Identity("g2.dF1", "dF1 = 2*F2", lambda: d(F1) - 2 * star(F2)),
        Identity("g2.dF2", "dF2 = 12*F1 + 2*F2", lambda: d(F2) - 12 * star(F1) - 2 * star(F2)),
        Identity("g2.d_star_F1", "d*F1 = 0", lambda: d(star(F1))),
        Identity("g2.d_star_F2", "d*F2 = 0", lambda: d(star(F2))),
        Identity("g2.cocalibrated", "d*ω = 0", lambda: d(star(w))),
        Identity("g2.star_d_omega", "*dω = 4(3F1 + F2)", lambda: star(d(w)) - 4 * (3 * F1 + F2)),
        Identity("g2.dw_star_w", "(dω, *ω) = 36", lambda: form_inner(d(w), star(w), g) - 36),
        Identity("g2.torsion_formula", "T^c = -*dω + 6ω", lambda: T - (-star(d(w)) + 6 * w)),
        Identity("g2.torsion_F", "T^c = -6F1 + 2F2", lambda: T - (-6 * F1 + 2 * F2)),
        Identity("g2.torsion_sasaki", "T^c = η1∧dη1 + η2∧dη2 + η3∧dη3", lambda: T - sasaki_sum),
        Identity("g2.torsion_omega", "T^c = 2ω - 8F1", lambda: T - (2 * w - 8 * F1)),
        Identity("g2.torsion_norm", "|T^c|² = 60", lambda: norm2(T, g) - 60),
        Identity("g2.d_star_torsion", "d*T^c = 0", lambda: d(star(T))),
        Identity("g2.d_torsion", "dT^c = -4*T^c", lambda: d(T) + 4 * star(T)),
        Identity("g2.d_omega_laplace", "dω = ½ d*dω - 12*ω", lambda: d(w) - d(star(d(w))) / 2 + 12 * star(w)),
        Identity("g2.type_w1", "T^c_1 = (6/7)ω", lambda: split().p1 * w - Fraction(6, 7) * w),
        Identity("g2.type_w27", "T^c_27 = (8/7)(F2 - 6F1)", lambda: split().p27 - Fraction(8, 7) * (F2 - 6 * F1)),
        Identity("g2.type_w7", "T^c has no Λ³_7 part", lambda: split().p7),
        Identity("g2.type_orthogonal", "(T^c_1, T^c_27) = 0", lambda: form_inner(split().p1 * w, split().p27, g)),
        Identity("g2.not_pure", "T^c is neither of pure type W1 nor W3",
                 lambda: [not m.field.is_zero(split().p1), not split().p27.is_zero(m.field)]),
    ]


def verify_connection(m: SasakiModel) -> list:
    """Levi-Civita and characteristic connection at the 3-Sasakian metric."""
    lc, ch = m.levi_civita, m.characteristic

    def nabla_xi(a):
        mat = linalg.obj([[lc.maps[x][k, a - 1] for x in range(DIM)] for k in range(DIM)])
        return mat + m.phis[a - 1]

    def nabla_c_eta1():
        derivs = covariant_derivative(ch, eta(1))
        return [derivs[x] - 2 * interior(x + 1, eta(2, 3)) for x in range(DIM)]

    def nabla_g_eta1():
        derivs = covariant_derivative(lc, eta(1))
        return [derivs[x] - interior(x + 1, m.deta[0]) / 2 for x in range(DIM)]

    def eta1_torsion():
        d1, d2, d3 = m.deta
        return interior(1, m.torsion) - (d1 + wedge(interior(1, d2), eta(2)) + wedge(interior(1, d3), eta(3)))

    def preserves_splitting():
        return [lam[i, j] for lam in ch.maps for i in range(DIM) for j in range(DIM) if (i < 3) != (j < 3)]

    def metric_compatible(conn):
        G = _metric_matrix(m)
        return [G @ lam + (G @ lam).T for lam in conn.maps]

    ids = [
        Identity(f"conn.nabla_xi{a}", f"∇^g ξ{a} = -φ{a}", lambda a=a: nabla_xi(a)) for a in VERTICAL
    ]
    ids += [
        Identity("conn.lc_torsion_free", "∇^g is torsion free", lambda: coset.torsion_form(lc, m.space, m.field)),
        Identity("conn.lc_metric", "∇^g is metric", lambda: metric_compatible(lc)),
        Identity("conn.nabla_g_eta1", "∇^g_X η1 = ½ X⨼dη1", nabla_g_eta1),
        Identity("conn.eta1_deta2", "ξ1⨼dη2 = 2η3", lambda: interior(1, m.deta[1]) - 2 * eta(3)),
        Identity("conn.eta1_deta3", "ξ1⨼dη3 = -2η2", lambda: interior(1, m.deta[2]) + 2 * eta(2)),
        Identity("conn.eta1_torsion", "ξ1⨼T^c = dη1 + (ξ1⨼dη2)∧η2 + (ξ1⨼dη3)∧η3", eta1_torsion),
        Identity("conn.nabla_c_eta1", "∇^c_X η1 = 2 X⨼(η2∧η3)", nabla_c_eta1),
        Identity("conn.nabla_c_F1", "∇^c(η1∧η2∧η3) = 0", lambda: covariant_derivative(ch, m.F1)),
        Identity("conn.nabla_c_omega", "∇^c ω = 0", lambda: covariant_derivative(ch, m.omega)),
        Identity("conn.nabla_c_torsion", "∇^c T^c = 0", lambda: covariant_derivative(ch, m.torsion)),
        Identity("conn.splitting", "∇^c preserves T^v ⊕ T^h", preserves_splitting),
        Identity("conn.c_metric", "∇^c is metric", lambda: metric_compatible(ch)),
        Identity("conn.c_torsion", "torsion of ∇^c equals T^c",
                 lambda: coset.torsion_form(ch, m.space, m.field) - m.torsion),
        Identity("conn.bianchi", "𝔖 R^c(X,Y)Z = 𝔖 T(T(X,Y),Z)", lambda: coset.bianchi_defect(ch, m.space)),
        Identity("conn.sasaki_torsions", "the three Sasaki torsions η_i∧dη_i sum to T^c",
                 lambda: sum((wedge(eta(a), d) for a, d in zip(VERTICAL, m.deta)), Form()) - m.torsion),
    ]
    return ids


def verify_spinor(m: SasakiModel) -> list:
    """Canonical spinor, torsion action and the Riemannian spinor equation."""
    rep, psi0, g = m.rep, m.psi0, m.metric
    W = m.clifford_form(m.omega)
    T = m.clifford_form(m.torsion)
    X = m.clifford_vector
    I8 = linalg.eye(clifford.SPIN_DIM)

    def anticommutation():
        return [rep.gammas[i] @ rep.gammas[j] + rep.gammas[j] @ rep.gammas[i] + (2 if i == j else 0) * I8
                for i in range(DIM) for j in range(i, DIM)]

    def torsion_on_vertical():
        return [[T @ X(a) @ psi0 - 10 * (X(a) @ psi0), T @ X(a) @ psi0 + Fraction(5, 3) * (X(a) @ T @ psi0)]
                for a in VERTICAL]

    def torsion_on_horizontal():
        return [[T @ X(a) @ psi0 + 6 * (X(a) @ psi0), T @ X(a) @ psi0 - X(a) @ T @ psi0] for a in HORIZONTAL]

    def nabla_g_coefficients():
        d = m.spinor_derivative_lc
        return [d[a - 1] - (Fraction(1, 2) if a in VERTICAL else Fraction(-3, 2)) * (X(a) @ psi0)
                for a in range(1, DIM + 1)]

    def nabla_g_torsion_form():
        d = m.spinor_derivative_lc
        return [d[a - 1] + m.clifford_form(interior(a, m.torsion)) @ psi0 / 4 for a in range(1, DIM + 1)]

    def nabla_g_symmetrised():
        d = m.spinor_derivative_lc
        return [d[a - 1] - (X(a) @ T + T @ X(a)) @ psi0 / 8 for a in range(1, DIM + 1)]

    def scal_identity():
        dw = d_invariant(m.omega, m.space)
        pairing = form_inner(dw, hodge(m.omega, g), g)
        return [pairing ** 2 / 18 - norm2(m.torsion, g) / 2 - m.curvature_lc.scal, pairing ** 2 / 18 - 30 - 42]

    def volume_sign():
        vol = rep.volume_element()
        return [vol - vol[0, 0] * I8, abs(vol[0, 0]) - 1]

    return [
        Identity("spin.anticommutation", "γ_iγ_j + γ_jγ_i = -2δ_ij", anticommutation),
        Identity("spin.antisymmetric", "every γ_i is antisymmetric", lambda: [gm + gm.T for gm in rep.gammas]),
        Identity("spin.volume_central", "γ1···γ7 = ±Id", volume_sign),
        Identity("spin.omega_symmetric", "ω acts symmetrically", lambda: W - W.T),
        Identity("spin.omega_spectrum", "ω has eigenvalue -7 once and 1 seven times",
                 lambda: [len(clifford.eigenspace(W, -7, m.field)) - 1, len(clifford.eigenspace(W, 1, m.field)) - 7]),
        Identity("spin.psi0", "ω·Ψ0 = -7Ψ0, |Ψ0| = 1", lambda: [W @ psi0 + 7 * psi0, psi0 @ psi0 - 1]),
        Identity("spin.torsion_psi0", "T^c·Ψ0 = -6Ψ0", lambda: T @ psi0 + 6 * psi0),
        Identity("spin.torsion_pairing", "T^c·Ψ0 = -(1/6)(dω, *ω)Ψ0",
                 lambda: T @ psi0 + form_inner(d_invariant(m.omega, m.space), hodge(m.omega, g), g) / 6 * psi0),
        Identity("spin.torsion_on_vertical", "T^c·X·Ψ0 = -(5/3)X·T^c·Ψ0 = 10X·Ψ0 for X vertical", torsion_on_vertical),
        Identity("spin.torsion_on_horizontal", "T^c·X·Ψ0 = X·T^c·Ψ0 = -6X·Ψ0 for X horizontal", torsion_on_horizontal),
        Identity("spin.nabla_c_psi0", "∇^c Ψ0 = 0",
                 lambda: coset.spinor_derivative_invariant(m.characteristic, psi0, rep, m.space, m.field)),
        Identity("spin.nabla_g_torsion", "∇^g_X Ψ0 + ¼(X⨼T^c)·Ψ0 = 0", nabla_g_torsion_form),
        Identity("spin.nabla_g_symmetrised", "∇^g_X Ψ0 = ⅛(X·T^c + T^c·X)·Ψ0", nabla_g_symmetrised),
        Identity("spin.nabla_g_psi0", "∇^g_X Ψ0 = ½X·Ψ0 (vertical), -3/2 X·Ψ0 (horizontal)", nabla_g_coefficients),
        Identity("spin.dirac", "D^g Ψ0 = (9/2)Ψ0",
                 lambda: coset.dirac(m.levi_civita, psi0, rep, m.space, m.field) - Fraction(9, 2) * psi0),
        Identity("spin.scal_identity", "Scal = (1/18)(dω,*ω)² - ½|T^c|² = 42", scal_identity),
    ]


def verify_holonomy(m: SasakiModel) -> list:
    """Spinor splitting, Casimir condition and the holonomy algebra of ∇^c."""
    rep, psi0 = m.rep, m.psi0
    W = m.clifford_form(m.omega)
    T = m.clifford_form(m.torsion)
    split = clifford.split_spinor_module(rep, psi0, VERTICAL)
    hol = lambda: m.holonomy  # noqa: E731

    def casimir_space():
        value = 2 * m.curvature_lc.scal + norm2(m.torsion, m.metric)
        space = clifford.casimir_condition_eigenspace(m.torsion, rep, m.curvature_lc.scal, m.metric, m.field)
        target = split.sigma1 + split.sigma4
        inside = [v - clifford.project(target, v) for v in space]
        return [value - 144, len(space) - 5, inside]

    def vector_kernel():
        return len(linalg.common_kernel(hol(), DIM, m.field))

    def spinor_kernel():
        lifts = [clifford.spin_lift(a, rep, m.field) for a in hol()]
        kernel = linalg.common_kernel(lifts, clifford.SPIN_DIM, m.field)
        return [len(kernel) - 1, [k - (k @ psi0) * psi0 for k in kernel]]

    return [
        Identity("hol.split_dims", "dim Σ1, Σ3, Σ4 = 1, 3, 4 and they span the spin module",
                 lambda: [np.array(split.dims, dtype=object) - linalg.obj([1, 3, 4]),
                          linalg.rank(linalg.obj(split.sigma1 + split.sigma3 + split.sigma4), m.field) - 8]),
        Identity("hol.split_orthonormal", "Σ1 ⊕ Σ3 ⊕ Σ4 is an orthonormal splitting",
                 lambda: (lambda b: b @ b.T - linalg.eye(8))(linalg.obj(split.sigma1 + split.sigma3 + split.sigma4))),
        Identity("hol.omega_identity", "ω acts as the identity on Σ3 ⊕ Σ4",
                 lambda: [W @ v - v for v in split.sigma3 + split.sigma4]),
        Identity("hol.torsion_sigma3", "T^c acts on Σ3 as 10", lambda: [T @ v - 10 * v for v in split.sigma3]),
        Identity("hol.torsion_sigma14", "T^c acts on Σ1 ⊕ Σ4 as -6",
                 lambda: [T @ v + 6 * v for v in split.sigma1 + split.sigma4]),
        Identity("hol.casimir_sigma3", "4(T^c)² acts on Σ3 as 400", lambda: [4 * (T @ T @ v) - 400 * v for v in split.sigma3]),
        Identity("hol.casimir", "2Scal + |T^c|² = 144 and the 144-eigenspace of 4(T^c)² is Σ1 ⊕ Σ4", casimir_space),
        Identity("hol.parallel_curvature", "∇^c R^c = 0",
                 lambda: coset.curvature_is_parallel(m.characteristic, m.space, m.field)),
        Identity("hol.dimension", "dim hol(∇^c) = 6", lambda: len(hol()) - 6),
        Identity("hol.in_g2", "hol(∇^c) annihilates ω", lambda: [coset.matrix_derivation(a, m.omega) for a in hol()]),
        Identity("hol.fixes_psi0", "hol(∇^c) annihilates Ψ0",
                 lambda: [clifford.spin_lift(a, rep, m.field) @ psi0 for a in hol()]),
        Identity("hol.vector_kernel", "no nonzero ∇^c-parallel vectors", vector_kernel),
        Identity("hol.spinor_kernel", "parallel spinors are multiples of Ψ0", spinor_kernel),
        Identity("hol.splitting", "hol(∇^c) preserves R³ ⊕ R⁴",
                 lambda: [a[i, j] for a in hol() for i in range(DIM) for j in range(DIM) if (i < 3) != (j < 3)]),
    ]


def killing_spinor_check(m: SasakiModel) -> list:
    """Killing spinors ξ_α·Ψ0 and the nearly parallel structures they induce."""
    rep, psi0, g = m.rep, m.psi0, m.metric
    X = m.clifford_vector
    T = m.clifford_form(m.torsion)
    omegas = m.nearly_parallel
    lc = m.levi_civita

    def killing(a):
        psi = X(a) @ psi0
        # ∇(ξ_α·Ψ0) = (∇ξ_α)·Ψ0 + ξ_α·∇Ψ0, with ∇ξ_α read off the Nomizu map
        out = []
        for x in range(1, DIM + 1):
            dxi = lc.maps[x - 1][:, a - 1]
            lhs = rep.vector_matrix(list(dxi), g) @ psi0 + X(a) @ m.spinor_derivative_lc[x - 1]
            out.append(lhs - X(x) @ psi / 2)
        return out

    def killing_direct(a):
        psi = X(a) @ psi0
        derivs = coset.spinor_derivative_invariant(lc, psi, rep, m.space, m.field)
        return [derivs[x - 1] - X(x) @ psi / 2 for x in range(1, DIM + 1)]

    def algebraic(a):
        D = m.clifford_form(m.deta[a - 1])
        out = []
        for x in range(1, DIM + 1):
            lhs = -(X(x) @ D - D @ X(x)) @ psi0 / 4 + X(a) @ (X(x) @ T + T @ X(x)) @ psi0 / 8
            out.append(lhs - X(x) @ X(a) @ psi0 / 2)
        return out

    def induced_relation():
        psi1 = psi0
        w1 = clifford.induced_g2_form(psi1, rep, g, m.field)
        out = []
        for a in range(1, DIM + 1):
            psi2 = X(a) @ psi1
            w2 = clifford.induced_g2_form(psi2, rep, g, m.field)
            out.append(w2 - (-w1 + 2 * wedge(interior(a, w1), eta(a))))
        return out

    ids = [
        Identity("killing.xi1_omega", "ξ1⨼ω = ½dη1 + 2η23", lambda: interior(1, m.omega) - m.deta[0] / 2 - 2 * eta(2, 3)),
        Identity("killing.omega1_blades", "ω1 = η123 - η145 - η167 + η246 - η257 + η347 + η356",
                 lambda: omegas[0] - (eta(1, 2, 3) - eta(1, 4, 5) - eta(1, 6, 7) + eta(2, 4, 6)
                                      - eta(2, 5, 7) + eta(3, 4, 7) + eta(3, 5, 6))),
        Identity("killing.induced_psi0", "the G2-form induced by Ψ0 is ω",
                 lambda: clifford.induced_g2_form(psi0, rep, g, m.field) - m.omega),
        Identity("killing.induced_relation", "ω_{ξ·Φ} = -ω_Φ + 2(ξ⨼ω_Φ)∧ξ", induced_relation),
        Identity("killing.negative_control", "∇^g_{e4}Ψ0 ≠ ½ e4·Ψ0",
                 lambda: not linalg.is_zero_array(m.spinor_derivative_lc[3] - X(4) @ psi0 / 2, m.field)),
    ]
    for a in VERTICAL:
        sasaki_sum = sum((wedge(eta(b), d) for b, d in zip(VERTICAL, m.deta)), Form())
        ids += [
            Identity(f"killing.psi{a}", f"∇^g_X(ξ{a}·Ψ0) = ½X·(ξ{a}·Ψ0)", lambda a=a: killing(a)),
            Identity(f"killing.psi{a}_direct", f"ξ{a}·Ψ0 is a Killing spinor (spin lift of ∇^g)",
                     lambda a=a: killing_direct(a)),
            Identity(f"killing.algebraic{a}", f"-¼(X·dη{a} - dη{a}·X)Ψ0 + ⅛ξ{a}(X·T^c + T^c·X)Ψ0 = ½X·ξ{a}·Ψ0",
                     lambda a=a: algebraic(a)),
            Identity(f"killing.omega{a}_induced_formula", f"ω{a} = -½Σ η∧dη - 4F1 + 2(ξ{a}⨼ω)∧η{a}",
                     lambda a=a, ss=sasaki_sum: omegas[a - 1] - (-ss / 2 - 4 * m.F1 + 2 * wedge(interior(a, m.omega), eta(a)))),
            Identity(f"killing.omega{a}_eigen", f"ω{a}·(ξ{a}·Ψ0) = -7 ξ{a}·Ψ0",
                     lambda a=a: (m.clifford_form(omegas[a - 1]) + 7 * linalg.eye(8)) @ X(a) @ psi0),
            Identity(f"killing.d_omega{a}", f"dω{a} = -4*ω{a}",
                     lambda a=a: d_invariant(omegas[a - 1], m.space) + 4 * hodge(omegas[a - 1], g)),
            Identity(f"killing.induced{a}", f"the G2-form induced by ξ{a}·Ψ0 is ω{a}",
                     lambda a=a: clifford.induced_g2_form(X(a) @ psi0, rep, g, m.field) - omegas[a - 1]),
            Identity(f"killing.spinor{a}", f"the canonical spinor of ω{a} is ξ{a}·Ψ0",
                     lambda a=a: (lambda p: [p @ p - 1, X(a) @ psi0 - (p @ (X(a) @ psi0)) * p])(
                         clifford.canonical_spinor(omegas[a - 1], rep, g, m.field))),
            Identity(f"killing.torsion{a}", f"the characteristic torsion of ω{a} is -(2/3)ω{a}",
                     lambda a=a: characteristic_torsion(omegas[a - 1], g, m.space, m.field) + Fraction(2, 3) * omegas[a - 1]),
        ]
    return ids


def verify_deformation(m: SasakiModel) -> list:
    """The s-family: cocalibration, torsion, curvature and spinor equations."""
    s, g, sp = m.s, m.metric, m.space
    star = lambda a: hodge(a, g)  # noqa: E731
    X = m.clifford_vector
    psi0 = m.psi0
    one, t = Fraction(1), m.t
    I7 = linalg.eye(DIM)

    def block(h_val, v_val):
        out = linalg.zeros(DIM, DIM)
        for i in range(DIM):
            out[i, i] = v_val if i < 3 else h_val
        return out

    def spinor_coefficients():
        d = m.spinor_derivative_lc
        vert = s - one / (2 * s)
        hor = -Fraction(3, 2) * s
        return [d[a - 1] - (vert if a in VERTICAL else hor) * (X(a) @ psi0) for a in range(1, DIM + 1)]

    ric_g = lambda: block(6 * (2 - t), (2 + 4 * t * t) / t)  # noqa: E731
    ids = [
        Identity("deform.psi0", "ω^s·Ψ0 = -7Ψ0", lambda: m.clifford_form(m.omega_s) @ psi0 + 7 * psi0),
        Identity("deform.cocalibrated", "d*_s ω^s = 0", lambda: d_invariant(star(m.omega_s), sp)),
        Identity("deform.d_omega", "dω^s = 12s *_sF1^s + (2s + 2/s) *_sF2^s",
                 lambda: d_invariant(m.omega_s, sp) - 12 * s * star(m.F1s) - (2 * s + 2 / s) * star(m.F2s)),
        Identity("deform.torsion", "T^c_s = (2/s - 10s)(sη1)∧(sη2)∧(sη3) + 2s ω^s",
                 lambda: m.torsion - ((2 / s - 10 * s) * s ** 3 * m.F1 + 2 * s * m.omega_s)),
        Identity("deform.nabla_c_omega", "∇^{c,s} ω^s = 0", lambda: covariant_derivative(m.characteristic, m.omega_s)),
        Identity("deform.nabla_c_torsion", "∇^{c,s} T^c_s = 0",
                 lambda: covariant_derivative(m.characteristic, m.torsion)),
        Identity("deform.nabla_c_psi0", "∇^{c,s} Ψ0 = 0",
                 lambda: coset.spinor_derivative_invariant(m.characteristic, psi0, m.rep, sp, m.field)),
        Identity("deform.ricci", "Ric^{g^s} = 6(2 - s²)Id_h ⊕ ((2 + 4s⁴)/s²)Id_v",
                 lambda: m.curvature_lc.ric_endo - ric_g()),
        Identity("deform.scal", "Scal^{g^s} = 6(8 + 1/s² - 2s²)", lambda: m.curvature_lc.scal - 6 * (8 + 1 / t - 2 * t)),
        Identity("deform.spinor", "∇^{g^s}Ψ0 = -(3/2)s X·Ψ0 (horizontal), (s - 1/(2s)) X·Ψ0 (vertical)",
                 spinor_coefficients),
        Identity("deform.dirac", "D^{g^s}Ψ0 = (3/(2s) + 3s)Ψ0",
                 lambda: coset.dirac(m.levi_civita, psi0, m.rep, sp, m.field) - (3 / (2 * s) + 3 * s) * psi0),
        Identity("deform.ricci_c", "Ric^{∇c,s} = 12(1 - s²)Id_h ⊕ 16(1 - 2s²)Id_v",
                 lambda: m.ricci_c - block(12 * (1 - t), 16 * (1 - 2 * t))),
    ]
    if t == Fraction(1, 5) or (m.field.mode == "float" and abs(float(t) - 0.2) < 1e-12):
        ids += [
            Identity("deform.np_d_omega", "s = 1/√5: dω^s = (12/√5) *_s ω^s",
                     lambda: d_invariant(m.omega_s, sp) - 12 * s * star(m.omega_s)),
            Identity("deform.np_ricci", "s = 1/√5: Ric^{g^s} = (54/5)Id",
                     lambda: m.curvature_lc.ric_endo - Fraction(54, 5) * I7),
            Identity("deform.np_ricci_c", "s = 1/√5: Ric^{∇c} = (48/5)Id", lambda: m.ricci_c - Fraction(48, 5) * I7),
            Identity("deform.np_killing", "s = 1/√5: ∇^{g^s}_XΨ0 = -(3/(2√5))X·Ψ0",
                     lambda: [m.spinor_derivative_lc[a - 1] + Fraction(3, 2) * s * (X(a) @ psi0)
                              for a in range(1, DIM + 1)]),
        ]
    if t == Fraction(1, 2) or (m.field.mode == "float" and abs(float(t) - 0.5) < 1e-12):
        ids += [
            Identity("deform.half_ricci_c", "s² = 1/2: Ric^{∇c} vanishes on T^v",
                     lambda: m.ricci_c[:3, :3]),
            Identity("deform.half_vertical", "s² = 1/2: Ψ0 is parallel in vertical directions",
                     lambda: [m.spinor_derivative_lc[a - 1] for a in VERTICAL]),
            Identity("deform.half_dirac_square", "s² = 1/2: (D^{g^s})²Ψ0 = 18Ψ0 = ¼·(4/3)·Scal·Ψ0",
                     lambda: [_dirac_squared(m) - 18 * psi0, 18 - m.curvature_lc.scal / 3]),
        ]
    if t == 1 or (m.field.mode == "float" and abs(float(t) - 1) < 1e-12):
        ids += [
            Identity("deform.one_dirac", "s = 1: D^gΨ0 = (9/2)Ψ0",
                     lambda: coset.dirac(m.levi_civita, psi0, m.rep, sp, m.field) - Fraction(9, 2) * psi0),
            Identity("deform.one_ricci_c", "s = 1: Ric^{∇c} vanishes on T^h", lambda: m.ricci_c[3:, 3:]),
        ]
    return ids


def _dirac_squared(m: SasakiModel) -> np.ndarray:
    """``D(DΨ0)``; Ψ0 is an eigenspinor, so the second application rescales it."""
    d_psi = coset.dirac(m.levi_civita, m.psi0, m.rep, m.space, m.field)
    lam = d_psi @ m.psi0
    if not linalg.is_zero_array(d_psi - lam * m.psi0, m.field):
        raise ValueError("Ψ0 is not a Dirac eigenspinor")
    return lam * d_psi


def all_identities(m: SasakiModel) -> list:
    return (verify_structure(m) + verify_g2_torsion(m) + verify_connection(m) + verify_spinor(m)
            + verify_holonomy(m) + killing_spinor_check(m) + verify_deformation(m))
