"""Invariant geometry of a reductive homogeneous space from structure constants.

Everything is computed at the base point.  Vectors of ``m`` are coordinate
arrays in the frame ``e_1..e_n`` given by the ``m`` part of the Lie algebra
basis; the metric on ``m`` is diagonal with squared weights ``w_i**2``.  A
connection is stored through its Nomizu map ``X -> Λ(X) ∈ End(m)`` with the
column convention ``Λ(X) @ Y``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg
from .exterior import DIM, Form, Metric, blade_indices, blade_sign, interior, matrix_derivation
from .scalars import ExactField, Field, format_scalar, parse_scalar

EXACT = ExactField(1)

# Global sign of the invariant exterior derivative.  With brackets of the
# Lie algebra this reproduces d(η_1) = -2(η_23 + η_45 + η_67) for the model.
D_SIGN = 1


@dataclass(frozen=True, eq=False)
class CosetSpace:
    """Lie algebra ``g = h ⊕ m`` with structure constants and a metric on ``m``.

    ``constants[a, b, c]`` is the ``c``-component of ``[x_a, x_b]``.
    """

    names: tuple
    constants: np.ndarray
    h_indices: tuple
    metric_weights: tuple
    orientation: int = 1

    @cached_property
    def m_indices(self) -> tuple:
        return tuple(i for i in range(len(self.names)) if i not in self.h_indices)

    @property
    def dim_g(self) -> int:
        return len(self.names)

    @property
    def dim_h(self) -> int:
        return len(self.h_indices)

    @property
    def dim_m(self) -> int:
        return len(self.m_indices)

    @cached_property
    def squares(self) -> tuple:
        return tuple(w * w for w in self.metric_weights)

    @property
    def metric(self) -> Metric:
        return Metric(tuple(self.metric_weights), self.orientation)

    def bracket(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        """Bracket of two vectors in full ``g`` coordinates."""
        return np.einsum("a,b,abc->c", u, v, self.constants)

    @cached_property
    def m_bracket(self) -> np.ndarray:
        """``[i, j, k]``: ``m``-component ``k`` of ``[e_i, e_j]`` for ``e_i ∈ m``."""
        m = self.m_indices
        return self.constants[np.ix_(m, m, m)]

    @cached_property
    def h_bracket(self) -> np.ndarray:
        """``[i, j, r]``: ``h``-component ``r`` of ``[e_i, e_j]``."""
        m, h = self.m_indices, self.h_indices
        return self.constants[np.ix_(m, m, h)]

    @cached_property
    def h_action(self) -> list:
        """Matrices of ``ad(z_r)`` restricted to ``m``, one per ``h`` basis vector."""
        m = self.m_indices
        out = []
        for r in self.h_indices:
            a = linalg.zeros(self.dim_m, self.dim_m)
            for j, mj in enumerate(m):
                for k, mk in enumerate(m):
                    a[k, j] = self.constants[r, mj, mk]
            out.append(a)
        return out

    def to_json(self) -> dict:
        brackets = []
        n = self.dim_g
        for a in range(n):
            for b in range(a + 1, n):
                terms = [[c, format_scalar(self.constants[a, b, c])] for c in range(n) if self.constants[a, b, c] != 0]
                if terms:
                    brackets.append([a, b, terms])
        return {
            "basis": list(self.names),
            "brackets": brackets,
            "h_indices": list(self.h_indices),
            "metric_weights": [format_scalar(w) for w in self.metric_weights],
            "orientation": self.orientation,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, ensure_ascii=False)

    @classmethod
    def from_json(cls, data: dict, field: Field | None = None) -> "CosetSpace":
        """Build a space from the ingestion schema (indices or basis names)."""
        conv = field if field is not None else parse_scalar
        names = tuple(data["basis"])
        index = {name: i for i, name in enumerate(names)}

        def idx(x):
            if isinstance(x, str) and x in index:
                return index[x]
            i = int(x)
            if not 0 <= i < len(names):
                raise ValueError(f"basis index {x} out of range")
            return i

        n = len(names)
        c = linalg.zeros(n, n, n)
        for entry in data.get("brackets", []):
            a, b, terms = entry
            a, b = idx(a), idx(b)
            for term in terms:
                k, coeff = term
                value = conv(str(coeff))
                c[a, b, idx(k)] += value
                c[b, a, idx(k)] -= value
        h = tuple(sorted(idx(x) for x in data.get("h_indices", [])))
        weights = tuple(conv(str(w)) for w in data["metric_weights"])
        if len(weights) != n - len(h):
            raise ValueError(f"expected {n - len(h)} metric weights, got {len(weights)}")
        orientation = int(data.get("orientation", 1))
        if orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        return cls(names, c, h, weights, orientation)


def validate(space: CosetSpace, field: Field = EXACT) -> dict[str, bool]:
    """Check the structural invariants; one boolean per named invariant."""
    c = space.constants
    n = space.dim_g
    report: dict[str, bool] = {}
    report["antisymmetry"] = linalg.is_zero_array(c + c.transpose(1, 0, 2), field)

    jac = True
    for a, b, d in itertools.combinations(range(n), 3):
        # [[a,b],d] + [[b,d],a] + [[d,a],b]
        total = c[a, b] @ c[:, d, :] + c[b, d] @ c[:, a, :] + c[d, a] @ c[:, b, :]
        if not linalg.is_zero_array(total, field):
            jac = False
            break
    report["jacobi"] = jac

    h, m = space.h_indices, space.m_indices
    hh_in_h = all(field.is_zero(c[a, b, k]) for a in h for b in h for k in m)
    hm_in_m = all(field.is_zero(c[a, b, k]) for a in h for b in m for k in h)
    report["reductive"] = hh_in_h and hm_in_m

    report["metric_positive"] = all(float(w) > 0 for w in space.metric_weights)
    invariant = True
    if report["reductive"]:
        sq = space.squares
        for a in space.h_action:
            # <[z,x],y> + <x,[z,y]> = 0  <=>  G a is antisymmetric
            ga = np.array([[sq[k] * a[k, j] for j in range(space.dim_m)] for k in range(space.dim_m)], dtype=object)
            if not linalg.is_zero_array(ga + ga.T, field):
                invariant = False
                break
    else:
        invariant = False
    report["metric_invariant"] = invariant
    return report


def d_invariant(a: Form, space: CosetSpace) -> Form:
    """Exterior derivative of an invariant form on a 7-dimensional ``m``."""
    if space.dim_m != DIM:
        raise ValueError("forms live on a 7-dimensional m")
    mb = space.m_bracket
    nz = [(i, j, k, mb[i, j, k]) for i in range(DIM) for j in range(i + 1, DIM) for k in range(DIM) if mb[i, j, k] != 0]
    out: dict[int, object] = {}
    for b, coef in a.items():
        # contribution of coef * η_b to every (k+1)-blade via the pair formula
        for i, j, k, ck in nz:
            if not b >> k & 1:
                continue
            rest = b ^ (1 << k)
            if rest >> i & 1 or rest >> j & 1:
                continue
            # α(e_k, rest...) = sign * coef where η_b = sign * η_k ∧ η_rest
            s = blade_sign(1 << k, rest)
            target = rest | (1 << i) | (1 << j)
            ordered = sorted(blade_indices(target))
            p, q = ordered.index(i + 1), ordered.index(j + 1)
            sign = s * (-1) ** (p + q) * D_SIGN
            val = coef * ck
            out[target] = out.get(target, 0) + (val if sign > 0 else -val)
    return Form(out)


@dataclass(frozen=True, eq=False)
class ConnectionMap:
    """Nomizu map of an invariant metric connection: ``maps[i] = Λ(e_{i+1})``."""

    maps: tuple
    torsion: Form | None = None

    def __call__(self, v) -> np.ndarray:
        """``Λ(v)`` for a coordinate vector ``v``."""
        out = linalg.zeros(*self.maps[0].shape)
        for vi, lam in zip(v, self.maps):
            if vi != 0:
                out = out + vi * lam
        return out

    def __len__(self) -> int:
        return len(self.maps)


def levi_civita(space: CosetSpace) -> ConnectionMap:
    """``Λ(X)Y = ½[X,Y]_m + U(X,Y)`` with ``U`` from the metric."""
    n = space.dim_m
    mb, sq = space.m_bracket, space.squares
    half = Fraction(1, 2)
    maps = []
    for i in range(n):
        lam = linalg.zeros(n, n)
        for j in range(n):
            for k in range(n):
                u = half * (sq[j] * mb[k, i, j] + sq[i] * mb[k, j, i]) / sq[k]
                lam[k, j] = half * mb[i, j, k] + u
        maps.append(lam)
    return ConnectionMap(tuple(maps))


def with_torsion(lc: ConnectionMap, torsion: Form, g: Metric) -> ConnectionMap:
    """Add ``½ T(X, Y, ·)^♯`` to a connection; the new torsion is ``T``."""
    if torsion.degree not in (3, None):
        raise ValueError("torsion must be a 3-form")
    if not torsion:
        return lc
    n = len(lc.maps)
    half = Fraction(1, 2)
    maps = []
    for i in range(n):
        lam = np.array(lc.maps[i], dtype=object, copy=True)
        ti = interior(i + 1, torsion)
        for j in range(n):
            vec = g.sharp(interior(j + 1, ti))
            for k in range(n):
                if vec[k] != 0:
                    lam[k, j] = lam[k, j] + half * vec[k]
        maps.append(lam)
    base = lc.torsion if lc.torsion is not None else Form()
    return ConnectionMap(tuple(maps), base + torsion)


def torsion_form(conn: ConnectionMap, space: CosetSpace, field: Field = EXACT) -> Form:
    """Torsion ``g(T(X,Y), Z)`` as a 3-form; raises if not totally skew."""
    n = space.dim_m
    sq, mb = space.squares, space.m_bracket
    tensor = np.empty((n, n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            tij = conn.maps[i][:, j] - conn.maps[j][:, i] - mb[i, j, :]
            for k in range(n):
                tensor[i, j, k] = sq[k] * tij[k]
    for i, j, k in itertools.permutations(range(n), 3):
        if not field.is_zero(tensor[i, j, k] - tensor[j, k, i]):
            raise ValueError("torsion is not totally skew-symmetric")
    out = {}
    for i, j, k in itertools.combinations(range(n), 3):
        out[(1 << i) | (1 << j) | (1 << k)] = tensor[i, j, k]
    return Form(out)


def covariant_derivative(conn: ConnectionMap, tensor) -> list:
    """``∇_{e_i}`` of an invariant tensor at the base point, for every ``i``.

    Forms transform by the derivation action, vectors by ``Λ(X) v`` and
    endomorphisms by the commutator.
    """
    if isinstance(tensor, Form):
        return [matrix_derivation(lam, tensor) for lam in conn.maps]
    arr = np.asarray(tensor, dtype=object)
    if arr.ndim == 1:
        return [lam @ arr for lam in conn.maps]
    if arr.ndim == 2:
        return [linalg.commutator(lam, arr) for lam in conn.maps]
    raise TypeError("unsupported tensor type")


@dataclass(frozen=True, eq=False)
class CurvatureData:
    R: list          # R[i][j] = R(e_i, e_j) as an endomorphism of m
    ric: np.ndarray  # bilinear Ric(e_i, e_j)
    ric_endo: np.ndarray
    scal: object


def curvature_operator(conn: ConnectionMap, space: CosetSpace, i: int, j: int) -> np.ndarray:
    mb, hb = space.m_bracket, space.h_bracket
    lam = conn.maps
    out = linalg.commutator(lam[i], lam[j])
    for k in range(space.dim_m):
        if mb[i, j, k] != 0:
            out = out - mb[i, j, k] * lam[k]
    for r, ad in enumerate(space.h_action):
        if hb[i, j, r] != 0:
            out = out - hb[i, j, r] * ad
    return out


def curvature(conn: ConnectionMap, space: CosetSpace) -> CurvatureData:
    """Curvature, Ricci tensor and scalar curvature of an invariant connection.

    ``Ric(X, Y) = Σ_i <R(f_i, X)Y, f_i>`` over an orthonormal frame, which in
    the coordinate frame is the plain trace of ``Z -> R(Z, X)Y``.
    """
    n = space.dim_m
    zero = linalg.zeros(n, n)
    R = [[zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            r = curvature_operator(conn, space, i, j)
            R[i][j] = r
            R[j][i] = -r
    ric = linalg.zeros(n, n)
    for x in range(n):
        for y in range(n):
            ric[x, y] = sum((R[i][x][i, y] for i in range(n)), 0)
    sq = space.squares
    ric_endo = np.array([[ric[k, j] / sq[k] for j in range(n)] for k in range(n)], dtype=object)
    scal = sum((ric_endo[i, i] for i in range(n)), 0)
    return CurvatureData(R, ric, ric_endo, scal)


def torsion_is_parallel(conn: ConnectionMap, space: CosetSpace, field: Field = EXACT) -> bool:
    t = torsion_form(conn, space, field)
    return all(d.is_zero(field) for d in covariant_derivative(conn, t))


def curvature_is_parallel(conn: ConnectionMap, space: CosetSpace, field: Field = EXACT) -> bool:
    """``(∇_X R)(Y, Z) = [Λ(X), R(Y,Z)] - R(Λ(X)Y, Z) - R(Y, Λ(X)Z)`` vanishes."""
    n = space.dim_m
    R = curvature(conn, space).R
    for x in range(n):
        lam = conn.maps[x]
        for y in range(n):
            for z in range(y + 1, n):
                total = linalg.commutator(lam, R[y][z])
                for k in range(n):
                    if lam[k, y] != 0:
                        total = total - lam[k, y] * R[k][z]
                    if lam[k, z] != 0:
                        total = total - lam[k, z] * R[y][k]
                if not linalg.is_zero_array(total, field):
                    return False
    return True


def ricci_of_torsion_connection(conn: ConnectionMap, space: CosetSpace, field: Field = EXACT) -> np.ndarray:
    """Ricci endomorphism of a connection whose torsion is parallel."""
    if not torsion_is_parallel(conn, space, field):
        raise ValueError("torsion is not parallel")
    return curvature(conn, space).ric_endo


def bianchi_defect(conn: ConnectionMap, space: CosetSpace) -> list:
    """Cyclic sums ``𝔖 R(X,Y)Z - 𝔖 T(T(X,Y),Z)`` over basis triples.

    For a connection with parallel torsion every entry vanishes.
    """
    n = space.dim_m
    R = curvature(conn, space).R
    mb = space.m_bracket

    def tor(x, y):
        return conn(x) @ y - conn(y) @ x - np.einsum("i,j,ijk->k", x, y, mb)

    basis = list(linalg.eye(n))
    out = []
    for i, j, k in itertools.combinations(range(n), 3):
        total = linalg.zeros(n)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            total = total + R[a][b][:, c] - tor(tor(basis[a], basis[b]), basis[c])
        out.append(total)
    return out


def holonomy_closure(conn: ConnectionMap, space: CosetSpace, field: Field = EXACT) -> list:
    """Basis of the holonomy algebra of an invariant connection.

    Starts from the span of the curvature operators and closes under
    brackets with ``Λ(m)`` and with itself.  When the curvature is parallel
    the ``Λ(m)`` brackets add nothing.
    """
    if not torsion_is_parallel(conn, space, field):
        raise ValueError("holonomy closure needs parallel torsion")
    n = space.dim_m
    basis = linalg.EchelonBasis(field)
    for i in range(n):
        for j in range(i + 1, n):
            basis.add(curvature_operator(conn, space, i, j).ravel())
    frontier = list(basis.vectors)
    while frontier:
        if len(basis) > n * (n - 1) // 2:
            raise RuntimeError("holonomy closure exceeded so(m); structure constants are inconsistent")
        new = []
        current = [v.reshape(n, n) for v in basis.vectors]
        for v in frontier:
            a = v.reshape(n, n)
            for b in list(conn.maps) + current:
                c = linalg.commutator(b, a).ravel()
                if basis.add(c):
                    new.append(c)
        frontier = new
    return [v.reshape(n, n) for v in basis.vectors]


def orthonormal_matrix(a: np.ndarray, space: CosetSpace) -> np.ndarray:
    """Conjugate an endomorphism of ``m`` into the orthonormal frame ``e_i / w_i``."""
    w = space.metric_weights
    n = len(w)
    return np.array([[w[k] * a[k, j] / w[j] for j in range(n)] for k in range(n)], dtype=object)


def spinor_derivative_invariant(conn: ConnectionMap, psi: np.ndarray, rep, space: CosetSpace,
                                field: Field = EXACT) -> list:
    """``∇_{e_i} ψ = σ(Λ(e_i)) ψ`` for an isotropy-invariant spinor ``ψ``."""
    from .clifford import spin_lift

    for ad in space.h_action:
        if not linalg.is_zero_array(spin_lift(orthonormal_matrix(ad, space), rep, field) @ psi, field):
            raise ValueError("spinor is not invariant under the isotropy algebra")
    return [spin_lift(orthonormal_matrix(lam, space), rep, field) @ psi for lam in conn.maps]


def dirac(conn: ConnectionMap, psi: np.ndarray, rep, space: CosetSpace, field: Field = EXACT) -> np.ndarray:
    """``Σ_i f_i · ∇_{f_i} ψ`` over the orthonormal frame ``f_i = e_i / w_i``."""
    derivs = spinor_derivative_invariant(conn, psi, rep, space, field)
    out = linalg.zeros(len(psi))
    for i, d in enumerate(derivs):
        out = out + (rep.gammas[i] @ d) / space.metric_weights[i]
    return out
