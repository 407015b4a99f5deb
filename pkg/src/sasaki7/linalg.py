"""Gaussian elimination over whatever scalar field a computation runs in.

Matrices are numpy ``object`` arrays so Fractions and Surds flow through
``@`` unchanged.  Zero tests go through the field so the same code serves
exact and float mode.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .scalars import ExactField, Field

_EXACT = ExactField(1)


def obj(a) -> np.ndarray:
    return np.array(a, dtype=object)


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(0)
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def is_zero_array(a: np.ndarray, field: Field = _EXACT) -> bool:
    return all(field.is_zero(x) for x in np.asarray(a).flat)


def max_abs(a) -> float:
    flat = list(np.asarray(a, dtype=object).flat)
    return max((abs(float(x)) for x in flat), default=0.0)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def _exact_pivot(x):
    # int / int would silently become a float
    return Fraction(x) if isinstance(x, int) else x


def rref(m: np.ndarray, field: Field = _EXACT) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    r = np.array(m, dtype=object, copy=True)
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        candidates = [i for i in range(row, rows) if not field.is_zero(r[i, col])]
        if not candidates:
            continue
        if field.mode == "float":
            best = max(candidates, key=lambda i: field.magnitude(r[i, col]))
        else:
            best = candidates[0]
        if best != row:
            r[[row, best]] = r[[best, row]]
        r[row] = r[row] / _exact_pivot(r[row, col])
        for i in range(rows):
            if i != row and not field.is_zero(r[i, col]):
                r[i] = r[i] - r[i, col] * r[row]
        pivots.append(col)
        row += 1
    return r, pivots


def rank(m: np.ndarray, field: Field = _EXACT) -> int:
    if np.asarray(m).size == 0:
        return 0
    return len(rref(m, field)[1])


def nullspace(m: np.ndarray, field: Field = _EXACT) -> list[np.ndarray]:
    """Basis of ``{x : m @ x = 0}``, one vector per free column."""
    m = np.asarray(m, dtype=object)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return [row for row in eye(cols)]
    r, pivots = rref(m, field)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zeros(cols)
        v[f] = 1
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(v)
    return basis


def solve(a: np.ndarray, b: np.ndarray, field: Field = _EXACT) -> np.ndarray:
    """Solve a square nonsingular system ``a @ x = b``."""
    a = np.asarray(a, dtype=object)
    n = a.shape[0]
    aug = np.concatenate([a, np.asarray(b, dtype=object).reshape(n, -1)], axis=1)
    r, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise np.linalg.LinAlgError("singular system")
    x = r[:n, n:]
    return x.reshape(np.asarray(b).shape)


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace.

    ``add`` reduces the candidate against the current rows and keeps it only
    if a nonzero remainder is left, so membership tests stay exact.
    """

    def __init__(self, field: Field = _EXACT):
        self.field = field
        self._rows: list[tuple[int, np.ndarray]] = []
        self.vectors: list[np.ndarray] = []

    def __len__(self) -> int:
        return len(self.vectors)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        w = np.array(v, dtype=object, copy=True).ravel()
        for pivot, row in self._rows:
            if not self.field.is_zero(w[pivot]):
                w = w - w[pivot] * row
        return w

    def contains(self, v: np.ndarray) -> bool:
        return is_zero_array(self.reduce(v), self.field)

    def add(self, v: np.ndarray) -> bool:
        w = self.reduce(v)
        nonzero = [i for i, x in enumerate(w) if not self.field.is_zero(x)]
        if not nonzero:
            return False
        if self.field.mode == "float":
            pivot = max(nonzero, key=lambda i: self.field.magnitude(w[i]))
        else:
            pivot = nonzero[0]
        w = w / _exact_pivot(w[pivot])
        reduced = []
        for p, row in self._rows:
            if not self.field.is_zero(row[pivot]):
                row = row - row[pivot] * w
            reduced.append((p, row))
        reduced.append((pivot, w))
        self._rows = reduced
        self.vectors.append(np.array(v, dtype=object, copy=True))
        return True


def span_basis(vectors: Iterable[np.ndarray], field: Field = _EXACT) -> list[np.ndarray]:
    basis = EchelonBasis(field)
    for v in vectors:
        basis.add(v)
    return basis.vectors


def common_kernel(matrices: Sequence[np.ndarray], n: int, field: Field = _EXACT) -> list[np.ndarray]:
    """Basis of the joint kernel of a family of ``n``-column matrices."""
    if not matrices:
        return nullspace(zeros(0, n), field)
    return nullspace(np.concatenate([np.asarray(m, dtype=object) for m in matrices], axis=0), field)


def orthonormalize(vectors: Sequence[np.ndarray], field: Field = _EXACT) -> list[np.ndarray]:
    """Gram-Schmidt; needs square roots of the norms to exist in ``field``."""
    out: list[np.ndarray] = []
    for v in vectors:
        w = np.array(v, dtype=object, copy=True)
        for u in out:
            w = w - (u @ w) * u
        norm2 = w @ w
        if field.is_zero(norm2):
            continue
        out.append(w / field.sqrt(norm2))
    return out
