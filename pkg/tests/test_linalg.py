from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from sasaki7 import linalg
from sasaki7.scalars import FloatField

from strategies import rationals

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_nullspace_is_kernel_and_rank_nullity(rows):
    m = linalg.obj(rows)
    kernel = linalg.nullspace(m)
    for v in kernel:
        assert linalg.is_zero_array(m @ v)
    assert linalg.rank(m) + len(kernel) == m.shape[1]
    # cross-check rank against numpy on the float image
    assert linalg.rank(m) == np.linalg.matrix_rank(m.astype(float)) or m.shape[0] == 0


def test_solve():
    a = linalg.obj([[2, 1], [1, 3]])
    b = linalg.obj([3, 5])
    x = linalg.solve(a, b)
    assert list(x) == [Fraction(4, 5), Fraction(7, 5)]


def test_echelon_basis_membership():
    basis = linalg.EchelonBasis()
    assert basis.add(linalg.obj([1, 2, 0]))
    assert basis.add(linalg.obj([0, 1, 1]))
    assert not basis.add(linalg.obj([1, 3, 1]))
    assert basis.contains(linalg.obj([2, 5, 1]))
    assert not basis.contains(linalg.obj([0, 0, 1]))
    assert len(basis) == 2


def test_common_kernel_and_float_mode():
    a = linalg.obj([[1, 0, 0]])
    b = linalg.obj([[0, 1, 0]])
    assert len(linalg.common_kernel([a, b], 3)) == 1
    f = FloatField(1)
    m = linalg.obj([[1.0, 1e-12], [0.0, 1e-12]])
    assert linalg.rank(m, f) == 1


def test_orthonormalize():
    vs = [linalg.obj([3, 4]), linalg.obj([1, 0])]
    out = linalg.orthonormalize(vs)
    assert out[0] @ out[0] == 1 and out[0] @ out[1] == 0
