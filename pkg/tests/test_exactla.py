from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from globrep.exactla import (Matrix, ShapeError, Subspace, direct_sum, hstack, image_basis, kernel_basis,
                             kron, quotient_map, quotient_section, rref, solve, vstack)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_rows=4, max_cols=4, rows=None, cols=None):
    r = draw(st.integers(0, max_rows)) if rows is None else rows
    c = draw(st.integers(0, max_cols)) if cols is None else cols
    entries = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(entries, c)


def to_sympy(M: Matrix):
    r, c = M.shape
    return sympy.Matrix(r, c, lambda i, j: sympy.Rational(M.row(i)[j].numerator, M.row(i)[j].denominator)
                        if isinstance(M.row(i)[j], Fraction) else M.row(i)[j])


def test_kernel_of_identity_is_zero():
    assert kernel_basis(Matrix.identity(3)).dim == 0


def test_kernel_of_one_relation():
    K = kernel_basis(Matrix.from_rows([[1, 1]]))
    assert K.dim == 1
    assert K.contains((1, -1))


@given(matrices())
def test_rank_matches_sympy(M):
    assert M.rank() == to_sympy(M).rank()


@given(matrices())
def test_rref_matches_sympy(M):
    R, piv = rref(M)
    SR, spiv = to_sympy(M).rref()
    assert tuple(piv) == tuple(spiv)
    assert to_sympy(R) == SR


@given(matrices())
def test_kernel_and_image_dimensions(M):
    K = kernel_basis(M)
    I = image_basis(M)
    r, c = M.shape
    assert K.dim == (len(to_sympy(M).nullspace()) if c and r else c)
    assert K.dim + I.dim == c
    B = K.basis_matrix()
    for j in range(K.dim):
        assert all(x == 0 for x in M.apply(B.column(j)))


@given(matrices(rows=3, cols=3))
def test_inverse_matches_sympy(M):
    S = to_sympy(M)
    if S.det() == 0:
        assert not M.is_invertible()
        with pytest.raises(ZeroDivisionError):
            M.inverse()
    else:
        assert to_sympy(M.inverse()) == S.inv()
        assert (M @ M.inverse()).is_identity()


@given(matrices(), st.data())
def test_solve_finds_solutions_when_they_exist(M, data):
    r, c = M.shape
    x = data.draw(st.lists(small, min_size=c, max_size=c))
    b = M.apply(x)
    y = solve(M, b)
    assert y is not None and M.apply(y) == b


def test_solve_reports_inconsistency():
    M = Matrix.from_rows([[1, 0], [1, 0]])
    assert solve(M, (1, 2)) is None


@given(matrices(max_rows=3, max_cols=3), matrices(max_rows=3, max_cols=3))
def test_kron_matches_sympy(A, B):
    from sympy.physics.quantum import TensorProduct
    if 0 in A.shape or 0 in B.shape:
        assert kron(A, B).shape == (A.shape[0] * B.shape[0], A.shape[1] * B.shape[1])
        return
    assert to_sympy(kron(A, B)) == TensorProduct(to_sympy(A), to_sympy(B))


@given(matrices(), matrices())
def test_direct_sum_is_block_diagonal(A, B):
    D = direct_sum(A, B)
    assert D.shape == (A.shape[0] + B.shape[0], A.shape[1] + B.shape[1])
    assert to_sympy(D) == sympy.diag(to_sympy(A), to_sympy(B), unpack=True) or 0 in D.shape


def test_stacks_and_shape_errors():
    A = Matrix.from_rows([[1, 2]])
    assert hstack(A, A).shape == (1, 4)
    assert vstack(A, A).shape == (2, 2)
    with pytest.raises(ShapeError):
        A @ A


@given(st.integers(0, 4), st.data())
def test_quotient_map_kills_exactly_the_subspace(n, data):
    vecs = data.draw(st.lists(st.lists(small, min_size=n, max_size=n), max_size=3))
    W = Subspace.span(n, vecs)
    q = quotient_map(n, W)
    s = quotient_section(n, W)
    assert q.shape == (n - W.dim, n)
    assert q.is_surjective()
    assert kernel_basis(q).issubspace(W) and W.issubspace(kernel_basis(q))
    assert (q @ s).is_identity()


@given(st.integers(1, 4), st.data())
def test_subspace_coordinates_round_trip(n, data):
    vecs = data.draw(st.lists(st.lists(small, min_size=n, max_size=n), max_size=3))
    W = Subspace.span(n, vecs)
    for v in vecs:
        c = W.coordinates(v)
        assert W.basis_matrix().apply(c) == tuple(v)
