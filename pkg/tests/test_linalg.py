from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from exthh.linalg import (
    ComplexError,
    SparseMatrix,
    cohomology_at,
    image_membership,
    kernel_basis,
    rank,
)

small_ints = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_dim=6):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    rows = draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
    return rows


def test_identity_membership():
    b = {0: Fraction(3), 2: Fraction(-1)}
    assert image_membership(SparseMatrix.identity(3), b) == b


def test_zero_matrix_rejects_nonzero_target():
    assert image_membership(SparseMatrix(2, 2), {1: Fraction(1)}) is None


def test_one_by_one_solution_is_exact():
    assert image_membership(SparseMatrix.from_dense([[2]]), {0: Fraction(1)}) == {0: Fraction(1, 2)}


def test_cohomology_of_zero_maps():
    assert cohomology_at(SparseMatrix(3, 0), SparseMatrix(0, 3)).dimension == 3


def test_cohomology_identity_then_zero():
    assert cohomology_at(SparseMatrix.identity(2), SparseMatrix(0, 2)).dimension == 0


def test_koszul_complex_of_dual_numbers_degree_zero():
    # k -> k[x]/x^2 -> ..., d(1) = 0 in the weight-0 slice
    rep = cohomology_at(SparseMatrix(1, 0), SparseMatrix(0, 1))
    assert rep.dimension == 1


def test_nonzero_composite_is_rejected():
    with pytest.raises(ComplexError):
        cohomology_at(SparseMatrix.identity(2), SparseMatrix.identity(2))


@given(matrices())
def test_rank_matches_sympy(rows):
    m = SparseMatrix.from_dense(rows)
    assert rank(m) == sympy.Matrix(rows).rank()


@given(matrices())
def test_kernel_is_kernel_of_full_dimension(rows):
    m = SparseMatrix.from_dense(rows)
    ker = kernel_basis(m)
    assert len(ker) == m.cols - rank(m)
    for v in ker:
        assert not m.apply(v)


@given(matrices(), st.lists(small_ints, min_size=6, max_size=6))
def test_membership_of_images(rows, xs):
    m = SparseMatrix.from_dense(rows)
    x = {i: Fraction(v) for i, v in enumerate(xs[: m.cols]) if v}
    b = m.apply(x)
    sol = image_membership(m, b)
    assert sol is not None and m.apply(sol) == b


def test_membership_detects_non_image():
    m = SparseMatrix.from_dense([[1, 1], [1, 1]])
    assert image_membership(m, {0: Fraction(1)}) is None


def test_transpose_and_product():
    a = SparseMatrix.from_dense([[1, 2], [0, 1]])
    assert (a @ a).to_dense() == [[1, 4], [0, 1]]
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
