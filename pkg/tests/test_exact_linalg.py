from fractions import Fraction

import pytest

from scripts.exact_linalg import (
    Mat,
    Subspace,
    char_poly,
    conjugate,
    eval_poly_at,
    extend_to_basis,
    image_basis,
    intersect,
    is_direct_sum,
    kernel_basis,
    rank,
    restrict,
    rref,
    solve,
    span,
    subspace_sum,
)
from scripts.corpus import random_unimodular
from scripts.polyarith import Poly
from scripts.utils import NotInvariantError, ShapeError
from tests.conftest import mat

LAM = Poly.x()


def column(*entries):
    return Mat.from_columns([entries], len(entries))


class TestMat:
    def test_ragged_rows(self):
        with pytest.raises(ShapeError):
            Mat.from_rows([[1, 2], [3]])

    def test_entry_count_checked(self):
        with pytest.raises(ShapeError):
            Mat(2, 2, (1, 2, 3))

    def test_product_shape_mismatch(self):
        with pytest.raises(ShapeError):
            mat([[1, 2]]) @ mat([[1, 2]])

    def test_inverse(self):
        a = mat([[2, 1], [1, 1]])
        assert a.inverse() == mat([[1, -1], [-1, 2]])
        assert a @ a.inverse() == Mat.identity(2)

    def test_singular_inverse(self):
        with pytest.raises(ShapeError):
            mat([[1, 2], [2, 4]]).inverse()

    def test_block_diagonal(self):
        b = Mat.block_diagonal([mat([[1]]), mat([[2, 3], [4, 5]])])
        assert b == mat([[1, 0, 0], [0, 2, 3], [0, 4, 5]])

    def test_entries_are_fractions(self):
        assert isinstance(mat([[1]])[0, 0], Fraction)


class TestRref:
    def test_identity(self):
        assert rref(Mat.identity(3)) == (Mat.identity(3), [0, 1, 2], 3)

    def test_rank_one(self):
        assert rref(mat([[1, 2], [2, 4]])) == (mat([[1, 2], [0, 0]]), [0], 1)

    def test_zero(self):
        assert rref(Mat.zeros(2, 3)) == (Mat.zeros(2, 3), [], 0)


class TestKernelImage:
    def test_kernel_of_shift(self):
        assert kernel_basis(mat([[0, 1], [0, 0]])).basis == column(1, 0)

    def test_kernel_of_identity(self):
        assert kernel_basis(Mat.identity(3)).dim == 0

    def test_kernel_of_ones(self):
        assert kernel_basis(mat([[1, 1], [1, 1]])).basis == column(1, -1)

    def test_image_of_shift(self):
        assert image_basis(mat([[0, 1], [0, 0]])).basis == column(1, 0)

    def test_image_of_zero(self):
        assert image_basis(Mat.zeros(2, 2)).dim == 0

    def test_image_of_ones(self):
        assert image_basis(mat([[1, 1], [1, 1]])).basis == column(1, 1)

    def test_rank_nullity(self):
        a = mat([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
        assert kernel_basis(a).dim + image_basis(a).dim == 3
        assert rank(a) == 2


class TestSolve:
    def test_identity(self):
        b = column(3, Fraction(1, 2))
        assert solve(Mat.identity(2), b) == b

    def test_preimage_under_shift(self):
        assert solve(mat([[0, 1], [0, 0]]), column(1, 0)) == column(0, 1)

    def test_no_solution(self):
        assert solve(mat([[0, 1], [0, 0]]), column(0, 1)) is None

    def test_row_mismatch(self):
        with pytest.raises(ShapeError):
            solve(Mat.identity(2), column(1, 2, 3))


class TestCharPoly:
    @pytest.mark.parametrize("rows, expected", [
        ([[0, -1], [1, 0]], LAM ** 2 + 1),
        ([[0, 0], [0, 0]], LAM ** 2),
        ([[1, 1], [0, 1]], LAM ** 2 - LAM * 2 + 1),
    ])
    def test_examples(self, rows, expected):
        assert char_poly(mat(rows)) == expected

    def test_three_by_three(self):
        a = mat([[2, 1, 0], [0, 2, 0], [1, 0, 3]])
        assert char_poly(a) == (LAM - 2) ** 2 * (LAM - 3)

    def test_non_square(self):
        with pytest.raises(ShapeError):
            char_poly(Mat.zeros(2, 3))


class TestEvalPoly:
    def test_constant_one(self, jordan_block):
        assert eval_poly_at(jordan_block, Poly.constant(1)) == Mat.identity(2)

    def test_identity_polynomial(self, jordan_block):
        assert eval_poly_at(jordan_block, LAM) == jordan_block

    def test_cayley_hamilton(self, rotation):
        assert eval_poly_at(rotation, LAM ** 2 + 1).is_zero()


class TestRestrict:
    def test_eigenvector(self, jordan_block):
        assert restrict(jordan_block, span([(1, 0)], 2)) == mat([[1]])

    def test_not_invariant(self, jordan_block):
        with pytest.raises(NotInvariantError):
            restrict(jordan_block, span([(0, 1)], 2))

    def test_diagonal(self):
        assert restrict(Mat.diagonal([2, 3]), span([(0, 1)], 2)) == mat([[3]])

    def test_zero_dimensional(self, jordan_block):
        assert restrict(jordan_block, span([], 2)) == Mat.zeros(0, 0)


class TestSubspaces:
    def test_canonical_basis_is_independent_of_spanning_set(self):
        assert span([(1, 1, 0), (0, 1, 0)], 3) == span([(2, 0, 0), (0, 5, 0), (1, 1, 0)], 3)

    def test_intersection_and_sum(self):
        u = span([(1, 0, 0), (0, 1, 0)], 3)
        w = span([(0, 1, 0), (0, 0, 1)], 3)
        assert intersect(u, w) == span([(0, 1, 0)], 3)
        assert subspace_sum(u, w).dim == 3

    def test_direct_sum(self):
        u = span([(1, 0)], 2)
        w = span([(1, 1)], 2)
        assert is_direct_sum([u, w], 2)
        assert not is_direct_sum([u, u], 2)

    def test_extend_to_basis(self):
        added = extend_to_basis([(1, 1, 0)], Mat.identity(3).columns(), 3)
        assert len(added) == 2
        assert added[0] == (1, 0, 0)

    def test_conjugate(self, jordan_block):
        p = mat([[0, 1], [1, 0]])
        assert conjugate(jordan_block, p) == mat([[1, 0], [1, 1]])

    def test_subspace_dim(self):
        assert Subspace(3, Mat.zeros(3, 0)).dim == 0


def random_rational_matrix(rng, rows, cols):
    return Mat.from_rows([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)] for _ in range(rows)])


def random_low_rank(rng, rows, cols):
    inner = rng.randint(1, min(rows, cols))
    return random_rational_matrix(rng, rows, inner) @ random_rational_matrix(rng, inner, cols)


class TestRandomizedLinearAlgebra:
    def test_kernel_vectors_are_annihilated(self, rng):
        for _ in range(40):
            m = random_low_rank(rng, rng.randint(1, 6), rng.randint(1, 6))
            ker = kernel_basis(m)
            assert (m @ ker.basis).is_zero()
            assert ker.dim + rank(m) == m.cols

    def test_solutions_satisfy_the_system(self, rng):
        for _ in range(40):
            m = random_low_rank(rng, rng.randint(1, 5), rng.randint(1, 5))
            reachable = m @ random_rational_matrix(rng, m.cols, 2)
            x = solve(m, reachable)
            assert x is not None
            assert m @ x == reachable
            rhs = random_rational_matrix(rng, m.rows, 1)
            y = solve(m, rhs)
            if y is None:
                assert rank(m.hstack(rhs)) > rank(m)
            else:
                assert m @ y == rhs

    def test_restriction_to_invariant_subspaces(self, rng):
        for _ in range(30):
            dim = rng.randint(2, 6)
            k = rng.randint(1, dim - 1)
            upper = random_rational_matrix(rng, dim, dim).to_rows()
            for i in range(k, dim):
                for j in range(k):
                    upper[i][j] = Fraction(0)
            t = random_unimodular(rng, dim)
            a = t @ Mat.from_rows(upper) @ t.inverse()
            w = span(t.submatrix(0, dim, 0, k).columns(), dim)
            r = restrict(a, w)
            assert (r.rows, r.cols) == (k, k)
            assert a @ w.basis == w.basis @ r
