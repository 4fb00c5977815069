import pytest

from scripts.corpus import random_nilpotent, shift_blocks
from scripts.exact_linalg import Mat, rank, span
from scripts.nilpotent_structure import (
    YoungDiagram,
    diagram_shape,
    jordan_block_matrix,
    kernel_filtration,
    lift_diagram,
    nilpotency_index,
    young_basis,
    young_checks,
)
from scripts.utils import NotNilpotentError
from tests.conftest import mat

SHIFT = mat([[0, 1], [0, 0]])


class TestNilpotencyIndex:
    def test_zero(self):
        assert nilpotency_index(Mat.zeros(3, 3)) == 1

    def test_shift(self):
        assert nilpotency_index(SHIFT) == 2

    def test_shift_three_plus_zero(self, shift_three_plus_zero):
        assert nilpotency_index(shift_three_plus_zero) == 3

    def test_empty(self):
        assert nilpotency_index(Mat.zeros(0, 0)) == 1

    def test_rejects_non_nilpotent(self, jordan_block):
        with pytest.raises(NotNilpotentError):
            nilpotency_index(jordan_block)


class TestKernelFiltration:
    def test_shift_three_plus_zero(self, shift_three_plus_zero):
        assert kernel_filtration(shift_three_plus_zero) == ([2, 3, 4], [2, 1, 1])

    def test_zero(self):
        assert kernel_filtration(Mat.zeros(3, 3)) == ([3], [3])

    def test_shift(self):
        assert kernel_filtration(SHIFT) == ([1, 2], [1, 1])

    def test_empty(self):
        assert kernel_filtration(Mat.zeros(0, 0)) == ([], [])


class TestYoungBasis:
    def test_single_chain(self):
        diagram = young_basis(SHIFT)
        assert len(diagram.chains) == 1
        chain = diagram.chains[0]
        assert chain.generator == (0, 1)
        assert chain.vectors == ((0, 1), (1, 0))
        assert diagram.row_counts == (1, 1)

    def test_zero_matrix(self):
        diagram = young_basis(Mat.zeros(2, 2))
        assert [c.vectors for c in diagram.chains] == [((1, 0),), ((0, 1),)]
        assert diagram.row_counts == (2,)

    def test_shift_three_plus_zero(self, shift_three_plus_zero):
        diagram = young_basis(shift_three_plus_zero)
        assert diagram_shape(diagram) == (3, 1)
        assert diagram.chains[0].generator == (0, 0, 1, 0)
        assert diagram.chains[1].generator == (0, 0, 0, 1)
        assert young_checks(shift_three_plus_zero, diagram).passed

    def test_empty(self):
        assert young_basis(Mat.zeros(0, 0)) == YoungDiagram((), (), 0)

    def test_rejects_non_nilpotent(self, rotation):
        with pytest.raises(NotNilpotentError):
            young_basis(rotation)

    def test_random_nilpotents(self, rng):
        for _ in range(100):
            n, shape = random_nilpotent(rng, rng.randint(1, 6))
            diagram = young_basis(n)
            assert list(diagram_shape(diagram)) == shape
            assert list(diagram.row_counts) == kernel_filtration(n)[1]
            basis, _ = jordan_block_matrix(diagram)
            assert rank(basis) == n.rows
            assert young_checks(n, diagram).passed


class TestJordanBlockMatrix:
    def test_single_chain(self):
        basis, j = jordan_block_matrix(young_basis(SHIFT))
        assert j == SHIFT
        assert basis.inverse() @ SHIFT @ basis == j

    def test_zero(self):
        _, j = jordan_block_matrix(young_basis(Mat.zeros(2, 2)))
        assert j.is_zero()

    def test_lengths_three_and_one(self, shift_three_plus_zero):
        basis, j = jordan_block_matrix(young_basis(shift_three_plus_zero))
        assert j == shift_blocks([3, 1])
        assert basis.inverse() @ shift_three_plus_zero @ basis == j

    def test_power_ranks(self, rng):
        n, shape = random_nilpotent(rng, 6)
        _, j = jordan_block_matrix(young_basis(n))
        for k in range(1, 7):
            assert rank(j.power(k)) == sum(max(0, length - k) for length in shape)


class TestLiftDiagram:
    def test_lift_into_subspace(self):
        w = span([(0, 1, 0), (0, 0, 1)], 3)
        lifted = lift_diagram(young_basis(SHIFT), w)
        assert lifted.ambient_dim == 3
        assert lifted.chains[0].vectors == ((0, 0, 1), (0, 1, 0))
        assert lifted.row_counts == (1, 1)
