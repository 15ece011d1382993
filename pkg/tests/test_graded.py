"""
Tests for the weight-graded linear algebra engine
"""
import pytest

from orbitres.algebra.graded import (
    hilbert_function,
    homogeneous_kernel,
    infer_weights,
    solve_factorization,
)
from orbitres.algebra.matrices import PolyMatrix
from orbitres.algebra.polyring import PolynomialRing, VariableSpec
from orbitres.core.exceptions import FactorizationError


@pytest.fixture
def weighted():
    """QQ[x, y] with torus weights (1, 0) and (0, 1)"""
    return PolynomialRing([VariableSpec("x", 0, weight=(1, 0)), VariableSpec("y", 1, weight=(0, 1))],
                          name="weighted")


class TestWeights:
    def test_weights_propagate_over_entries(self, weighted):
        # Arrange
        x, y = weighted.gens
        d = PolyMatrix.from_rows(weighted, [[x, y]])

        # Act
        src, tgt = infer_weights(d)

        # Assert
        assert src[0] == (0, 0)
        assert tgt[0] == (-1, 0)
        assert src[1] == (-1, 1)

    def test_inhomogeneous_entry(self, weighted):
        x, y = weighted.gens
        assert infer_weights(PolyMatrix.from_rows(weighted, [[x + y]])) is None

    def test_plain_ring_has_no_weights(self, xyz):
        assert infer_weights(PolyMatrix.from_rows(xyz, [list(xyz.gens)])) is None


class TestKernels:
    def test_koszul_pieces(self, xyz):
        # Arrange
        d = PolyMatrix.from_rows(xyz, [list(xyz.gens)])

        # Act
        quadratic = homogeneous_kernel(d, 2)
        cubic = homogeneous_kernel(d, 3)

        # Assert
        assert len(quadratic) == 3
        assert len(cubic) == 8

    def test_weight_block(self, weighted):
        x, y = weighted.gens
        d = PolyMatrix.from_rows(weighted, [[x, y]])
        assert len(homogeneous_kernel(d, 2, (0, 1))) == 1
        assert homogeneous_kernel(d, 2, (1, 0)) == []


class TestFactorization:
    def test_solution_multiplies_back(self, xyz):
        # Arrange
        x, y, z = xyz.gens
        M = PolyMatrix.from_rows(xyz, [[x, y]])
        v = {0: x * z + y ** 2}

        # Act
        col = solve_factorization(M, v)

        # Assert
        assert sum(M.column(c)[0] * p for c, p in col.items()) == v[0]

    def test_outside_the_image(self, xyz):
        x, y, z = xyz.gens
        M = PolyMatrix.from_rows(xyz, [[x, y]])
        with pytest.raises(FactorizationError):
            solve_factorization(M, {0: z ** 2})

    def test_zero_column(self, xyz):
        x, y, _ = xyz.gens
        assert solve_factorization(PolyMatrix.from_rows(xyz, [[x, y]]), {}) == {}


class TestHilbertFunction:
    def test_twisted_cubic(self, abcd):
        a, b, c, d = abcd.gens
        M = PolyMatrix.from_rows(abcd, [[a * c - b ** 2, a * d - b * c, b * d - c ** 2]])
        assert [hilbert_function(M, k) for k in range(4)] == [1, 4, 7, 10]

    def test_residue_field(self, xyz):
        M = PolyMatrix.from_rows(xyz, [list(xyz.gens)])
        assert [hilbert_function(M, k) for k in range(3)] == [1, 0, 0]
