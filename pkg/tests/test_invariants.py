"""
Tests for determinantal invariants, discriminants and the printed-discriminant audit
"""
import numpy as np
import pytest
from sympy import QQ, Matrix

from orbitres.algebra.polyring import Point, evaluate, total_degree
from orbitres.catalog import case_ring
from orbitres.core.exceptions import InputError
from orbitres.equivariant.invariants import (
    audit_printed_discriminant,
    binary_discriminant,
    determinant,
    discriminant_cubic,
    discriminant_quadric,
    hyperdet_232,
    minors,
    minors_ideal,
    pencil_coefficients,
    pfaffian_4x4,
    quadric_apolarity,
)
from orbitres.services import CatalogService


class TestDeterminants:
    def test_two_by_two(self, abcd):
        a, b, c, d = abcd.gens
        assert determinant([[a, b], [c, d]]) == a * d - b * c

    def test_non_square(self, abcd):
        a, b, c, d = abcd.gens
        with pytest.raises(InputError):
            determinant([[a, b, c]])

    def test_minors_of_the_generic_matrix(self, abcd):
        # Arrange
        a, b, c, d = abcd.gens
        rows = [[a, b, c], [b, c, d]]

        # Act
        quadrics = minors_ideal(rows, 2)

        # Assert
        assert len(quadrics) == 3
        assert len(minors(rows, 1)) == 6
        with pytest.raises(InputError):
            minors(rows, 3)

    def test_dependent_minors_are_dropped(self, abcd):
        a, b, _, _ = abcd.gens
        assert len(minors_ideal([[a, b], [a, b], [b, a]], 2)) == 1

    def test_pencil(self, abcd):
        # Arrange
        a, b, _, _ = abcd.gens
        one, zero = abcd.one, abcd.zero

        # Act
        coeffs = pencil_coefficients([[one, zero], [zero, one]], [[a, zero], [zero, b]])

        # Assert
        assert coeffs == [one, a + b, a * b]


class TestDiscriminants:
    def test_quadric(self, xyz):
        x, y, z = xyz.gens
        assert binary_discriminant([x, y, z]) == y ** 2 - 4 * x * z
        assert discriminant_quadric([x, y, z]) == 4 * x * z - y ** 2

    def test_apolarity_polarizes_the_quadric_discriminant(self, xyz, abcd):
        # Arrange
        x, y, z = xyz.gens
        one, zero = xyz.one, xyz.zero

        # Act
        diagonal = quadric_apolarity([x, y, z], [x, y, z])

        # Assert
        assert diagonal == discriminant_quadric([x, y, z])
        assert quadric_apolarity([one, zero, zero], [one, zero, zero]) == 0
        assert quadric_apolarity([one, zero, zero], [zero, zero, one]) == 2
        assert quadric_apolarity([zero, one, zero], [zero, one, zero]) == -1
        with pytest.raises(InputError):
            quadric_apolarity(list(abcd.gens), [x, y, z])

    def test_cubic_values(self, xyz):
        one, zero = xyz.one, xyz.zero
        assert discriminant_cubic([one, zero, -one, zero]) == 4
        assert discriminant_cubic([zero, one, zero, zero]) == 0

    def test_cubic_needs_four_coefficients(self, xyz):
        with pytest.raises(InputError):
            discriminant_cubic(list(xyz.gens))

    def test_printed_formula_is_audited(self):
        audit = audit_printed_discriminant()
        assert not audit.matches
        assert audit.summary().startswith("printed discriminant differs")


class TestHyperdeterminants:
    def test_degenerate_tensor(self, xyz):
        one, zero = xyz.one, xyz.zero
        assert hyperdet_232(lambda i, j, k: one if (i, j, k) == (0, 0, 0) else zero) == 0

    def test_multiplication_tensor(self, xyz):
        one, zero = xyz.one, xyz.zero
        assert hyperdet_232(lambda i, j, k: one if j == i + k else zero) != 0

    def test_pfaffian(self, xyz):
        x, y, _ = xyz.gens
        entries = {(0, 1): x, (2, 3): y}
        assert pfaffian_4x4(lambda a, b: entries.get((a, b), xyz.zero)) == x * y


def _minor(g, rows, cols) -> int:
    return int(Matrix(g).extract(list(rows), list(cols)).det())


def _act(ring, mats, pt):
    """Induced action of one matrix per tensor factor on a point"""
    coords = []
    for v in ring.variables:
        total = QQ.zero
        for w in ring.variables:
            c = 1
            for slot, a, b in zip(ring.slots, v.slots, w.slots):
                c *= _minor(mats[slot.space], a, b)
                if not c:
                    break
            if c:
                total += QQ(c) * pt.coordinates[w.index]
        coords.append(total)
    return Point(ring, tuple(coords))


def _random_matrix(rng, n):
    while True:
        g = [[int(a) for a in row] for row in rng.integers(-2, 3, size=(n, n))]
        if Matrix(g).det():
            return g


def _random_point(ring, rng):
    return Point(ring, tuple(QQ(int(a)) for a in rng.integers(-3, 4, size=ring.ngens)))


class TestEquivariance:
    @pytest.mark.parametrize("case_id,label", [("E6a4", "disc"), ("E6a2", "O3-quartic")])
    def test_invariants_scale_by_a_character(self, case_id, label):
        # Arrange
        svc = CatalogService(case_id)
        ring = svc.ring
        f = svc.generators(label)[0]
        rng = np.random.default_rng(20170605)
        mats = {space: _random_matrix(rng, n) for space, n in ring.space_dims.items()}
        degree = total_degree(f)
        character = QQ.one
        for space, g in mats.items():
            per_variable = sum(len(c) for s, c in zip(ring.slots, ring.variables[0].slots) if s.space == space)
            character *= QQ(int(Matrix(g).det())) ** (degree * per_variable // ring.space_dims[space])

        # Act
        pairs = []
        for _ in range(2):
            pt = _random_point(ring, rng)
            pairs.append((evaluate(f, _act(ring, mats, pt)), evaluate(f, pt)))

        # Assert
        for moved, value in pairs:
            assert moved == character * value

    def test_hyperdeterminant_on_a_2x3x2_block(self):
        # Arrange
        ring = case_ring("E6a4")
        f = hyperdet_232(lambda i, j, k: ring.gens[ring.variable_for_slots(((i,), (j,), (k,)))])
        rng = np.random.default_rng(7)
        block = _random_matrix(rng, 2)
        mats = {
            "E": _random_matrix(rng, 2),
            "F": _random_matrix(rng, 3),
            "H": [block[0] + [0], block[1] + [0], [0, 0, 1]],
        }
        character = (QQ(int(Matrix(mats["E"]).det())) ** 3 * QQ(int(Matrix(mats["F"]).det())) ** 2
                     * QQ(int(Matrix(block).det())) ** 3)
        pt = _random_point(ring, rng)

        # Act
        moved = evaluate(f, _act(ring, mats, pt))

        # Assert
        assert total_degree(f) == 6
        assert moved == character * evaluate(f, pt)

    def test_symplectic_quartic_is_torus_invariant(self):
        # Arrange
        svc = CatalogService("F4a1")
        ring = svc.ring
        f = svc.generators("quartic")[0]
        rng = np.random.default_rng(1234)
        torus = [QQ(int(a), int(b)) for a, b in zip(rng.integers(1, 6, size=ring.weight_length),
                                                     rng.integers(1, 6, size=ring.weight_length))]
        pt = _random_point(ring, rng)
        scaled = []
        for v, c in zip(ring.variables, pt.coordinates):
            for t, w in zip(torus, ring.weights[v.index]):
                c = c * t ** w
            scaled.append(c)

        # Act
        moved = evaluate(f, Point(ring, tuple(scaled)))

        # Assert
        assert ring.polynomial_weight(f) == ring.zero_weight()
        assert moved == evaluate(f, pt)
