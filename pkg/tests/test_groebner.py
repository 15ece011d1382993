"""
Tests for Groebner bases, syzygies, ranks and implicitization
"""
import pytest

from orbitres.algebra.groebner import (
    eliminate_unit,
    generic_rank,
    ideal_groebner_basis,
    ideal_hilbert_function,
    kernel_of_parametrization,
    minimal_ideal_generators,
    minimize_presentation,
    rank_at_point,
    sample_points,
    syzygies,
)
from orbitres.algebra.matrices import PolyMatrix
from orbitres.algebra.polyring import total_degree
from orbitres.core.config import settings
from orbitres.core.exceptions import InputError, SamplingDiagnostic

from conftest import plain_ring


def twisted_cubic(ring):
    a, b, c, d = ring.gens
    return [a * c - b ** 2, a * d - b * c, b * d - c ** 2]


class TestGroebnerBasis:
    def test_basis_is_closed_under_s_pairs(self, abcd):
        # Arrange
        gens = twisted_cubic(abcd)

        # Act
        gb = ideal_groebner_basis(gens)

        # Assert
        assert gb.is_groebner()
        assert all(gb.contains_column({0: g}) for g in gens)

    def test_membership(self, xyz):
        # Arrange
        x, y, z = xyz.gens
        gb = ideal_groebner_basis([x * y, z ** 2])

        # Act / Assert
        assert gb.contains_column({0: x ** 2 * y + 3 * z ** 3})
        assert not gb.contains_column({0: x ** 2 + z ** 2})

    def test_inhomogeneous_input_is_rejected(self, xyz):
        x, y, _ = xyz.gens
        with pytest.raises(InputError):
            ideal_groebner_basis([x ** 2 + y])


class TestSyzygies:
    def test_koszul_syzygies(self, xyz):
        # Arrange
        d = PolyMatrix.from_rows(xyz, [list(xyz.gens)])

        # Act
        s = syzygies(d)

        # Assert
        assert s.ncols == 3
        assert sorted(s.source.twists) == [2, 2, 2]
        assert (d @ s).is_zero()

    def test_twisted_cubic_syzygies_are_linear(self, abcd):
        # Arrange
        d = PolyMatrix.from_rows(abcd, [twisted_cubic(abcd)])

        # Act
        s = syzygies(d)

        # Assert
        assert sorted(s.source.twists) == [3, 3]
        assert (d @ s).is_zero()

    def test_degree_limit_truncates(self, xyz):
        # Arrange
        d = PolyMatrix.from_rows(xyz, [list(xyz.gens)])

        # Act
        low = syzygies(d, 1)
        high = syzygies(d, 2)

        # Assert
        assert low.ncols == 0
        assert high.ncols == 3


class TestPresentations:
    def test_unit_elimination(self, xyz):
        # Arrange
        x, y, z = xyz.gens
        one = xyz.one
        d = PolyMatrix.from_entries(xyz, 2, 2, {(0, 0): one, (0, 1): x, (1, 1): y},
                                    target_twists=[0, 0], source_twists=[0, 1])

        # Act
        e = eliminate_unit(d, 0, 0)

        # Assert
        assert e.shape == (1, 1)
        assert e.entry(0, 0) == y

    def test_minimize_drops_constant_entries(self, xyz):
        # Arrange
        x, y, z = xyz.gens
        d = PolyMatrix.from_entries(xyz, 2, 3, {(0, 0): xyz.one, (1, 1): x, (1, 2): y, (0, 1): z ** 2},
                                    target_twists=[0, 1], source_twists=[0, 2, 2])

        # Act
        m = minimize_presentation(d)

        # Assert
        assert not m.has_unit_entries()
        assert m.nrows == 1

    def test_minimal_generators_remove_redundancy(self, xyz):
        x, y, z = xyz.gens

        # Act
        gens = minimal_ideal_generators([x * y, x * y * z, y ** 2, x * y + y ** 2])

        # Assert
        assert len(gens) == 2


class TestRanks:
    def test_rank_at_point(self, abcd):
        # Arrange
        a, b, c, d = abcd.gens
        m = PolyMatrix.from_rows(abcd, [[a, b, c], [b, c, d]])

        # Act / Assert
        assert rank_at_point(m, abcd.point({"a": 1})) == 1
        assert rank_at_point(m, abcd.point({"a": 1, "d": 1})) == 2
        assert rank_at_point(m, abcd.point({})) == 0

    def test_generic_rank(self, abcd):
        a, b, c, d = abcd.gens
        m = PolyMatrix.from_rows(abcd, [[a, b, c], [b, c, d]])
        assert generic_rank(m) == 2

    def test_disagreeing_samples_raise(self, abcd):
        # Arrange
        a, b, c, d = abcd.gens
        m = PolyMatrix.from_rows(abcd, [[a, b, c], [b, c, d]])
        points = [abcd.point({"a": 1}), abcd.point({"a": 1, "d": 1})]

        # Act / Assert
        with pytest.raises(SamplingDiagnostic, match="disagree"):
            generic_rank(m, points)

    def test_lenient_sampling_keeps_the_largest_rank(self, abcd, monkeypatch):
        # Arrange
        a, b, c, d = abcd.gens
        m = PolyMatrix.from_rows(abcd, [[a, b, c], [b, c, d]])
        points = [abcd.point({"a": 1}), abcd.point({"a": 1, "d": 1})]
        monkeypatch.setattr(settings, "STRICT_SAMPLING", False)

        # Act
        rank = generic_rank(m, points)

        # Assert
        assert rank == 2

    def test_sample_points_are_reproducible(self, abcd):
        assert sample_points(abcd, 3, seed=5) == sample_points(abcd, 3, seed=5)

    def test_point_from_other_ring(self, abcd, xyz):
        m = PolyMatrix.from_rows(abcd, [list(abcd.gens)])
        with pytest.raises(InputError):
            rank_at_point(m, xyz.point({}))


class TestHilbertAndImplicitization:
    def test_hilbert_function_of_twisted_cubic(self, abcd):
        gens = twisted_cubic(abcd)
        assert [ideal_hilbert_function(gens, k) for k in range(4)] == [1, 4, 7, 10]

    def test_kernel_of_parametrization(self):
        # Arrange
        st = plain_ring(["s", "t"])
        s, t = st.gens
        images = [s ** 3, s ** 2 * t, s * t ** 2, t ** 3]

        # Act
        relations = kernel_of_parametrization(images, 3)

        # Assert
        assert len(relations) == 3
        assert all(total_degree(f) == 2 for f in relations)
