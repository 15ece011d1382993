"""
Tests for free complexes, Betti tables, resolutions and mapping cones
"""
import pytest

from orbitres.algebra.complexes import (
    BettiTable,
    FreeComplex,
    dualize,
    homology_presentation,
    is_complex,
    lift_chain_map,
    mapping_cone,
    minimize_complex,
    resolve,
    resolve_ideal,
    resolve_interactive,
)
from orbitres.algebra.groebner import ideal_groebner_basis, syzygies
from orbitres.algebra.matrices import GradedFreeModule, PolyMatrix
from orbitres.core.exceptions import InputError


TWISTED_CUBIC_RENDER = (
    "       0 1 2\n"
    "total: 1 3 2\n"
    "    0: 1 . .\n"
    "    1: . 3 2\n"
)


def twisted_cubic(ring):
    a, b, c, d = ring.gens
    return [a * c - b ** 2, a * d - b * c, b * d - c ** 2]


class TestBettiTable:
    def test_from_rows_and_render(self):
        # Arrange
        table = BettiTable.from_rows({0: [1], 1: [0, 3, 2]})

        # Act
        text = table.render()

        # Assert
        assert table.totals() == [1, 3, 2]
        assert text == TWISTED_CUBIC_RENDER

    def test_triples(self):
        table = BettiTable.from_rows({0: [1], 1: [0, 3, 2]})
        assert table.triples() == "0 0 1\n1 2 3\n2 3 2\n"

    def test_diff_is_empty_on_equal_tables(self):
        a = BettiTable.from_rows({0: [1], 1: [0, 3, 2]})
        b = BettiTable.from_rows({0: [1, 0, 0], 1: [0, 3, 2]})
        assert a == b
        assert a.diff(b) == ""

    def test_diff_marks_changed_rows(self):
        # Arrange
        expected = BettiTable.from_rows({0: [1], 1: [0, 3, 2]})
        computed = BettiTable.from_rows({0: [1], 1: [0, 3, 3]})

        # Act
        diff = computed.diff(expected)

        # Assert
        assert diff.startswith("--- expected")
        assert "-    1: . 3 2" in diff
        assert "+    1: . 3 3" in diff

    def test_shifted(self):
        table = BettiTable.from_rows({1: [0, 3, 2]}).shifted(1)
        assert table.rows() == {2: [0, 3, 2]}


class TestResolutions:
    def test_koszul_complex(self, xyz):
        # Act
        C = resolve_ideal(list(xyz.gens))

        # Assert
        assert C.ranks() == [1, 3, 3, 1]
        assert is_complex(C) == (True, None)
        assert BettiTable.from_complex(C).rows() == {0: [1, 3, 3, 1]}
        assert C.is_minimal()

    def test_twisted_cubic(self, abcd):
        # Act
        C = resolve_ideal(twisted_cubic(abcd))

        # Assert
        assert BettiTable.from_complex(C) == BettiTable.from_rows({0: [1], 1: [0, 3, 2]})

    def test_bounds_stop_the_resolution(self, xyz):
        C = resolve_ideal(list(xyz.gens), bounds=[2])
        assert C.ranks() == [1, 3, 3]

    def test_length_limit(self, xyz):
        C = resolve_ideal(list(xyz.gens), length_limit=1)
        assert C.ranks() == [1, 3]

    def test_zero_ideal(self, xyz):
        with pytest.raises(InputError):
            resolve_ideal([xyz.zero])

    def test_interactive_head_recovers_the_ideal(self, abcd):
        # Arrange
        gens = twisted_cubic(abcd)
        d2 = syzygies(PolyMatrix.from_rows(abcd, [gens]))

        # Act
        C = resolve_interactive(d2, [], [0])

        # Assert
        assert C.ranks() == [1, 3, 2]
        gb = ideal_groebner_basis(gens)
        assert all(gb.contains_column({0: p}) for p in C.d(1).row(0).values())

    def test_modules_must_match(self, xyz):
        x, y, z = xyz.gens
        d1 = PolyMatrix.from_rows(xyz, [[x, y]])
        d2 = PolyMatrix.from_rows(xyz, [[z], [x]], target_twists=[0, 0])
        with pytest.raises(InputError):
            FreeComplex([d1, d2])


class TestDuality:
    def test_koszul_complex_is_self_dual(self, xyz):
        # Arrange
        C = resolve_ideal(list(xyz.gens))

        # Act
        D = dualize(C)

        # Assert
        assert is_complex(D) == (True, None)
        assert BettiTable.from_complex(D) == BettiTable.from_complex(C)

    def test_dual_of_twisted_cubic(self, abcd):
        C = resolve_ideal(twisted_cubic(abcd))
        D = dualize(C)
        assert D.ranks() == [2, 3, 1]
        assert BettiTable.from_complex(D).rows() == {0: [2, 3, 0], 1: [0, 0, 1]}


class TestMinimization:
    def test_trivial_summand_cancels(self, xyz):
        # Arrange
        x, y, _ = xyz.gens
        zero, one = xyz.zero, xyz.one
        d1 = PolyMatrix.from_rows(xyz, [[x, y, zero]], target_twists=[0], source_twists=[1, 1, 2])
        d2 = PolyMatrix.from_rows(xyz, [[-y, zero], [x, zero], [zero, one]],
                                  target_twists=[1, 1, 2], source_twists=[2, 2])
        C = FreeComplex([d1, d2])

        # Act
        M = minimize_complex(C)

        # Assert
        assert not C.is_minimal()
        assert M.ranks() == [1, 2, 1]
        assert M.is_minimal()
        assert is_complex(M) == (True, None)
        assert BettiTable.from_complex(M).rows() == {0: [1, 2, 1]}


class TestCones:
    def test_mapping_cone_of_a_surjection(self, xyz):
        # Arrange
        x, y, _ = xyz.gens
        F = resolve_ideal([x])
        Fp = resolve_ideal([x, y])
        pi0 = PolyMatrix.identity(F.module(0))

        # Act
        m = lift_chain_map(F, Fp, pi0)
        C = mapping_cone(m)

        # Assert
        assert m.failing_square() is None
        assert C.ranks() == [1, 3, 2]

    def test_homology_of_an_exact_spot_vanishes(self, xyz):
        # Arrange
        C = resolve_ideal(list(xyz.gens))

        # Act
        H = homology_presentation(C.d(1), C.d(2), kernel_limit=2)

        # Assert
        assert H.nrows == 0

    def test_resolve_presentation(self, xyz):
        # Arrange
        x, y, z = xyz.gens
        target = GradedFreeModule(xyz, (0, 0))
        d = PolyMatrix(GradedFreeModule(xyz, (1, 1)), target, {(0, 0): x, (1, 1): y})

        # Act
        C = resolve(d)

        # Assert
        assert C.ranks() == [2, 2]
