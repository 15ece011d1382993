"""
Tests for recipe execution: ideals, complexes, normalizations and the cone procedure
"""
import pytest

from orbitres.algebra.complexes import cone_procedure, is_complex
from orbitres.algebra.polyring import total_degree
from orbitres.catalog import BettiKind, case_ring
from orbitres.catalog.loader import read_case_file
from orbitres.catalog.rings import build_ring
from orbitres.core.exceptions import ExtendedScopeError, InputError, NotRegisteredError, VerificationMismatch
from orbitres.equivariant import registry
from orbitres.equivariant.registry import builder_for
from orbitres.services import CatalogService, flattening_minors


class TestIdeals:
    def test_dense_orbit_has_the_zero_ideal(self, g2a2):
        assert g2a2.orbit_ideal(3) == []

    def test_origin_is_cut_out_by_the_variables(self, g2a2):
        assert len(g2a2.orbit_ideal(0)) == 4

    def test_twisted_cubic_quadrics(self, g2a2):
        gens = g2a2.orbit_ideal(1)
        assert len(gens) == 3
        assert all(total_degree(p) == 2 for p in gens)

    def test_flattening_minors(self):
        # Arrange
        ring = case_ring("F4a3")

        # Act
        gens = flattening_minors(ring, [0, 1], 2)

        # Assert
        assert len(gens) == 3
        assert all(total_degree(p) == 2 for p in gens)

    def test_flattening_needs_every_slot(self):
        with pytest.raises(InputError):
            flattening_minors(case_ring("F4a3"), [0], 2)

    def test_minors_recipe(self):
        svc = CatalogService("F4a3")
        assert len(svc.orbit_ideal(1)) == 3

    def test_extended_recipe_needs_extended_mode(self):
        svc = CatalogService("E6a2", extended=False)
        with pytest.raises(ExtendedScopeError):
            svc.orbit_ideal(1)

    def test_unknown_orbit(self, g2a2):
        with pytest.raises(KeyError):
            g2a2.recipe(9)


class TestRegistry:
    def test_labels(self, g2a2):
        assert {"O1-d2", "O2-d1", "O2-quartic"} <= set(g2a2.labels())

    def test_unknown_label(self, g2a2):
        with pytest.raises(NotRegisteredError):
            g2a2.differential("O7-d9")

    def test_export_header(self, g2a2):
        # Act
        text = g2a2.export_matrix("O1-d2")

        # Assert
        lines = text.splitlines()
        assert lines[0] == "# G2a2 O1-d2: 3x2"
        assert lines[1].startswith("# target twists")
        assert all(len(line.split(" ", 2)) == 3 for line in lines[3:])


class TestComplexes:
    def test_interactive_ring_resolution(self, g2a2):
        # Act
        table = g2a2.check_betti(1)

        # Assert
        assert table.totals() == [1, 3, 2]
        assert is_complex(g2a2.complex(1)) == (True, None)

    def test_normalization_presentation(self, g2a2):
        table = g2a2.check_betti(2, BettiKind.NORMALIZATION)
        assert table.totals() == [3, 3]

    def test_cokernel(self, g2a2):
        # Act
        table = g2a2.check_betti(2, BettiKind.COKERNEL)

        # Assert
        assert table.totals() == [2, 3, 1]
        assert g2a2.cokernel_generator_degrees(2) == [1, 1]

    def test_cone_recovers_the_quartic(self, g2a2):
        # Act
        ideal = g2a2.cone_ideal(2)

        # Assert
        quartic = g2a2.generators("O2-quartic")[0]
        assert len(ideal) == 1
        assert ideal[0] * quartic.LC == quartic * ideal[0].LC

    def test_untruncated_cone_recovers_the_same_quartic(self, g2a2):
        # Arrange
        N = g2a2.complex(2, BettiKind.NORMALIZATION)
        P, kept = g2a2.cokernel_presentation(2)
        bounds = g2a2.expected_bounds(2, BettiKind.COKERNEL)[:1]

        # Act
        truncated = cone_procedure(N, P, truncated=True, kept_rows=kept, bounds=bounds)
        full = cone_procedure(N, P, truncated=False, kept_rows=kept, bounds=bounds)

        # Assert
        quartic = g2a2.generators("O2-quartic")[0]
        ideal = [p for p in full.row(0).values() if p]
        assert full.nrows == truncated.nrows == 1
        assert len(ideal) == 1
        assert ideal[0] * quartic.LC == quartic * ideal[0].LC

    def test_missing_oracle(self, g2a2):
        with pytest.raises(InputError):
            g2a2.check_betti(3)

    def test_mismatch_carries_a_diff(self, g2a2, monkeypatch):
        # Arrange
        from orbitres.algebra.complexes import BettiTable

        wrong = BettiTable.from_rows({0: [1], 1: [0, 3, 3]})
        monkeypatch.setattr(g2a2, "expected", lambda k, which=BettiKind.RING: wrong)

        # Act
        with pytest.raises(VerificationMismatch) as info:
            g2a2.check_betti(1)

        # Assert
        assert "+    1: . 3 2" in info.value.diff


class TestCertificates:
    def test_twisted_cubic(self, g2a2):
        # Act
        cert = g2a2.certify(1)

        # Assert
        assert cert.passed
        assert "exact: true, CM: true" in cert.summary()
        assert cert.r0

    def test_quartic_hypersurface_is_gorenstein(self, g2a2):
        cert = g2a2.certify(2)
        assert cert.cm.is_cm
        assert cert.cm.gorenstein
        assert not cert.flag_mismatches


class TestCofactorIdeals:
    def test_every_column_is_available_at_desk_scale(self, e6a4):
        # Act
        ideals = e6a4.available_ideals()

        # Assert
        assert all(v is not None for v in ideals.values())
        assert ideals[17] == []

    def test_generator_degrees(self, e6a4):
        # Act
        degrees = {k: sorted(total_degree(p) for p in e6a4.orbit_ideal(k)) for k in (12, 13, 14)}

        # Assert
        assert degrees[12].count(4) == 9 and min(degrees[12]) == 4
        assert degrees[13].count(3) == 4 and min(degrees[13]) == 3
        assert set(degrees[14]) == {6}

    def test_columns_match_the_printed_table(self, e6a4):
        # Act
        table = e6a4.check_table()

        # Assert
        assert not table.partial
        assert table.cells[12][14] == "ns"
        assert table.cells[14][12] == ""
        assert table.cells[13][13] == "ns"


class TestBuilderCache:
    def test_equal_rings_share_one_builder(self):
        # Arrange
        first = builder_for("G2a2")
        size = len(registry._INSTANCES)
        rebuilt = build_ring(read_case_file("G2a2").ring, "G2a2")

        # Act
        second = builder_for("G2a2", rebuilt)

        # Assert
        assert rebuilt is not first.ring
        assert second is first
        assert len(registry._INSTANCES) == size

    def test_ring_names_keep_builders_apart(self):
        # Arrange
        ring = case_ring("G2a2")
        renamed = build_ring(read_case_file("G2a2").ring, "G2a2-copy")

        # Act
        other = builder_for("G2a2", renamed)

        # Assert
        assert other is not builder_for("G2a2", ring)
        assert other.ring is renamed
