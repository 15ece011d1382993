"""
Tests for rank certificates, reducedness tests, containment tables and the degeneration order
"""
import logging

import pytest

from orbitres.core.exceptions import InputError, VerificationMismatch
from orbitres.services.verify import (
    SINGULAR,
    SMOOTH,
    ContainmentTable,
    DifferentialRanks,
    ExactnessCertificate,
    cm_check,
    degeneration_order,
    exactness_certificate,
    r0_check,
    s1_check,
    table_cell,
)


class TestExactness:
    def test_twisted_cubic_certificate(self, g2a2):
        # Arrange
        C = g2a2.complex(1)

        # Act
        cert = exactness_certificate(C, g2a2.case.orbits, g2a2.case.ambient_dimension)

        # Assert
        assert cert.exact
        assert [dr.generic_rank for dr in cert.per_differential] == [1, 2]
        assert cert.per_differential[0].min_drop_codim == 2
        assert "exact: true" in cert.summary()

    def test_needs_a_dense_orbit(self, g2a2):
        C = g2a2.complex(1)
        orbits = [o for o in g2a2.case.orbits if o.id != g2a2.case.dense.id]
        with pytest.raises(InputError):
            exactness_certificate(C, orbits, g2a2.case.ambient_dimension)

    def test_cohen_macaulay_with_witness(self, g2a2):
        # Arrange
        cert = exactness_certificate(g2a2.complex(1), g2a2.case.orbits, 4)

        # Act
        cm = cm_check(cert, g2a2.case.orbits)

        # Assert
        assert cm.is_cm
        assert cm.witness_orbit == 1
        assert cm.dual_exact
        assert not cm.gorenstein

    def test_s1_holds_below_the_codimension(self, g2a2):
        assert s1_check(g2a2.complex(1), 2, g2a2.case.orbits)

    @staticmethod
    def _drop_in_codimension(monkeypatch, C, codim):
        ranks = [DifferentialRanks(1, 1, {}, [], 2), DifferentialRanks(2, 2, {0: 0}, [0], codim)]
        cert = ExactnessCertificate(ranks, [True, True], [True, True], {}, C)
        monkeypatch.setattr("orbitres.services.verify.exactness_certificate", lambda *args: cert)

    def test_s1_tie_is_reported_as_failing(self, g2a2, monkeypatch, caplog):
        # Arrange
        C = g2a2.complex(1)
        self._drop_in_codimension(monkeypatch, C, 2)

        # Act
        with caplog.at_level(logging.WARNING, logger="services.verify"):
            ok = s1_check(C, 1, g2a2.case.orbits)

        # Assert
        assert not ok
        assert "codimension exactly 2" in caplog.text

    def test_s1_fails_below_the_homological_degree(self, g2a2, monkeypatch, caplog):
        # Arrange
        C = g2a2.complex(1)
        self._drop_in_codimension(monkeypatch, C, 1)

        # Act
        with caplog.at_level(logging.WARNING, logger="services.verify"):
            ok = s1_check(C, 1, g2a2.case.orbits)

        # Assert
        assert not ok
        assert "undecided" not in caplog.text

    def test_s1_holds_above_the_homological_degree(self, g2a2, monkeypatch):
        # Arrange
        C = g2a2.complex(1)
        self._drop_in_codimension(monkeypatch, C, 3)

        # Act
        ok = s1_check(C, 1, g2a2.case.orbits)

        # Assert
        assert ok


class TestReducedness:
    def test_r0_at_own_representative(self, g2a2):
        gens = g2a2.orbit_ideal(1)
        assert r0_check(gens, g2a2.case.orbit(1).representative, 2)

    def test_r0_fails_at_a_smaller_orbit(self, g2a2):
        gens = g2a2.orbit_ideal(2)
        assert not r0_check(gens, g2a2.case.orbit(1).representative, 1)

    def test_cells(self, g2a2):
        quartic = g2a2.orbit_ideal(2)
        assert table_cell(quartic, g2a2.case.orbit(1).representative, 1) == SINGULAR
        assert table_cell(quartic, g2a2.case.orbit(2).representative, 1) == SMOOTH
        assert table_cell(quartic, g2a2.case.orbit(3).representative, 1) == ""


class TestContainmentTable:
    def test_binary_cubics_table(self, g2a2):
        # Act
        table = g2a2.check_table()

        # Assert
        assert not table.partial
        assert table.grid() == g2a2.case.printed_table()

    def test_render_and_compare(self):
        # Arrange
        table = ContainmentTable("X", [0, 1], [["ns", None], ["", "ns"]], [1])

        # Act
        wrong = table.compare([["ns", "s"], ["s", "ns"]])

        # Assert
        assert table.partial
        assert wrong == [(1, 0, "s", "")]
        assert table.render().splitlines()[1].split() == ["O0", "ns", "?"]
        assert "@@ O1 / closure of O0 @@" in table.diff([["ns", "s"], ["s", "ns"]])


class TestDegenerationOrder:
    def test_chain_of_binary_cubics(self, g2a2):
        # Act
        order = degeneration_order(g2a2.case)

        # Assert
        assert order.covers == [(0, 1), (1, 2), (2, 3)]
        assert order.hasse() == "O0 < O1\nO1 < O2\nO2 < O3\n"
        assert len(order.relations) == 6

    def test_computed_table_gives_the_same_order(self, g2a2):
        assert g2a2.order(computed=True).covers == g2a2.order().covers

    def test_missing_diagonal_is_rejected(self, g2a2):
        grid = [list(row) for row in g2a2.case.printed_table()]
        grid[2][2] = ""
        with pytest.raises(VerificationMismatch):
            degeneration_order(g2a2.case, grid)

    def test_intransitive_table_is_rejected(self, g2a2):
        grid = [list(row) for row in g2a2.case.printed_table()]
        grid[0][2] = ""
        with pytest.raises(VerificationMismatch):
            degeneration_order(g2a2.case, grid)

    @pytest.mark.parametrize("case_id", ["E6a1", "E6a2", "E6a3", "E6a4", "F4a1", "F4a2", "F4a4"])
    def test_printed_tables_are_partial_orders(self, case_id):
        from orbitres.catalog import load_case

        order = degeneration_order(load_case(case_id))
        assert order.covers
