"""
Desk-scale acceptance criteria, one test each; larger resolutions need --extended
"""
import pytest

from orbitres.catalog import BettiKind
from orbitres.services import AcceptanceService, CatalogService, acceptance_service


@pytest.fixture(scope="module")
def suite():
    return AcceptanceService()


class TestAcceptance:
    def test_twisted_cubic_resolution(self, suite):
        ok, detail = suite.twisted_cubic()
        assert ok, detail

    def test_binary_cubic_cone(self, suite):
        ok, detail = suite.g2_cone()
        assert ok, detail

    def test_f4_minors_resolution(self, suite):
        ok, detail = suite.f4_minors()
        assert ok, detail

    def test_f4_cone_resolution(self, suite):
        # Act
        ok, detail = suite.f4_cone()

        # Assert
        assert ok, detail
        assert suite.service("F4a2").betti(6).totals() == [1, 6, 8, 3]

    def test_containment_tables(self, suite):
        ok, detail = suite.tables()
        assert ok, detail
        assert "E6a4: agrees" in detail
        assert "not computed" not in detail

    def test_open_columns_fail_the_table_criterion(self, suite, monkeypatch):
        # Arrange
        svc = suite.service("G2a2")
        ideals = dict(svc.available_ideals())
        open_column = next(k for k, v in ideals.items() if v)
        ideals[open_column] = None
        monkeypatch.setattr(acceptance_service, "TABLE_CASES", ("G2a2",))
        monkeypatch.setattr(svc, "available_ideals", lambda: ideals)

        # Act
        ok, detail = suite.tables()

        # Assert
        assert not ok
        assert f"G2a2: columns [{open_column}] not computed" in detail

    def test_invariant_vanishing(self, suite):
        ok, detail = suite.invariants()
        assert ok, detail

    def test_tensor_identities(self, suite):
        ok, detail = suite.identities()
        assert ok, detail

    def test_certificates(self, suite):
        ok, detail = suite.certificates()
        assert ok, detail
        assert "E6a3 O6" in detail

    def test_generator_counts(self, suite):
        ok, detail = suite.counts()
        assert ok, detail

    def test_run_reports_every_criterion(self):
        # Act
        results = AcceptanceService().run(only=[7, 9])

        # Assert
        assert [r.number for r in results] == [7, 9]
        assert all(r.passed for r in results)
        assert results[0].line() == "[PASS] 7. tensor identities"


@pytest.mark.extended
class TestExtended:
    def test_full_e6a4_table(self):
        svc = CatalogService("E6a4", extended=True)
        table = svc.check_table()
        assert not table.partial

    def test_grassmannian_cone(self):
        svc = CatalogService("E6a2", extended=True)
        assert svc.check_betti(1).totals()[0] == 1

    @pytest.mark.parametrize("case_id,k", [("F4a2", 5), ("F4a2", 7), ("E6a4", 12)])
    def test_cone_resolutions(self, case_id, k):
        svc = CatalogService(case_id, extended=True)
        assert svc.check_betti(k, BettiKind.RING).totals()[0] == 1
