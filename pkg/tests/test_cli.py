"""
Tests for the command line: verbs, exit statuses and determinism
"""
import pytest

from orbitres.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


class TestUsage:
    def test_missing_orbit(self, capsys):
        status, out, err = run(capsys, "certify", "--case", "G2a2")
        assert status == EXIT_USAGE
        assert "--orbit" in err
        assert out == ""

    def test_unknown_case(self, capsys):
        status, _, err = run(capsys, "table", "--case", "B2a1")
        assert status == EXIT_USAGE
        assert "unknown case id" in err

    def test_unknown_orbit(self, capsys):
        status, _, err = run(capsys, "betti", "--case", "G2a2", "--orbit", "7")
        assert status == EXIT_USAGE
        assert "no orbit 7" in err

    def test_unknown_verb(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["plot"])
        assert info.value.code == 2

    def test_extended_scope_is_a_usage_error(self, capsys):
        status, _, err = run(capsys, "ideal", "--case", "E6a2", "--orbit", "1")
        assert status == EXIT_USAGE
        assert "extended" in err


class TestVerbs:
    def test_certify(self, capsys):
        status, out, _ = run(capsys, "certify", "--case", "G2a2", "--orbit", "1")
        assert status == EXIT_OK
        assert "exact: true, CM: true" in out

    def test_betti_check(self, capsys):
        status, out, _ = run(capsys, "betti", "--case", "G2a2", "--orbit", "1", "--check")
        assert status == EXIT_OK
        assert out.splitlines()[1] == "total: 1 3 2"

    def test_betti_check_against_a_stored_e6_table(self, capsys):
        status, out, _ = run(capsys, "betti", "--case", "E6a2", "--orbit", "2", "--check")
        assert status == EXIT_OK
        assert out.splitlines()[1].split()[1] == "1"

    def test_triples(self, capsys):
        status, out, _ = run(capsys, "betti", "--case", "G2a2", "--orbit", "1", "--format", "triples")
        assert status == EXIT_OK
        assert out == "0 0 1\n1 2 3\n2 3 2\n"

    def test_cokernel_target(self, capsys):
        status, out, _ = run(capsys, "resolve", "--case", "G2a2", "--orbit", "2", "--target", "cokernel")
        assert status == EXIT_OK
        assert out.splitlines()[1] == "F0: R(-1)^2"

    def test_table(self, capsys):
        status, out, _ = run(capsys, "table", "--case", "F4a4", "--check")
        assert status == EXIT_OK
        assert out.splitlines()[0].split() == ["Ō0", "Ō1", "Ō2"]

    def test_table_with_order(self, capsys):
        status, out, _ = run(capsys, "table", "--case", "G2a2", "--order")
        assert status == EXIT_OK
        assert out.endswith("O0 < O1\nO1 < O2\nO2 < O3\n")

    def test_cone(self, capsys):
        status, out, _ = run(capsys, "cone", "--case", "G2a2", "--orbit", "2")
        assert status == EXIT_OK
        assert out.splitlines()[0].startswith("# G2a2 orbit 2: cone homology with 1 generators")
        assert out.splitlines()[1].startswith("4: ")

    def test_ideal(self, capsys):
        status, out, _ = run(capsys, "ideal", "--case", "G2a2", "--orbit", "1")
        assert status == EXIT_OK
        assert out.splitlines()[0] == "# G2a2 orbit 1: 3 generators"

    def test_case_list(self, capsys):
        status, out, _ = run(capsys, "case-list")
        assert status == EXIT_OK
        assert out.count("ambient dimension") == 10

    def test_registry(self, capsys):
        status, out, _ = run(capsys, "registry", "--case", "G2a2")
        assert status == EXIT_OK
        assert out.startswith("G2a2: ")
        assert "O2-quartic" in out

    def test_matrix_to_file(self, capsys, tmp_path):
        target = tmp_path / "d2.txt"
        status, out, _ = run(capsys, "matrix", "--case", "G2a2", "--label", "O1-d2", "--output", str(target))
        assert status == EXIT_OK
        assert out == ""
        assert target.read_text().startswith("# G2a2 O1-d2: 3x2")


class TestMismatch:
    def test_mismatch_prints_a_diff(self, capsys, monkeypatch):
        # Arrange
        from orbitres.algebra.complexes import BettiTable
        from orbitres.services.catalog_service import CatalogService

        wrong = BettiTable.from_rows({0: [1], 1: [0, 3, 3]})
        monkeypatch.setattr(CatalogService, "expected", lambda self, k, which="ring": wrong)

        # Act
        status, out, err = run(capsys, "betti", "--case", "G2a2", "--orbit", "1", "--check")

        # Assert
        assert status == EXIT_MISMATCH
        assert out.startswith("--- expected")
        assert "mismatch" in err


class TestDeterminism:
    def test_identical_commands_give_identical_output(self, capsys):
        first = run(capsys, "table", "--case", "G2a2")[1]
        second = run(capsys, "table", "--case", "G2a2")[1]
        assert first == second

    def test_desk_scale_subset(self, capsys, monkeypatch):
        # Arrange
        from orbitres.services.acceptance_service import AcceptanceService

        original = AcceptanceService.run
        monkeypatch.setattr(AcceptanceService, "run", lambda self, only=None: original(self, only=[7, 9]))

        # Act
        status, out, _ = run(capsys, "verify-all", "--desk-scale")

        # Assert
        assert status == EXIT_OK
        assert out.splitlines()[0] == "[PASS] 7. tensor identities"
