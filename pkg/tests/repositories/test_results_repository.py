"""
Tests for ResultsRepository
"""

import pytest

from src.models.flow import IntMatrix
from src.repositories.results_repository import ResultsFileError, ResultsRepository


PHI_LINE = "MULT\t0 1\tMATRIX\t0,1;1,1\tDET\t-1"


@pytest.fixture
def results_repo(golden_flow, golden_symmetry):
    return ResultsRepository(golden_flow, symmetry_service=golden_symmetry)


class TestFormat:
    """Tests for writing results."""

    def test_format_line(self, golden_symmetry):
        multiplier = golden_symmetry.multiplier_from_matrix(IntMatrix.of([[0, 1], [1, 1]]))
        assert ResultsRepository.format_line(multiplier) == PHI_LINE

    def test_dump_has_header(self, results_repo, golden_search):
        text = results_repo.dump(golden_search.search_multipliers(1))
        lines = text.splitlines()
        assert lines[0] == ResultsRepository.HEADER
        assert lines[1] == "# min_poly = -1 -1 1"
        assert len(lines) == 2 + 8
        assert PHI_LINE in lines


class TestParse:
    """Tests for reading and re-validating results."""

    def test_parse_line(self, results_repo, phi):
        multiplier = results_repo.parse_line(PHI_LINE)
        assert multiplier.value == phi
        assert multiplier.witness == IntMatrix.of([[0, 1], [1, 1]])

    def test_save_and_load(self, results_repo, golden_search, tmp_path):
        results = golden_search.search_multipliers(2)
        path = tmp_path / "golden.results"
        results_repo.save(results, path)
        assert results_repo.load(path) == results

    def test_comments_skipped(self, results_repo):
        assert len(results_repo.parse(f"# note\n\n{PHI_LINE}\n")) == 1

    @pytest.mark.parametrize("line", [
        "MULT 0 1 MATRIX 0,1;1,1 DET -1",
        "MULT\t0 1\tMATRIX\t0,1;1,1",
        "MULT\t0 1\tMATRIX\t0,1;1,1\tDETERMINANT\t-1",
        "MULT\t0 x\tMATRIX\t0,1;1,1\tDET\t-1",
        "MULT\t0 1\tMATRIX\t0,1;1\tDET\t-1",
    ])
    def test_malformed_lines(self, results_repo, line):
        with pytest.raises(ResultsFileError):
            results_repo.parse_line(line)

    def test_wrong_multiplier(self, results_repo):
        """Test that the listed alpha must be the one the matrix realizes."""
        with pytest.raises(ResultsFileError) as exc_info:
            results_repo.parse_line("MULT\t1 1\tMATRIX\t0,1;1,1\tDET\t-1")
        assert "realizes 0 1" in str(exc_info.value)

    def test_wrong_determinant(self, results_repo):
        with pytest.raises(ResultsFileError):
            results_repo.parse_line("MULT\t0 1\tMATRIX\t0,1;1,1\tDET\t1")

    def test_non_symmetry_matrix(self, results_repo):
        with pytest.raises(ResultsFileError):
            results_repo.parse_line("MULT\t1 0\tMATRIX\t1,1;0,1\tDET\t1")

    def test_line_numbers_reported(self, results_repo):
        with pytest.raises(ResultsFileError) as exc_info:
            results_repo.parse(f"# header\n{PHI_LINE}\nMULT\tbroken\n")
        assert "line 3" in str(exc_info.value)

    def test_missing_file(self, results_repo, tmp_path):
        with pytest.raises(ResultsFileError):
            results_repo.load(tmp_path / "absent.results")
