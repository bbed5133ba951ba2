"""
Tests for FlowFileRepository

Covers parsing of the line-oriented flow format, structural validation
errors, loading into a validated flow, and writing flows back out.
"""

from fractions import Fraction

import pytest

from src.models.number_field import InvalidFieldSpecError
from src.repositories.flow_file_repository import FlowFileRepository, ParseError
from src.services.symmetry_service import InvalidFlowError
from tests.conftest import GOLDEN, GOLDEN_FLOW_TEXT, PLASTIC


@pytest.fixture
def repo():
    return FlowFileRepository()


# ============================================================================
# Test Class: Parsing
# ============================================================================

class TestParse:
    """Tests for FlowFileRepository.parse."""

    def test_parse_golden(self, repo):
        spec = repo.parse(GOLDEN_FLOW_TEXT)
        assert spec.min_poly == [-1, -1, 1]
        assert spec.root == ("1", "2")
        assert spec.n == 2
        assert spec.frequency_coords() == [[1, 0], [0, 1]]
        assert spec.to_field_spec() == GOLDEN

    def test_comments_and_blank_lines_ignored(self, repo):
        text = "\n# header\nmin_poly = -1 -1 1   # golden\n\nroot = 1 2\nn = 2\na1 = 1 0\na2 = 0 1\n"
        assert repo.parse(text).n == 2

    def test_rational_coordinates(self, repo):
        text = GOLDEN_FLOW_TEXT.replace("a1 = 1 0", "a1 = 1/2 -3/4")
        assert repo.parse(text).frequency_coords()[0] == [Fraction(1, 2), Fraction(-3, 4)]

    def test_line_without_equals(self, repo):
        with pytest.raises(ParseError) as exc_info:
            repo.parse(GOLDEN_FLOW_TEXT + "oops\n", source="golden.flow")
        assert "golden.flow:7" in str(exc_info.value)

    def test_unknown_key(self, repo):
        with pytest.raises(ParseError) as exc_info:
            repo.parse(GOLDEN_FLOW_TEXT + "colour = blue\n")
        assert "unknown key" in str(exc_info.value)

    def test_duplicate_key(self, repo):
        with pytest.raises(ParseError) as exc_info:
            repo.parse(GOLDEN_FLOW_TEXT + "n = 2\n")
        assert "duplicate" in str(exc_info.value)

    def test_empty_value(self, repo):
        with pytest.raises(ParseError):
            repo.parse(GOLDEN_FLOW_TEXT.replace("root = 1 2", "root ="))

    @pytest.mark.parametrize("key", ["min_poly", "root", "n"])
    def test_missing_key(self, repo, key):
        text = "\n".join(line for line in GOLDEN_FLOW_TEXT.splitlines() if not line.startswith(key))
        with pytest.raises(ParseError) as exc_info:
            repo.parse(text)
        assert f"missing '{key} ='" in str(exc_info.value)

    def test_missing_frequency(self, repo):
        with pytest.raises(ParseError) as exc_info:
            repo.parse(GOLDEN_FLOW_TEXT.replace("a2 = 0 1\n", ""))
        assert "a1..a2" in str(exc_info.value)

    def test_frequency_gap(self, repo):
        with pytest.raises(ParseError):
            repo.parse(GOLDEN_FLOW_TEXT.replace("a2 =", "a3 ="))

    def test_non_integer_dimension(self, repo):
        with pytest.raises(ParseError):
            repo.parse(GOLDEN_FLOW_TEXT.replace("n = 2", "n = two"))

    def test_root_needs_two_endpoints(self, repo):
        with pytest.raises(ParseError):
            repo.parse(GOLDEN_FLOW_TEXT.replace("root = 1 2", "root = 1 2 3"))

    def test_wrong_coordinate_count(self, repo):
        with pytest.raises(ParseError) as exc_info:
            repo.parse(GOLDEN_FLOW_TEXT.replace("a2 = 0 1", "a2 = 0 1 0"))
        assert "field degree is 2" in str(exc_info.value)

    def test_non_monic(self, repo):
        with pytest.raises(ParseError) as exc_info:
            repo.parse(GOLDEN_FLOW_TEXT.replace("min_poly = -1 -1 1", "min_poly = -1 -1 2"))
        assert "monic" in str(exc_info.value)

    def test_bad_rational(self, repo):
        with pytest.raises(ParseError):
            repo.parse(GOLDEN_FLOW_TEXT.replace("a1 = 1 0", "a1 = 1/0 0"))

    def test_dimension_below_two(self, repo):
        text = "min_poly = -1 -1 1\nroot = 1 2\nn = 1\na1 = 1 0\n"
        with pytest.raises(ParseError):
            repo.parse(text)


# ============================================================================
# Test Class: Loading
# ============================================================================

class TestLoad:
    """Tests for reading files into validated flows."""

    def test_load_golden(self, repo, golden_flow_file, golden_flow):
        assert repo.load(golden_flow_file) == golden_flow

    def test_load_plastic(self, repo, plastic_flow_file):
        flow = repo.load(plastic_flow_file)
        assert flow.n == 3
        assert flow.field == PLASTIC

    def test_missing_file(self, repo, tmp_path):
        with pytest.raises(ParseError) as exc_info:
            repo.load(tmp_path / "absent.flow")
        assert "Cannot read" in str(exc_info.value)

    def test_bad_root_interval(self, repo, write_flow):
        path = write_flow(GOLDEN_FLOW_TEXT.replace("root = 1 2", "root = 2 3"))
        with pytest.raises(InvalidFieldSpecError):
            repo.load(path)

    def test_dependent_frequencies(self, repo, write_flow):
        path = write_flow(GOLDEN_FLOW_TEXT.replace("a2 = 0 1", "a2 = 3 0"))
        with pytest.raises(InvalidFlowError):
            repo.load(path)

    def test_read_spec_does_not_check_independence(self, repo, write_flow):
        path = write_flow(GOLDEN_FLOW_TEXT.replace("a2 = 0 1", "a2 = 3 0"))
        assert repo.read_spec(path).n == 2


class TestDump:
    """Tests for writing flows."""

    def test_dump_golden(self, repo, golden_flow):
        assert repo.dump(golden_flow) == (
            "min_poly = -1 -1 1\n"
            "root = 1 2\n"
            "n = 2\n"
            "a1 = 1 0\n"
            "a2 = 0 1\n"
        )

    def test_save_and_load(self, repo, plastic_flow, tmp_path):
        path = tmp_path / "saved.flow"
        repo.save(plastic_flow, path)
        assert repo.load(path) == plastic_flow
