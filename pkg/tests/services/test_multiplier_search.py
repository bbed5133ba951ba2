"""
Tests for Multiplier Search Service and the real quadratic unit helpers.
"""

from fractions import Fraction

import pytest

from src.models.flow import IntMatrix
from src.models.number_field import AlgebraicNumber
from src.services.multiplier_search import (
    MultiplierSearchService,
    NotQuadraticError,
    quadratic_continued_fraction,
    quadratic_fundamental_unit,
    quadratic_norm,
    sqrt_discriminant,
    units_from_fundamental,
)


def coords(values):
    return [tuple(int(c) for c in v.coords) for v in values]


# ============================================================================
# Test Class: Bounded Search
# ============================================================================

class TestSearchMultipliers:
    """Tests for search_multipliers."""

    def test_golden_height_one(self, golden_search):
        """Test that every nonzero candidate of height 1 is a unit of Z[phi]."""
        results = golden_search.search_multipliers(1)
        assert len(results) == 8
        assert coords(m.value for m in results[:2]) == [(-1, -1), (-1, 0)]

    def test_results_are_sorted(self, golden_search):
        results = golden_search.search_multipliers(2)
        keys = [m.sort_key() for m in results]
        assert keys == sorted(keys)

    def test_witnesses_realize_multipliers(self, golden_search, golden_symmetry):
        for multiplier in golden_search.search_multipliers(2):
            assert abs(multiplier.witness.det()) == 1
            assert golden_symmetry.multiplier_from_matrix(multiplier.witness).value == multiplier.value

    def test_phi_found_with_fibonacci_matrix(self, golden_search, phi):
        found = {m.value: m.witness for m in golden_search.search_multipliers(1)}
        assert found[phi] == IntMatrix.of([[0, 1], [1, 1]])

    def test_silver_height_one(self, silver_flow):
        """Test +-1, +-(1 + sqrt 2), +-(sqrt 2 - 1); sqrt 2 itself has norm -2."""
        results = MultiplierSearchService(silver_flow).search_multipliers(1)
        assert coords(m.value for m in results) == [
            (-1, -1), (-1, 0), (-1, 1), (1, -1), (1, 0), (1, 1),
        ]

    def test_plastic_height_one(self, plastic_flow, plastic):
        values = {m.value for m in MultiplierSearchService(plastic_flow).search_multipliers(1)}
        assert plastic in values
        assert plastic.inverse() in values
        assert -plastic in values
        assert AlgebraicNumber.one(plastic.field) in values
        assert not any(v.is_zero() for v in values)

    def test_height_zero_is_empty(self, golden_search):
        assert golden_search.search_multipliers(0) == []

    def test_negative_height_rejected(self, golden_search):
        with pytest.raises(ValueError):
            golden_search.search_multipliers(-1)

    def test_candidates_skip_zero(self, golden_search):
        candidates = list(golden_search.candidates(1))
        assert len(candidates) == 8
        assert not any(c.is_zero() for c in candidates)


# ============================================================================
# Test Class: Real Quadratic Units
# ============================================================================

class TestQuadraticUnits:
    """Tests for the Pell-equation unit helpers."""

    def test_golden_fundamental_unit(self, golden_field, phi):
        assert quadratic_fundamental_unit(golden_field) == phi

    def test_silver_fundamental_unit(self, silver_field):
        assert quadratic_fundamental_unit(silver_field) == AlgebraicNumber.of(silver_field, [1, 1])

    def test_sqrt3_fundamental_unit(self, sqrt3_field):
        """Test 2 + sqrt 3, the smallest solution of X^2 - 12 Y^2 = 4."""
        assert quadratic_fundamental_unit(sqrt3_field) == AlgebraicNumber.of(sqrt3_field, [2, 1])

    def test_non_quadratic_rejected(self, plastic_field):
        with pytest.raises(NotQuadraticError):
            quadratic_fundamental_unit(plastic_field)

    def test_sqrt_discriminant(self, golden_field, phi):
        """Test sqrt 5 = 2 phi - 1."""
        root = sqrt_discriminant(golden_field)
        assert root == 2 * phi - 1
        assert root * root == 5

    def test_norms(self, golden_field, silver_field, sqrt3_field, phi):
        assert quadratic_norm(phi) == -1
        assert quadratic_norm(AlgebraicNumber.of(silver_field, [1, 1])) == -1
        assert quadratic_norm(AlgebraicNumber.of(sqrt3_field, [2, 1])) == 1
        assert quadratic_norm(AlgebraicNumber.of(silver_field, [0, 1])) == -2
        assert quadratic_norm(phi / 2) == Fraction(-1, 4)

    def test_continued_fractions(self, golden_field, silver_field, sqrt3_field):
        assert quadratic_continued_fraction(golden_field) == ([1], [1])
        assert quadratic_continued_fraction(silver_field) == ([1], [2])
        assert quadratic_continued_fraction(sqrt3_field) == ([1], [1, 2])

    def test_units_from_fundamental(self, golden_search, phi):
        """Test that +-phi^k within height 1 are exactly the search results."""
        units = units_from_fundamental(phi, 1)
        searched = [m.value for m in golden_search.search_multipliers(1)]
        assert units == searched

    def test_units_from_fundamental_height_two(self, golden_search, phi):
        units = units_from_fundamental(phi, 2)
        assert units == [m.value for m in golden_search.search_multipliers(2)]
        assert phi ** 3 in units
        assert phi ** -2 in units

    def test_units_at_height_zero(self, phi):
        assert units_from_fundamental(phi, 0) == []
