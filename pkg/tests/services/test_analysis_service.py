"""
Tests for Analysis Service

Covers the characteristic-form decomposition of symmetry lifts, the exact
PDE residual, and the density statistics of J = {m - (a_i/a_n) m_n}.
"""

import itertools
import math
from fractions import Fraction

import pytest

from src.models.characteristic import CharacteristicForm
from src.models.flow import AffineLift, IntMatrix
from src.models.number_field import AlgebraicNumber
from src.services.analysis_service import DimensionUnsupportedError, RelationViolatedError
from src.services.symmetry_service import NotAnEigenvectorError


FIBONACCI = IntMatrix.of([[0, 1], [1, 1]])

PHI = (1 + math.sqrt(5)) / 2
PLASTIC_ROOT = 1.324717957244746


def zero_lift(matrix, field):
    zero = AlgebraicNumber.zero(field)
    return AffineLift(matrix, (zero,) * matrix.n)


def brute_force_radius(ratios, max_m, grid):
    """Covering radius in the sup-norm torus metric, by direct float search."""
    points = [
        [(-k * r) % 1.0 for r in ratios]
        for k in range(-max_m, max_m + 1)
    ]

    def distance(x, y):
        return max(min(abs(a - b), 1 - abs(a - b)) for a, b in zip(x, y))

    probes = itertools.product([i / grid for i in range(grid)], repeat=len(ratios))
    return max(min(distance(p, x) for x in points) for p in probes)


# ============================================================================
# Test Class: Characteristic Form
# ============================================================================

class TestCharacteristicForm:
    """Tests for decompose_lift and recompose_lift."""

    def test_decompose_fibonacci_lift(self, golden_analysis, golden_field, phi):
        """Test that the derived last column of (F, 0) is (1, 1)."""
        form = golden_analysis.decompose_lift(zero_lift(FIBONACCI, golden_field))
        assert form.alpha == phi
        assert form.h_coeffs == ((0,), (1,))
        assert form.derived_last_column == (1, 1)
        assert form.last_column_is_integral()
        assert form.n == 2

    def test_recompose_round_trip(self, golden_analysis, golden_field, phi):
        half = AlgebraicNumber.from_rational(golden_field, Fraction(1, 2))
        lift = AffineLift.create(FIBONACCI, (half, phi - 1))
        form = golden_analysis.decompose_lift(lift)
        assert golden_analysis.recompose_lift(form) == lift

    def test_recompose_with_new_constants(self, golden_analysis, golden_field, phi):
        """Test that the constants c_i stay free."""
        form = golden_analysis.decompose_lift(zero_lift(FIBONACCI, golden_field))
        lift = golden_analysis.recompose_lift(form, translation=(phi, phi * 2))
        assert lift.matrix == FIBONACCI
        assert lift.translation == (phi - 1, 2 * phi - 3)

    def test_plastic_decomposition(self, plastic_analysis, plastic_field):
        matrix = IntMatrix.of([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
        form = plastic_analysis.decompose_lift(zero_lift(matrix, plastic_field))
        assert form.derived_last_column == (0, 1, 0)

    def test_decompose_requires_symmetry(self, golden_analysis, golden_field):
        with pytest.raises(NotAnEigenvectorError):
            golden_analysis.decompose_lift(zero_lift(IntMatrix.of([[1, 1], [0, 1]]), golden_field))

    def test_recompose_rejects_inconsistent_column(self, golden_analysis, golden_field):
        form = golden_analysis.decompose_lift(zero_lift(FIBONACCI, golden_field))
        one = AlgebraicNumber.one(golden_field)
        tampered = CharacteristicForm(
            alpha=form.alpha,
            h_coeffs=form.h_coeffs,
            h_consts=form.h_consts,
            derived_last_column=(one, one * 2),
        )
        with pytest.raises(RelationViolatedError):
            golden_analysis.recompose_lift(tampered)

    def test_recompose_rejects_non_integral_column(self, golden_analysis, golden_field):
        """Test alpha = 2 with free row (1) forcing b_12 = 1/phi."""
        one = AlgebraicNumber.one(golden_field)
        zero = AlgebraicNumber.zero(golden_field)
        alpha = one * 2
        h_coeffs = ((one,), (zero,))
        form = CharacteristicForm(
            alpha=alpha,
            h_coeffs=h_coeffs,
            h_consts=(zero, zero),
            derived_last_column=golden_analysis._last_column(alpha, h_coeffs),
        )
        assert not form.last_column_is_integral()
        with pytest.raises(RelationViolatedError) as exc_info:
            golden_analysis.recompose_lift(form)
        assert "not integral" in str(exc_info.value)


class TestPdeResidual:
    """Tests for the exact residual of the lifted symmetry equation."""

    def test_residual_vanishes_for_symmetry(self, golden_analysis, golden_field, phi):
        residual = golden_analysis.pde_residual(zero_lift(FIBONACCI, golden_field), phi)
        assert all(r.is_zero() for r in residual)

    def test_residual_for_wrong_multiplier(self, golden_analysis, golden_field, phi):
        """Test that alpha = phi^2 leaves residual (phi - phi^2, phi^2 - phi^3) = (-1, -phi)."""
        residual = golden_analysis.pde_residual(zero_lift(FIBONACCI, golden_field), phi * phi)
        assert residual == (-1, -phi)


# ============================================================================
# Test Class: Density of J
# ============================================================================

class TestDensityGap:
    """Tests for the largest circular gap among frac(k a_1/a_2), |k| <= M."""

    def test_single_point(self, golden_analysis):
        assert golden_analysis.density_gap(0) == 1

    def test_three_points(self, golden_analysis):
        """Test M = 1: points 0, 2 - phi, phi - 1 leave a largest gap of 2 - phi."""
        assert float(golden_analysis.density_gap(1)) == pytest.approx(2 - PHI, abs=1e-8)

    def test_seven_points(self, golden_analysis):
        """Test M = 3: the largest gap is 2 phi - 3."""
        assert float(golden_analysis.density_gap(3)) == pytest.approx(2 * PHI - 3, abs=1e-8)

    def test_gap_shrinks(self, golden_analysis):
        gaps = [golden_analysis.density_gap(m) for m in (1, 5, 20, 100, 1000)]
        for coarse, fine in zip(gaps, gaps[1:]):
            assert fine <= coarse + Fraction(1, 10**8)
        assert gaps[-1] < Fraction(1, 100)

    def test_gap_is_exact_fraction(self, golden_analysis):
        assert isinstance(golden_analysis.density_gap(10), Fraction)

    def test_gap_requires_two_dimensions(self, plastic_analysis):
        with pytest.raises(DimensionUnsupportedError):
            plastic_analysis.density_gap(5)

    def test_negative_m_rejected(self, golden_analysis):
        with pytest.raises(ValueError):
            golden_analysis.density_gap(-1)


class TestCoveringRadius:
    """Tests for the sampled covering radius on T^(n-1)."""

    def test_single_point_radius(self, plastic_analysis):
        """Test that the probe (1/2, 1/2) is at sup distance 1/2 from the origin."""
        assert plastic_analysis.density_covering_radius(0, grid=20) == Fraction(1, 2)

    def test_matches_brute_force(self, plastic_analysis):
        ratios = [1 / PLASTIC_ROOT ** 2, 1 / PLASTIC_ROOT]
        expected = brute_force_radius(ratios, 50, 20)
        radius = plastic_analysis.density_covering_radius(50, grid=20)
        assert float(radius) == pytest.approx(expected, abs=1e-6)
        assert radius < Fraction(1, 4)

    def test_radius_in_one_dimension(self, golden_analysis):
        expected = brute_force_radius([1 / PHI], 10, 50)
        assert float(golden_analysis.density_covering_radius(10, grid=50)) == pytest.approx(expected, abs=1e-6)

    def test_radius_shrinks(self, plastic_analysis):
        coarse = plastic_analysis.density_covering_radius(5, grid=10)
        fine = plastic_analysis.density_covering_radius(100, grid=10)
        assert fine <= coarse + Fraction(1, 10**6)

    def test_grid_validated(self, plastic_analysis):
        with pytest.raises(ValueError):
            plastic_analysis.density_covering_radius(5, grid=0)


class TestDensitySequence:
    def test_golden_sequence_uses_gap(self, golden_analysis):
        """Test bounds M/100, M/10 and M for M = 1000."""
        sequence = golden_analysis.density_sequence(1000)
        assert [(m, name) for m, name, _ in sequence] == [(10, "GAP"), (100, "GAP"), (1000, "GAP")]

    def test_small_m_is_deduplicated(self, golden_analysis):
        assert [m for m, _, _ in golden_analysis.density_sequence(5)] == [1, 5]

    def test_plastic_sequence_uses_radius(self, plastic_analysis):
        sequence = plastic_analysis.density_sequence(20, grid=8)
        assert [(m, name) for m, name, _ in sequence] == [(1, "RADIUS"), (2, "RADIUS"), (20, "RADIUS")]
