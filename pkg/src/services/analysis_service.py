"""
Analysis Service

Checks on the analytic side of the symmetry equation:

- decompose_lift / recompose_lift: the characteristic-form identity for the
  last matrix column, verified exactly
- pde_residual: the lifted equation sum_j b_ij a_j - alpha a_i, exactly
- density_gap / density_covering_radius: empirical density of the set
  J = {m - (a_i/a_n) m_n} in the fundamental domain, from exact rational
  approximations of the frequency ratios
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.spatial import cKDTree

from src.config import get_settings
from src.models.characteristic import CharacteristicForm
from src.models.flow import AffineLift, FrequencyVector, IntMatrix
from src.models.number_field import AlgebraicNumber
from src.services.symmetry_service import SymmetryService


logger = logging.getLogger(__name__)


class AnalysisError(Exception):
    """Base exception for analysis errors."""


class RelationViolatedError(AnalysisError):
    """Raised when a lift's last column disagrees with the characteristic relation."""


class DimensionUnsupportedError(AnalysisError):
    """Raised when a statistic is requested for an unsupported torus dimension."""


class AnalysisService:
    """
    Characteristic-form and density checks for one flow.
    """

    def __init__(
        self,
        flow: FrequencyVector,
        symmetry_service: Optional[SymmetryService] = None,
        eps: Optional[Fraction] = None
    ):
        """
        Initialize the analysis service.

        Args:
            flow: A validated FrequencyVector
            symmetry_service: Shared SymmetryService for the same flow
            eps: Approximation precision (default: settings.eps)
        """
        self.flow = flow
        self.symmetry = symmetry_service or SymmetryService(flow)
        self.eps = Fraction(eps) if eps is not None else get_settings().eps
        self._last_inverse = flow.a[-1].inverse()

    # ------------------------------------------------------------------
    # Characteristic form
    # ------------------------------------------------------------------

    def _last_column(
        self,
        alpha: AlgebraicNumber,
        h_coeffs: Sequence[Sequence[AlgebraicNumber]]
    ) -> Tuple[AlgebraicNumber, ...]:
        a = self.flow.a
        column = []
        for i, row in enumerate(h_coeffs):
            value = alpha * a[i]
            for b_ij, a_j in zip(row, a[:-1]):
                value = value - b_ij * a_j
            column.append(value * self._last_inverse)
        return tuple(column)

    def decompose_lift(self, lift: AffineLift) -> CharacteristicForm:
        """
        Split a symmetry lift into its free data and the derived last column.

        Args:
            lift: A symmetry lift of the flow

        Returns:
            CharacteristicForm whose derived column equals the lift's last column

        Raises:
            NotAnEigenvectorError: If the lift is not a symmetry
            RelationViolatedError: If the recomputed last column disagrees
        """
        alpha = self.symmetry.multiplier_of(lift).value
        field = self.flow.field
        h_coeffs = tuple(
            tuple(AlgebraicNumber.from_rational(field, b) for b in row[:-1])
            for row in lift.matrix.rows
        )
        derived = self._last_column(alpha, h_coeffs)
        for i, (b_in, row) in enumerate(zip(derived, lift.matrix.rows)):
            if b_in != row[-1]:
                raise RelationViolatedError(
                    f"Row {i + 1}: derived b_in = {b_in.format()} but the matrix has {row[-1]}"
                )
        return CharacteristicForm(
            alpha=alpha,
            h_coeffs=h_coeffs,
            h_consts=lift.translation,
            derived_last_column=derived,
        )

    def recompose_lift(
        self,
        form: CharacteristicForm,
        translation: Optional[Sequence[AlgebraicNumber]] = None
    ) -> AffineLift:
        """
        Rebuild the lift from a characteristic form.

        Args:
            form: Free data with its derived last column
            translation: Replacement constants (default: form.h_consts)

        Raises:
            RelationViolatedError: If the derived column is inconsistent or not integral
        """
        if self._last_column(form.alpha, form.h_coeffs) != form.derived_last_column:
            raise RelationViolatedError("Derived last column does not satisfy the relation")
        if not form.last_column_is_integral():
            raise RelationViolatedError("Derived last column is not integral")
        rows = [
            [int(b.coords[0]) for b in row] + [int(last.coords[0])]
            for row, last in zip(form.h_coeffs, form.derived_last_column)
        ]
        return AffineLift.create(
            IntMatrix.of(rows),
            form.h_consts if translation is None else tuple(translation),
        )

    def pde_residual(self, lift: AffineLift, alpha: AlgebraicNumber) -> Tuple[AlgebraicNumber, ...]:
        """
        Residual (sum_j b_ij a_j - alpha a_i)_i of the lifted symmetry equation.

        The partial derivatives of an affine lift are its matrix entries, so
        the residual is exact.
        """
        image = lift.matrix.apply(self.flow.a)
        return tuple(b - alpha * a_i for b, a_i in zip(image, self.flow.a))

    # ------------------------------------------------------------------
    # Density of J
    # ------------------------------------------------------------------

    def _ratios(self, max_m: int, eps: Fraction) -> List[Fraction]:
        """a_i / a_n, i < n, approximated so that k * ratio errs by < eps for |k| <= max_m."""
        precision = eps / (max_m + 1)
        return [
            (a_i * self._last_inverse).approximate(precision)
            for a_i in self.flow.a[:-1]
        ]

    def density_gap(self, max_m: int, eps: Optional[Fraction] = None) -> Fraction:
        """
        Largest circular gap between the points frac(k a_1/a_2), |k| <= M.

        Args:
            max_m: The bound M (>= 0); M = 0 gives the single point 0
            eps: Approximation precision (default: the service's eps)

        Returns:
            The maximum gap as a Fraction

        Raises:
            DimensionUnsupportedError: If n != 2
        """
        if self.flow.n != 2:
            raise DimensionUnsupportedError(
                f"Gap statistic needs n = 2, flow has n = {self.flow.n}; use the covering radius"
            )
        if max_m < 0:
            raise ValueError(f"M must be >= 0, got {max_m}")
        eps = self.eps if eps is None else Fraction(eps)
        (ratio,) = self._ratios(max_m, eps)

        points = sorted({(k * ratio) - math.floor(k * ratio) for k in range(-max_m, max_m + 1)})
        gaps = [b - a for a, b in zip(points, points[1:])]
        gaps.append(1 + points[0] - points[-1])
        gap = max(gaps)
        logger.debug("Density gap at M=%d over %d points: %s", max_m, len(points), float(gap))
        return gap

    def density_covering_radius(
        self,
        max_m: int,
        grid: Optional[int] = None,
        eps: Optional[Fraction] = None
    ) -> Fraction:
        """
        Covering radius of the J-points on the torus T^(n-1), sampled on a grid.

        The J-points frac(-k a_i/a_n), |k| <= M, are placed in a periodic
        k-d tree; each of the grid^(n-1) probes i/grid is matched to its
        nearest J-point in the sup-norm torus metric.

        Args:
            max_m: The bound M (>= 0)
            grid: Probes per axis (default: settings.density_grid)
            eps: Approximation precision (default: the service's eps)

        Returns:
            The largest probe distance, rounded to the approximation precision
        """
        if max_m < 0:
            raise ValueError(f"M must be >= 0, got {max_m}")
        grid = get_settings().density_grid if grid is None else grid
        if grid < 1:
            raise ValueError(f"grid must be >= 1, got {grid}")
        eps = self.eps if eps is None else Fraction(eps)
        ratios = self._ratios(max_m, eps)

        exact_points = [
            [float(-k * r - math.floor(-k * r)) for r in ratios]
            for k in range(-max_m, max_m + 1)
        ]
        points = np.mod(np.array(exact_points, dtype=float), 1.0)
        tree = cKDTree(points, boxsize=1.0)

        axis = np.arange(grid, dtype=float) / grid
        probes = np.array(list(itertools.product(axis, repeat=len(ratios))), dtype=float)
        distances, _ = tree.query(probes, k=1, p=np.inf)
        radius = float(np.max(distances))
        logger.debug(
            "Covering radius at M=%d with %d probes: %f", max_m, len(probes), radius
        )
        return Fraction(radius).limit_denominator(math.ceil(1 / eps))

    def density_sequence(
        self,
        max_m: int,
        grid: Optional[int] = None
    ) -> List[Tuple[int, str, Fraction]]:
        """
        Density statistics at M/100, M/10 and M (floored, minimum 1, deduplicated).

        Returns:
            (M_k, statistic name, value) triples with name ``GAP`` for n = 2
            and ``RADIUS`` otherwise
        """
        bounds = sorted({max(1, max_m // 100), max(1, max_m // 10), max(1, max_m)})
        if self.flow.n == 2:
            return [(m, "GAP", self.density_gap(m)) for m in bounds]
        return [(m, "RADIUS", self.density_covering_radius(m, grid=grid)) for m in bounds]
