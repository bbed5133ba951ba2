"""
Multiplier Search Service

Finds the multipliers of a flow up to a height bound. Every multiplier is an
algebraic integer, so the search enumerates elements of Z[beta] with
power-basis coefficients in [-height, height] and keeps those for which
matrix_from_multiplier produces a unimodular matrix.

Real quadratic fields have a closed description of their units: every unit
of Z[beta] is +-u^k for the fundamental unit u, which is found from the Pell
equations X^2 - D Y^2 = +-4 with D the discriminant of the minimal
polynomial.
"""

import itertools
import logging
from fractions import Fraction
from math import isqrt
from typing import Iterator, List, Optional, Tuple

from sympy import continued_fraction_periodic
from sympy.solvers.diophantine.diophantine import diop_DN

from src.models.flow import FrequencyVector, Multiplier
from src.models.number_field import AlgebraicNumber, FieldSpec
from src.services.symmetry_service import (
    NoIntegerSolutionError,
    NotUnimodularError,
    SymmetryService,
)


logger = logging.getLogger(__name__)

# Pell solutions with Y up to this bound are found by direct scan
SMALL_Y_SCAN = 64


class SearchError(Exception):
    """Base exception for multiplier search errors."""


class NotQuadraticError(SearchError):
    """Raised when a quadratic-only operation receives a field of other degree."""


class NotRealQuadraticError(SearchError):
    """Raised when the quadratic field has non-positive discriminant."""


class MultiplierSearchService:
    """
    Bounded-height multiplier search for one flow.
    """

    def __init__(
        self,
        flow: FrequencyVector,
        symmetry_service: Optional[SymmetryService] = None
    ):
        """
        Initialize the search service.

        Args:
            flow: A validated FrequencyVector
            symmetry_service: Shared SymmetryService for the same flow
        """
        self.flow = flow
        self.symmetry = symmetry_service or SymmetryService(flow)

    def candidates(self, height: int) -> Iterator[AlgebraicNumber]:
        """Nonzero integer-coordinate elements, lexicographic by coefficient tuple."""
        if height < 0:
            raise ValueError(f"height must be >= 0, got {height}")
        field = self.flow.field
        for coeffs in itertools.product(range(-height, height + 1), repeat=field.degree):
            if any(coeffs):
                yield AlgebraicNumber.of(field, coeffs)

    def search_multipliers(self, height: int) -> List[Multiplier]:
        """
        All multipliers with power-basis coefficients bounded by ``height``.

        Args:
            height: Maximum absolute value of a coefficient (>= 0)

        Returns:
            Multipliers sorted lexicographically by coefficient tuple

        Example:
            >>> [m.value.format() for m in service.search_multipliers(1)][:2]
            ['-1 -1', '-1 0']
        """
        found = []
        tried = 0
        for alpha in self.candidates(height):
            tried += 1
            try:
                matrix = self.symmetry.matrix_from_multiplier(alpha)
            except (NoIntegerSolutionError, NotUnimodularError) as e:
                logger.debug("Candidate %s rejected: %s", alpha.format(), e)
                continue
            found.append(Multiplier(value=alpha, witness=matrix))

        found.sort(key=Multiplier.sort_key)
        logger.info(
            "Search at height %d: %d of %d candidates are multipliers",
            height, len(found), tried
        )
        return found


# ============================================================================
# Real quadratic fields
# ============================================================================

def _quadratic_data(field: FieldSpec) -> Tuple[int, int, int]:
    """
    Coefficients and discriminant of a real quadratic min_poly.

    Raises:
        NotQuadraticError: If the degree is not 2
        NotRealQuadraticError: If the discriminant is not positive
    """
    if field.degree != 2:
        raise NotQuadraticError(f"Field has degree {field.degree}, expected 2")
    c0, c1, _ = field.min_poly
    discriminant = c1 * c1 - 4 * c0
    if discriminant <= 0:
        raise NotRealQuadraticError(f"Discriminant {discriminant} is not positive")
    return c0, c1, discriminant


def sqrt_discriminant(field: FieldSpec) -> AlgebraicNumber:
    """The positive square root of the discriminant, +-(2 beta + c1)."""
    _, c1, _ = _quadratic_data(field)
    root = AlgebraicNumber.generator(field) * 2 + c1
    return root if root.sign() > 0 else -root


def quadratic_norm(x: AlgebraicNumber) -> Fraction:
    """Norm x * x' where x' replaces beta by its conjugate -c1 - beta."""
    _, c1, _ = _quadratic_data(x.field)
    x0, x1 = x.coords
    conjugate = AlgebraicNumber.of(x.field, [x0 - c1 * x1, -x1])
    return (x * conjugate).coords[0]


def _pell_candidates(discriminant: int) -> List[Tuple[int, int]]:
    """Solutions (X, Y), Y != 0, of X^2 - D Y^2 = +-4."""
    found = set()
    for y in range(1, SMALL_Y_SCAN + 1):
        for target in (discriminant * y * y - 4, discriminant * y * y + 4):
            if target >= 0 and isqrt(target) ** 2 == target:
                found.add((isqrt(target), y))
    for n in (4, -4):
        for x, y in diop_DN(discriminant, n):
            found.add((abs(int(x)), abs(int(y))))
    for n in (1, -1):
        for x, y in diop_DN(discriminant, n):
            found.add((2 * abs(int(x)), 2 * abs(int(y))))
    return sorted(
        (x, y) for x, y in found
        if y != 0 and x * x - discriminant * y * y in (4, -4)
    )


def quadratic_fundamental_unit(field: FieldSpec) -> AlgebraicNumber:
    """
    Fundamental unit u > 1 of the order Z[beta].

    Units of Z[beta] are (X + Y sqrt(D)) / 2 with X^2 - D Y^2 = +-4; the
    smallest one above 1 generates the unit group modulo sign.

    Args:
        field: A real quadratic FieldSpec

    Returns:
        The fundamental unit as an element of the field

    Raises:
        NotQuadraticError: If the degree is not 2
        NotRealQuadraticError: If the discriminant is not positive

    Example:
        >>> quadratic_fundamental_unit(golden).format()
        '0 1'
    """
    _, _, discriminant = _quadratic_data(field)
    root_d = sqrt_discriminant(field)

    best = None
    for x, y in _pell_candidates(discriminant):
        unit = (root_d * y + x) / 2
        if not unit.is_integral() or not unit.inverse().is_integral():
            continue
        if best is None or unit < best:
            best = unit
    if best is None:
        raise SearchError(f"No unit found for discriminant {discriminant}")
    logger.info("Fundamental unit of [%s]: %s", field.describe(), best.format())
    return best


def quadratic_continued_fraction(field: FieldSpec) -> Tuple[List[int], List[int]]:
    """
    Continued fraction of beta as (pre-period, period).

    Example:
        >>> quadratic_continued_fraction(golden)
        ([1], [1])
    """
    _, c1, discriminant = _quadratic_data(field)
    sign = (AlgebraicNumber.generator(field) * 2 + c1).sign()
    expansion = continued_fraction_periodic(-c1, 2, discriminant, sign)
    prefix = [int(term) for term in expansion if not isinstance(term, list)]
    period = [int(term) for term in expansion[-1]] if expansion and isinstance(expansion[-1], list) else []
    return prefix, period


def units_from_fundamental(unit: AlgebraicNumber, height: int) -> List[AlgebraicNumber]:
    """
    The elements +-unit^k whose coefficients are bounded by ``height``.

    The beta-coefficient of unit^k grows in |k|, so the powers are generated
    outward from k = 0 until it exceeds the height in both directions.

    Returns:
        Elements sorted lexicographically by coefficient tuple
    """

    def within(x: AlgebraicNumber) -> bool:
        return all(abs(c) <= height for c in x.coords)

    found = set()
    for base in (unit, unit.inverse()):
        power = AlgebraicNumber.one(unit.field)
        while abs(power.coords[-1]) <= height:
            if within(power):
                found.update((power, -power))
            power = power * base
    return sorted(found, key=lambda x: x.coords)

