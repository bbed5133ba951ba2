"""
Symmetry Service

Implements the correspondence between unimodular matrices and multipliers
for a linear flow on T^n with rationally independent frequencies a.

Every symmetry of such a flow lifts to an affine map x -> Bx + c with B
unimodular and B a = alpha a. The multiplier alpha determines B uniquely, so
the service can go in both directions:

1. multiplier_from_matrix: read alpha off the row ratios (B a)_i / a_i
2. matrix_from_multiplier: solve sum_j b_ij a_j = alpha a_i exactly for the
   integer rows of B

Composition and inversion of lifts are module-level functions since they do
not depend on the flow.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Sequence, Union


from src.models.flow import (
    AffineLift,
    Classification,
    FrequencyVector,
    IntMatrix,
    Multiplier,
    SymmetryClass,
)
from src.models.number_field import (
    AlgebraicNumber,
    FieldMismatchError,
    FieldSpec,
    Z,
    evaluate_polynomial,
    rational_matrix,
)


logger = logging.getLogger(__name__)

Time = Union[int, Fraction, AlgebraicNumber]


class SymmetryError(Exception):
    """Base exception for symmetry computations."""


class NotAnEigenvectorError(SymmetryError):
    """Raised when B a is not a scalar multiple of a."""


class NotUnimodularError(SymmetryError):
    """Raised when the matrix realizing a multiplier has |det| != 1."""


class NoIntegerSolutionError(SymmetryError):
    """Raised when no integer matrix B satisfies B a = alpha a."""


class DimensionMismatchError(SymmetryError):
    """Raised when lifts or matrices of different sizes are combined."""


class InvalidFlowError(SymmetryError):
    """Raised when the frequencies do not define a quasiperiodic flow."""


# ============================================================================
# Flow construction
# ============================================================================

def check_rational_independence(values: Sequence[AlgebraicNumber]) -> bool:
    """
    Check that the values admit no nonzero rational relation.

    Args:
        values: Field elements a_1..a_n of one field

    Returns:
        True iff the n x d coordinate matrix has rank n

    Raises:
        FieldMismatchError: If the values live in different fields

    Example:
        >>> check_rational_independence([one, phi])
        True
    """
    if not values:
        return False
    field = values[0].field
    for value in values[1:]:
        if value.field != field:
            raise FieldMismatchError("Frequencies must share one field")
    if len(values) > field.degree:
        return False
    return rational_matrix([v.coords for v in values]).rank() == len(values)


def build_flow(field: FieldSpec, coords: Sequence[Sequence]) -> FrequencyVector:
    """
    Build a validated FrequencyVector from power-basis coordinates.

    Args:
        field: The number field hosting the frequencies
        coords: One coordinate list per frequency a_i

    Returns:
        FrequencyVector with rationally independent entries

    Raises:
        InvalidFlowError: If n < 2, n > d, the entries are dependent or a_n = 0
    """
    values = tuple(AlgebraicNumber.of(field, c) for c in coords)
    n = len(values)
    if n < 2:
        raise InvalidFlowError(f"A torus flow needs n >= 2 frequencies, got {n}")
    if n > field.degree:
        raise InvalidFlowError(
            f"n = {n} frequencies cannot be independent in a field of degree {field.degree}"
        )
    if values[-1].is_zero():
        raise InvalidFlowError("The last frequency a_n must be nonzero")
    if not check_rational_independence(values):
        raise InvalidFlowError("Frequencies are rationally dependent")
    return FrequencyVector(field=field, a=values)


# ============================================================================
# Lift algebra
# ============================================================================

def _check_dimensions(f: AffineLift, g: AffineLift) -> None:
    if f.n != g.n:
        raise DimensionMismatchError(f"Cannot combine lifts on T^{f.n} and T^{g.n}")
    if f.translation[0].field != g.translation[0].field:
        raise DimensionMismatchError("Lifts carry translations from different fields")


def compose(f: AffineLift, g: AffineLift) -> AffineLift:
    """
    Composition f o g = (B_f B_g, B_f c_g + c_f), canonicalized.

    Raises:
        DimensionMismatchError: If the lifts act on tori of different dimension
    """
    _check_dimensions(f, g)
    shifted = f.matrix.apply(g.translation)
    return AffineLift.create(
        f.matrix @ g.matrix,
        tuple(x + y for x, y in zip(shifted, f.translation)),
    )


def invert(f: AffineLift) -> AffineLift:
    """Inverse lift (B^-1, -B^-1 c), canonicalized."""
    try:
        inverse = f.matrix.inverse()
    except ValueError as e:
        raise NotUnimodularError(str(e)) from e
    return AffineLift.create(inverse, tuple(-x for x in inverse.apply(f.translation)))


def deck_shift(f: AffineLift, m: Sequence[int]) -> AffineLift:
    """
    Add an integer vector to the translation.

    The result covers the same torus map as ``f`` and is left uncanonicalized.
    """
    if len(m) != f.n:
        raise DimensionMismatchError(f"Deck vector has {len(m)} entries, lift acts on T^{f.n}")
    return AffineLift(f.matrix, tuple(c + int(k) for c, k in zip(f.translation, m)))


def identity_lift(n: int, field: FieldSpec) -> AffineLift:
    zero = AlgebraicNumber.zero(field)
    return AffineLift(IntMatrix.identity(n), (zero,) * n)


def reversing_involution(n: int, field: FieldSpec) -> AffineLift:
    """The lift theta -> -theta, a reversing symmetry of every linear flow."""
    zero = AlgebraicNumber.zero(field)
    return AffineLift(IntMatrix.scalar(n, -1), (zero,) * n)


def characteristic_polynomial(matrix: IntMatrix) -> List[int]:
    """Integer coefficients of det(zI - B), low-to-high."""
    return [int(c) for c in reversed(matrix.to_sympy().charpoly(Z).all_coeffs())]


def charpoly_vanishes(matrix: IntMatrix, alpha: AlgebraicNumber) -> bool:
    return evaluate_polynomial(characteristic_polynomial(matrix), alpha).is_zero()


# ============================================================================
# SymmetryService
# ============================================================================

class SymmetryService:
    """
    Multiplier computations for one flow.

    Caches the inverses of the frequencies and the d x n coordinate matrix of
    a, so repeated queries (as run by the search and group tools) only pay
    for the per-candidate work.
    """

    def __init__(self, flow: FrequencyVector):
        """
        Initialize the symmetry service.

        Args:
            flow: A validated FrequencyVector (see ``build_flow``)
        """
        self.flow = flow
        self.field = flow.field
        self.n = flow.n
        self._inverses = tuple(a_i.inverse() for a_i in flow.a)
        # Column j holds the power-basis coordinates of a_j
        self._coordinates = rational_matrix(flow.coordinate_rows()).T
        self._matrix_cache: Dict[AlgebraicNumber, IntMatrix] = {}

    def _check_matrix(self, matrix: IntMatrix) -> None:
        if matrix.n != self.n:
            raise DimensionMismatchError(
                f"Matrix is {matrix.n}x{matrix.n}, flow lives on T^{self.n}"
            )

    def multiplier_from_matrix(self, matrix: IntMatrix) -> Multiplier:
        """
        Compute the multiplier realized by a matrix.

        Args:
            matrix: Candidate linear part B

        Returns:
            Multiplier with value alpha and witness B

        Raises:
            DimensionMismatchError: If B is not n x n
            NotAnEigenvectorError: If the row ratios (B a)_i / a_i disagree
            NotUnimodularError: If |det B| != 1

        Example:
            >>> service.multiplier_from_matrix(IntMatrix.of([[0, 1], [1, 1]])).value
            AlgebraicNumber(0 1)
        """
        self._check_matrix(matrix)
        image = matrix.apply(self.flow.a)
        alpha = image[0] * self._inverses[0]
        for i in range(1, self.n):
            # alpha a_i = (B a)_i avoids a second inversion
            if alpha * self.flow.a[i] != image[i]:
                raise NotAnEigenvectorError(
                    f"a is not an eigenvector of {matrix.format()}: row ratios disagree at row {i + 1}"
                )
        det = matrix.det()
        if abs(det) != 1:
            raise NotUnimodularError(f"Matrix {matrix.format()} has determinant {det}")
        return Multiplier(value=alpha, witness=matrix)

    def matrix_from_multiplier(self, alpha: AlgebraicNumber) -> IntMatrix:
        """
        Reconstruct the unique matrix B with B a = alpha a.

        Args:
            alpha: Candidate multiplier in the flow's field

        Returns:
            The unimodular matrix realizing alpha

        Raises:
            FieldMismatchError: If alpha lives in another field
            NoIntegerSolutionError: If no integer matrix realizes alpha
            NotUnimodularError: If the integer matrix has |det| != 1
        """
        if alpha.field != self.field:
            raise FieldMismatchError("Multiplier must live in the flow's field")
        cached = self._matrix_cache.get(alpha)
        if cached is not None:
            return cached
        if alpha.is_zero():
            raise NoIntegerSolutionError("Zero is never a multiplier")

        targets = rational_matrix([(alpha * a_i).coords for a_i in self.flow.a]).T
        try:
            solution, params = self._coordinates.gauss_jordan_solve(targets)
        except ValueError:
            raise NoIntegerSolutionError(
                f"alpha = {alpha.format()} maps a outside the span of a"
            )
        if params.shape[0] != 0:
            raise InvalidFlowError("Frequencies are rationally dependent")

        if not all(entry.is_integer for entry in solution):
            raise NoIntegerSolutionError(
                f"alpha = {alpha.format()} needs a non-integer matrix"
            )
        # Column i of the solution is row i of B
        matrix = IntMatrix.from_sympy(solution.T)
        det = matrix.det()
        if abs(det) != 1:
            raise NotUnimodularError(
                f"alpha = {alpha.format()} is realized by {matrix.format()} with determinant {det}"
            )
        self._matrix_cache[alpha] = matrix
        return matrix

    def multiplier_of(self, lift: AffineLift) -> Multiplier:
        return self.multiplier_from_matrix(lift.matrix)

    def flow_translation(self, t: Time) -> AffineLift:
        """
        Lift of the time-t flow map, (I, t a) reduced mod Z^n.

        ``t`` may be an integer, a Fraction or an element of the flow's field.
        """
        return AffineLift.create(
            IntMatrix.identity(self.n),
            tuple(a_i * t for a_i in self.flow.a),
        )

    def classify(self, lift: AffineLift) -> Classification:
        """
        Classify a symmetry lift by its multiplier.

        Raises:
            NotAnEigenvectorError: If the lift is not a symmetry
            NotUnimodularError: If the linear part is not unimodular
            InvalidFlowError: If alpha = +-1 but B != +-I, which independent
                frequencies rule out
        """
        multiplier = self.multiplier_of(lift)
        alpha = multiplier.value
        for sign, kind in ((1, SymmetryClass.SYMMETRY), (-1, SymmetryClass.REVERSING)):
            if alpha == sign:
                if not lift.matrix.is_scalar(sign):
                    raise InvalidFlowError(
                        f"Multiplier {sign} realized by {lift.matrix.format()}; "
                        "the frequencies cannot be independent"
                    )
                return Classification(kind=kind, alpha=alpha, multiplier=multiplier)
        return Classification(kind=SymmetryClass.GENERALIZED, alpha=alpha, multiplier=multiplier)

    def verify_time_rescaling(self, lift: AffineLift, t: Time) -> bool:
        """
        Check R o phi_t = phi_(alpha t) o R on the torus.

        Args:
            lift: A symmetry lift
            t: Flow time

        Returns:
            True iff both sides agree modulo Z^n
        """
        alpha = self.multiplier_of(lift).value
        left = compose(lift, self.flow_translation(t))
        right = compose(self.flow_translation(alpha * t), lift)
        return left == right

    def identity(self) -> AffineLift:
        return identity_lift(self.n, self.field)

    def reversing_involution(self) -> AffineLift:
        return reversing_involution(self.n, self.field)

    def translation(self, coords: Sequence) -> AffineLift:
        """Canonical pure translation by a vector of rationals or field elements."""
        values = tuple(
            c if isinstance(c, AlgebraicNumber) else AlgebraicNumber.from_rational(self.field, c)
            for c in coords
        )
        return AffineLift.create(IntMatrix.identity(self.n), values)
