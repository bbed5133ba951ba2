"""
Flow and Symmetry Data Model

Value types for a linear flow on the n-torus and its affine symmetries:

- FrequencyVector: the constant vector field (a_1, ..., a_n) over one number field
- IntMatrix: an n x n integer matrix, the linear part of a symmetry lift
- AffineLift: a lift x -> Bx + c of a torus map to R^n
- Multiplier: a scalar alpha together with a matrix B satisfying B a = alpha a

All values are immutable and hashable so they can be collected in sets and
used as dictionary keys by the group tools.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Tuple, Union

from sympy import Matrix

from src.models.number_field import AlgebraicNumber, FieldSpec


@dataclass(frozen=True)
class FrequencyVector:
    """
    Coefficients a_1..a_n of the constant vector field on T^n.

    Structural checks only; rational independence is established by
    ``build_flow`` in the symmetry service.
    """

    field: FieldSpec
    a: Tuple[AlgebraicNumber, ...]

    def __post_init__(self):
        for value in self.a:
            if value.field != self.field:
                raise ValueError("All frequencies must live in the flow's field")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def degree(self) -> int:
        return self.field.degree

    def coordinate_rows(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(value.coords for value in self.a)


@dataclass(frozen=True)
class IntMatrix:
    """Square integer matrix stored row-major."""

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        size = len(self.rows)
        if size == 0 or any(len(row) != size for row in self.rows):
            raise ValueError(f"IntMatrix must be square and non-empty, got {self.rows}")

    @classmethod
    def of(cls, rows: Iterable[Iterable[int]]) -> "IntMatrix":
        return cls(tuple(tuple(int(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.scalar(n, 1)

    @classmethod
    def scalar(cls, n: int, k: int) -> "IntMatrix":
        return cls(tuple(tuple(k if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_sympy(cls, matrix: Matrix) -> "IntMatrix":
        return cls(tuple(
            tuple(int(matrix[i, j]) for j in range(matrix.cols))
            for i in range(matrix.rows)
        ))

    @property
    def n(self) -> int:
        return len(self.rows)

    def to_sympy(self) -> Matrix:
        return Matrix(self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if other.n != self.n:
            raise ValueError(f"Cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        cols = list(zip(*other.rows))
        return IntMatrix(tuple(
            tuple(sum(x * y for x, y in zip(row, col)) for col in cols)
            for row in self.rows
        ))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(tuple(tuple(-x for x in row) for row in self.rows))

    def apply(self, vector: Sequence[Union[AlgebraicNumber, Fraction]]) -> tuple:
        """Matrix-vector product over field elements or rationals."""
        if len(vector) != self.n:
            raise ValueError(f"Vector of length {len(vector)} for a {self.n}x{self.n} matrix")
        zero = vector[0] * 0
        result = []
        for row in self.rows:
            acc = zero
            for b, v in zip(row, vector):
                if b:
                    acc = acc + v * b
            result.append(acc)
        return tuple(result)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        return int(self.to_sympy().det(method="bareiss"))

    def is_unimodular(self) -> bool:
        return abs(self.det()) == 1

    def is_scalar(self, k: int) -> bool:
        return self == IntMatrix.scalar(self.n, k)

    def inverse(self) -> "IntMatrix":
        """
        Integer inverse adj(B) / det(B).

        Raises:
            ValueError: If the matrix is not unimodular
        """
        det = self.det()
        if abs(det) != 1:
            raise ValueError(f"Matrix {self.format()} has determinant {det}, no integer inverse")
        return IntMatrix.from_sympy(self.to_sympy().adjugate() * det)

    def format(self) -> str:
        """Row-major text form ``0,1;1,1``."""
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    def __repr__(self) -> str:
        return f"IntMatrix({self.format()})"


def canonical_translation(
    translation: Sequence[AlgebraicNumber]
) -> Tuple[AlgebraicNumber, ...]:
    """Reduce each coordinate into the fundamental domain [0, 1)."""
    return tuple(c.fractional_part() for c in translation)


def format_translation(translation: Sequence[AlgebraicNumber]) -> str:
    """Text form ``1/2,0|0,1/2``: power-basis coordinates per component."""
    return "|".join(c.format(sep=",") for c in translation)


@dataclass(frozen=True)
class AffineLift:
    """
    A lift x -> Bx + c of a torus map.

    The constructor stores the translation as given; ``create`` reduces it to
    the canonical fundamental domain, where two lifts describe the same torus
    map exactly when they are equal. Every operation of the symmetry service
    returns canonical lifts.

    Attributes:
        matrix: Linear part B
        translation: Translation c, one field element per coordinate
    """

    matrix: IntMatrix
    translation: Tuple[AlgebraicNumber, ...]

    def __post_init__(self):
        if len(self.translation) != self.matrix.n:
            raise ValueError(
                f"Translation has {len(self.translation)} coordinates, matrix is "
                f"{self.matrix.n}x{self.matrix.n}"
            )

    @classmethod
    def create(cls, matrix: IntMatrix, translation: Sequence[AlgebraicNumber]) -> "AffineLift":
        return cls(matrix, canonical_translation(translation))

    @property
    def n(self) -> int:
        return self.matrix.n

    def canonical(self) -> "AffineLift":
        return AffineLift.create(self.matrix, self.translation)

    def is_canonical(self) -> bool:
        return self.translation == canonical_translation(self.translation)

    def same_symmetry(self, other: "AffineLift") -> bool:
        """True when both lifts cover the same torus map."""
        return self.canonical() == other.canonical()

    def is_translation(self) -> bool:
        return self.matrix.is_scalar(1)

    def has_zero_translation(self) -> bool:
        return all(c.is_zero() for c in self.translation)

    def format(self) -> str:
        return f"{self.matrix.format()}@{format_translation(self.translation)}"


@dataclass(frozen=True)
class Multiplier:
    """A multiplier alpha and the unimodular matrix B with B a = alpha a."""

    value: AlgebraicNumber
    witness: IntMatrix

    def sort_key(self) -> Tuple[Fraction, ...]:
        return self.value.coords


class SymmetryClass(str, enum.Enum):
    """Kind of a symmetry, named as the reports print it."""

    SYMMETRY = "Symmetry"
    REVERSING = "Reversing"
    GENERALIZED = "Generalized"


@dataclass(frozen=True)
class Classification:
    kind: SymmetryClass
    alpha: AlgebraicNumber
    multiplier: Optional[Multiplier] = None
