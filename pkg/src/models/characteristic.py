"""
Characteristic form of an affine symmetry lift.

Solving sum_j a_j df_i/dx_j = alpha a_i along characteristics leaves the
coefficients b_ij for j < n and the constants c_i free, and forces the last
column:

    b_in = alpha a_i / a_n - sum_{j<n} b_ij a_j / a_n
"""

from dataclasses import dataclass
from typing import Tuple

from src.models.number_field import AlgebraicNumber


@dataclass(frozen=True)
class CharacteristicForm:
    """
    Free data of a lift plus the last column it determines.

    Attributes:
        alpha: The multiplier
        h_coeffs: n rows of the n - 1 free coefficients b_ij, j < n
        h_consts: The constants c_i
        derived_last_column: b_in recomputed from the relation
    """

    alpha: AlgebraicNumber
    h_coeffs: Tuple[Tuple[AlgebraicNumber, ...], ...]
    h_consts: Tuple[AlgebraicNumber, ...]
    derived_last_column: Tuple[AlgebraicNumber, ...]

    @property
    def n(self) -> int:
        return len(self.h_consts)

    def last_column_is_integral(self) -> bool:
        return all(b.is_rational() and b.is_integral() for b in self.derived_last_column)
