"""
Value types for qpsym.

This module exports the number field, flow, group and characteristic-form
models. All values are immutable.
"""

from .number_field import (
    AlgebraicNumber,
    FieldSpec,
    Rational,
    make_field_spec,
    NumberFieldError,
    InvalidFieldSpecError,
    FieldMismatchError,
    DivisionByZeroError,
    ReduciblePolynomialError,
)
from .flow import (
    AffineLift,
    Classification,
    FrequencyVector,
    IntMatrix,
    Multiplier,
    SymmetryClass,
)
from .group import MultiplierSubgroup, StructureCertificate, TorsionModel, WordEntry
from .characteristic import CharacteristicForm

# Export all models and their exceptions
__all__ = [
    # Number field
    "AlgebraicNumber",
    "FieldSpec",
    "Rational",
    "make_field_spec",
    "NumberFieldError",
    "InvalidFieldSpecError",
    "FieldMismatchError",
    "DivisionByZeroError",
    "ReduciblePolynomialError",
    # Flow and symmetries
    "AffineLift",
    "Classification",
    "FrequencyVector",
    "IntMatrix",
    "Multiplier",
    "SymmetryClass",
    # Group structure
    "MultiplierSubgroup",
    "StructureCertificate",
    "TorsionModel",
    "WordEntry",
    # Analysis
    "CharacteristicForm",
]
