"""
Parsers for command-line values.

Matrices are row-major with ``;`` between rows and ``,`` between entries
(``0,1;1,1``). A field element is its comma-separated power-basis
coordinates (``-1,0``). A translation vector joins one field element per
torus coordinate with ``|`` (``1/2,0|0,1/2``).
"""

from typing import Tuple

from src.models.flow import IntMatrix
from src.models.number_field import AlgebraicNumber, FieldSpec
from src.repositories.flow_file_repository import ParseError


def parse_matrix(text: str) -> IntMatrix:
    """
    Raises:
        ParseError: If the text is not a square integer matrix
    """
    try:
        return IntMatrix.of(
            [int(x) for x in row.split(",")] for row in text.strip().split(";")
        )
    except ValueError as e:
        raise ParseError(f"Invalid matrix {text!r}: {e}")


def parse_element(text: str, field: FieldSpec) -> AlgebraicNumber:
    """
    Raises:
        ParseError: If the coordinates do not parse or have the wrong count
    """
    try:
        return AlgebraicNumber.of(field, text.strip().split(","))
    except ValueError as e:
        raise ParseError(f"Invalid field element {text!r}: {e}")


def parse_translation(text: str, field: FieldSpec, n: int) -> Tuple[AlgebraicNumber, ...]:
    """
    Raises:
        ParseError: If the vector does not have n field-element components
    """
    parts = text.strip().split("|")
    if len(parts) != n:
        raise ParseError(f"Translation {text!r} has {len(parts)} components, expected {n}")
    return tuple(parse_element(part, field) for part in parts)
