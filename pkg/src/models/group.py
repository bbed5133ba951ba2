"""
Group Structure Data Model

Finite stand-ins for the symmetry group of a linear flow: a subgroup of
multipliers given by generators, the word ball those generators span, the
torsion model built over it, and the certificate produced by exhaustive
checks of the semidirect-product structure.
"""

from dataclasses import dataclass
from typing import ClassVar, Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.models.flow import AffineLift, FrequencyVector, IntMatrix, Multiplier
from src.models.number_field import AlgebraicNumber


# A word letter is (generator index, +1 or -1)
Letter = Tuple[int, int]


@dataclass(frozen=True)
class MultiplierSubgroup:
    """
    Subgroup of the multiplier group generated by a list of multipliers.

    Inverses are not stored; they are computed from the witness matrices.
    """

    flow: FrequencyVector
    generators: Tuple[Multiplier, ...]

    def is_trivial(self) -> bool:
        return all(g.value == 1 for g in self.generators)

    def describe(self) -> str:
        if not self.generators:
            return "<1>"
        return "<" + ", ".join(g.value.format(sep=",") for g in self.generators) + ">"


@dataclass(frozen=True)
class WordEntry:
    """A distinct matrix reached by a word in the generators."""

    matrix: IntMatrix
    alpha: AlgebraicNumber
    word: Tuple[Letter, ...]

    @property
    def length(self) -> int:
        return len(self.word)


@dataclass(frozen=True, eq=False)
class TorsionModel:
    """
    Finite model of the symmetry group over a multiplier subgroup.

    Elements are the lifts whose translations lie in (1/q)Z^n mod Z^n and
    whose matrices are words of length at most ``word_length_bound``.

    Attributes:
        subgroup: The multiplier subgroup the matrices come from
        q: Torsion denominator
        word_length_bound: Maximum word length of the matrix parts
        elements: The model's lifts, all canonical
        words: Word ball keyed by matrix, in breadth-first order
    """

    subgroup: MultiplierSubgroup
    q: int
    word_length_bound: int
    elements: FrozenSet[AffineLift]
    words: Dict[IntMatrix, WordEntry]

    @property
    def size(self) -> int:
        return len(self.elements)

    def translations(self) -> List[AffineLift]:
        return sorted((e for e in self.elements if e.is_translation()), key=lift_sort_key)

    def matrix_part(self) -> List[AffineLift]:
        """Zero-translation elements, the image of the splitting map."""
        return sorted((e for e in self.elements if e.has_zero_translation()), key=lift_sort_key)

    def sorted_elements(self) -> List[AffineLift]:
        return sorted(self.elements, key=lift_sort_key)


def lift_sort_key(lift: AffineLift):
    return (lift.matrix.rows, tuple(c.coords for c in lift.translation))


class StructureCertificate(BaseModel):
    """
    Outcome of the exhaustive structure checks on a TorsionModel.

    Every flag records a check that was executed, never an assumption.
    """

    model_config = ConfigDict(frozen=True)

    split_verified: bool
    kernel_normal: bool
    trivial_intersection: bool
    factorization_unique: bool
    nonabelian: bool
    matrices_commute: bool
    word_length_bound: int = Field(..., ge=1)
    q: int = Field(..., ge=1)
    size: int = Field(..., ge=1)
    witness: Optional[Tuple[str, str]] = None

    # Report order of the flag lines
    FLAG_NAMES: ClassVar[Tuple[str, ...]] = (
        "split_verified",
        "kernel_normal",
        "trivial_intersection",
        "factorization_unique",
        "nonabelian",
        "matrices_commute",
    )

    def flags(self) -> Dict[str, bool]:
        return {name: getattr(self, name) for name in self.FLAG_NAMES}

    def semidirect_verified(self) -> bool:
        """True when the model splits as translations x| matrix part."""
        return (
            self.split_verified
            and self.kernel_normal
            and self.trivial_intersection
            and self.factorization_unique
        )
