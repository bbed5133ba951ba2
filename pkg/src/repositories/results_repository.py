"""
Results file repository.

Persists search results, one multiplier per line:

    MULT<TAB>0 1<TAB>MATRIX<TAB>0,1;1,1<TAB>DET<TAB>-1

Lines starting with ``#`` are comments. Loading re-validates every line
against the flow so a stale or edited file cannot smuggle in a
non-multiplier.
"""

import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

from src.models.flow import FrequencyVector, IntMatrix, Multiplier
from src.models.number_field import AlgebraicNumber
from src.services.symmetry_service import SymmetryError, SymmetryService


logger = logging.getLogger(__name__)


class ResultsFileError(Exception):
    """Raised when a results file is malformed or disagrees with its flow."""


class ResultsRepository:
    """
    Repository for multiplier results files.
    """

    HEADER = "# qpsym multiplier results"

    def __init__(self, flow: FrequencyVector, symmetry_service: Optional[SymmetryService] = None):
        """
        Initialize the results repository.

        Args:
            flow: The flow the results belong to
            symmetry_service: Shared SymmetryService used to re-validate lines
        """
        self.flow = flow
        self.symmetry = symmetry_service or SymmetryService(flow)

    @staticmethod
    def format_line(multiplier: Multiplier) -> str:
        return "\t".join([
            "MULT", multiplier.value.format(),
            "MATRIX", multiplier.witness.format(),
            "DET", str(multiplier.witness.det()),
        ])

    def dump(self, multipliers: Sequence[Multiplier]) -> str:
        header = [self.HEADER, f"# min_poly = {self.flow.field.describe()}"]
        return "\n".join(header + [self.format_line(m) for m in multipliers]) + "\n"

    def save(self, multipliers: Sequence[Multiplier], path: Union[str, Path]) -> None:
        Path(path).write_text(self.dump(multipliers), encoding="utf-8")
        logger.info("Wrote %d multipliers to %s", len(multipliers), path)

    def parse_line(self, line: str, lineno: int = 0) -> Multiplier:
        """
        Parse and re-validate one results line.

        Raises:
            ResultsFileError: If the line is malformed or is not a multiplier of the flow
        """
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 6 or fields[0::2] != ["MULT", "MATRIX", "DET"]:
            raise ResultsFileError(f"line {lineno}: expected MULT/MATRIX/DET fields, got {line!r}")
        try:
            alpha = AlgebraicNumber.of(self.flow.field, fields[1].split())
            matrix = IntMatrix.of(
                [int(x) for x in row.split(",")] for row in fields[3].split(";")
            )
            det = int(fields[5])
        except ValueError as e:
            raise ResultsFileError(f"line {lineno}: {e}")

        try:
            multiplier = self.symmetry.multiplier_from_matrix(matrix)
        except SymmetryError as e:
            raise ResultsFileError(f"line {lineno}: {e}")
        if multiplier.value != alpha:
            raise ResultsFileError(
                f"line {lineno}: matrix realizes {multiplier.value.format()}, not {alpha.format()}"
            )
        if matrix.det() != det:
            raise ResultsFileError(f"line {lineno}: determinant is {matrix.det()}, file says {det}")
        return multiplier

    def parse(self, text: str) -> List[Multiplier]:
        results = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            results.append(self.parse_line(line, lineno))
        return results

    def load(self, path: Union[str, Path]) -> List[Multiplier]:
        """
        Load and validate a results file.

        Raises:
            ResultsFileError: If the file cannot be read or any line is invalid
        """
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ResultsFileError(f"Cannot read results file {path}: {e}")
        return self.parse(text)
