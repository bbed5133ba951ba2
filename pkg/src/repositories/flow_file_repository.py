"""
Flow file repository.

Reads and writes the line-oriented flow spec format:

    # golden-ratio flow
    min_poly = -1 -1 1
    root = 1 2
    n = 2
    a1 = 1 0
    a2 = 0 1
"""

import logging
import re
from pathlib import Path
from typing import Dict, Union

from pydantic import ValidationError

from src.models.flow import FrequencyVector
from src.schemas.flow_spec import FlowSpecSchema
from src.services.symmetry_service import build_flow


logger = logging.getLogger(__name__)

FREQUENCY_KEY = re.compile(r"^a([1-9][0-9]*)$")


class FlowFileError(Exception):
    """Base exception for flow file errors."""


class ParseError(FlowFileError):
    """Raised when a flow file is malformed."""


class FlowFileRepository:
    """
    Repository for flow spec files.

    Parsing is split in two: ``parse`` checks structure only and returns a
    FlowSpecSchema; ``load`` additionally builds the field and the validated
    FrequencyVector.
    """

    def parse(self, text: str, source: str = "<text>") -> FlowSpecSchema:
        """
        Parse flow spec text into its validated structure.

        Args:
            text: File content
            source: Name used in error messages

        Returns:
            FlowSpecSchema

        Raises:
            ParseError: On malformed lines, duplicate, missing or unknown keys,
                wrong arity or a non-monic polynomial
        """
        entries: Dict[str, str] = {}
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParseError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
            key, value = (part.strip() for part in line.split("=", 1))
            if key not in ("min_poly", "root", "n") and not FREQUENCY_KEY.match(key):
                raise ParseError(f"{source}:{lineno}: unknown key {key!r}")
            if key in entries:
                raise ParseError(f"{source}:{lineno}: duplicate key {key!r}")
            if not value:
                raise ParseError(f"{source}:{lineno}: empty value for {key!r}")
            entries[key] = value

        for required in ("min_poly", "root", "n"):
            if required not in entries:
                raise ParseError(f"{source}: missing '{required} =' line")

        try:
            n = int(entries["n"])
            min_poly = [int(c) for c in entries["min_poly"].split()]
        except ValueError as e:
            raise ParseError(f"{source}: expected integers: {e}")

        indices = sorted(int(FREQUENCY_KEY.match(k).group(1)) for k in entries if FREQUENCY_KEY.match(k))
        if indices != list(range(1, len(indices) + 1)) or len(indices) != n:
            raise ParseError(f"{source}: expected frequencies a1..a{n}, found {['a%d' % i for i in indices]}")

        root = entries["root"].split()
        if len(root) != 2:
            raise ParseError(f"{source}: 'root' needs two endpoints, got {len(root)}")

        try:
            return FlowSpecSchema(
                min_poly=min_poly,
                root=tuple(root),
                n=n,
                frequencies=[entries[f"a{i}"].split() for i in range(1, n + 1)],
            )
        except ValidationError as e:
            messages = "; ".join(err["msg"] for err in e.errors())
            raise ParseError(f"{source}: {messages}") from e

    def read_spec(self, path: Union[str, Path]) -> FlowSpecSchema:
        """
        Read and structurally validate a flow file.

        Raises:
            ParseError: If the file cannot be read or is malformed
        """
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(f"Cannot read flow file {path}: {e}")
        return self.parse(text, source=str(path))

    def load(self, path: Union[str, Path]) -> FrequencyVector:
        """
        Load a flow file into a validated FrequencyVector.

        Raises:
            ParseError: If the file is malformed
            InvalidFieldSpecError: If the root interval does not isolate a simple root
            InvalidFlowError: If the frequencies are not rationally independent
        """
        spec = self.read_spec(path)
        flow = build_flow(spec.to_field_spec(), spec.frequency_coords())
        logger.info("Loaded flow on T^%d over [%s] from %s", flow.n, flow.field.describe(), path)
        return flow

    def dump(self, flow: FrequencyVector) -> str:
        lo, hi = flow.field.root_interval
        lines = [
            f"min_poly = {flow.field.describe()}",
            f"root = {lo} {hi}",
            f"n = {flow.n}",
        ]
        lines += [f"a{i} = {a_i.format()}" for i, a_i in enumerate(flow.a, start=1)]
        return "\n".join(lines) + "\n"

    def save(self, flow: FrequencyVector, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dump(flow), encoding="utf-8")
