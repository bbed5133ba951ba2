"""
Report writer for the CLI.
"""

import sys
from typing import Optional, TextIO


class ReportWriter:
    """
    Writes tab-separated report records to one stream and prose to another.

    Attributes:
        out: Stream for machine-readable records (default: stdout)
        err: Stream for human-readable notes (default: stderr)
    """

    def __init__(self, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        self.out = out or sys.stdout
        self.err = err or sys.stderr

    def line(self, keyword: str, *fields) -> None:
        """Emit ``KEYWORD<TAB>field<TAB>...``."""
        self.raw("\t".join([keyword, *(str(f) for f in fields)]))

    def raw(self, record: str) -> None:
        print(record, file=self.out)

    def note(self, text: str) -> None:
        print(text, file=self.err)
