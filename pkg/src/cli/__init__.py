"""
Command-line front end for qpsym.

Machine-readable report lines go to stdout as tab-separated, uppercase
keyword-prefixed records; prose and log records go to stderr.
"""

import enum


class ExitCode(enum.IntEnum):
    """Process exit codes."""

    OK = 0
    PARSE = 1
    INVALID_FLOW = 2
    NOT_A_SYMMETRY = 3
    RESOURCE = 4


__all__ = ["ExitCode"]
