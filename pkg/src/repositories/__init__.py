"""
Repository layer for qpsym.

This module exports the file repositories: flow spec files in, results
files in and out.
"""

from .flow_file_repository import FlowFileRepository, FlowFileError, ParseError
from .results_repository import ResultsRepository, ResultsFileError

# Export all repositories
__all__ = [
    "FlowFileRepository",
    "FlowFileError",
    "ParseError",
    "ResultsRepository",
    "ResultsFileError",
]
