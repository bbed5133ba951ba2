"""
Logging setup shared by the CLI and scripts.

Log records always go to stderr so that machine-readable report lines on
stdout stay parseable.
"""

import logging
import sys
from typing import Optional, TextIO

from pythonjsonlogger import jsonlogger


TEXT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'

# Marker attribute so repeated configuration replaces our handler only
_HANDLER_FLAG = "_qpsym_handler"


def configure_logging(
    level: str = "WARNING",
    fmt: str = "text",
    stream: Optional[TextIO] = None
) -> logging.Logger:
    """
    Configure the ``src`` package logger.

    Args:
        level: Logging level name (DEBUG, INFO, ...)
        fmt: ``text`` for the plain formatter, ``json`` for python-json-logger
        stream: Destination stream (default: stderr)

    Returns:
        The configured package logger
    """
    package_logger = logging.getLogger("src")

    for handler in list(package_logger.handlers):
        if getattr(handler, _HANDLER_FLAG, False):
            package_logger.removeHandler(handler)

    handler = logging.StreamHandler(stream or sys.stderr)
    if fmt == "json":
        handler.setFormatter(jsonlogger.JsonFormatter(JSON_FORMAT))
    else:
        handler.setFormatter(logging.Formatter(TEXT_FORMAT))
    setattr(handler, _HANDLER_FLAG, True)

    package_logger.addHandler(handler)
    package_logger.setLevel(level.upper())
    return package_logger
