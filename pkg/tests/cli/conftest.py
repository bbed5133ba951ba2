"""
CLI test fixtures.
"""

import logging

import pytest

from src.main import main


@pytest.fixture(autouse=True)
def reset_package_logger():
    """Drop handlers main() attached to the ``src`` logger."""
    yield
    package_logger = logging.getLogger("src")
    for handler in list(package_logger.handlers):
        package_logger.removeHandler(handler)
    package_logger.setLevel(logging.NOTSET)


@pytest.fixture
def run_cli(capsys):
    """
    Run the CLI in-process.

    Returns:
        Callable taking argv and returning (exit code, stdout lines, stderr text)
    """
    def _run(*argv):
        code = main(list(argv))
        captured = capsys.readouterr()
        return code, captured.out.splitlines(), captured.err
    return _run


def records(lines, keyword):
    """Tab-split fields of the stdout records starting with ``keyword``."""
    return [line.split("\t")[1:] for line in lines if line.split("\t")[0] == keyword]
