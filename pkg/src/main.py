"""
qpsym - Main Command-Line Application

Entry point for the qpsym command-line tool, which computes and verifies the
generalized symmetry group of a linear flow on the n-torus.

Usage:
    python -m src.main check flows/golden.flow
    python -m src.main search flows/golden.flow --height 1 --out golden.results
    python -m src.main verify flows/golden.flow --matrix='0,1;1,1'
    python -m src.main group flows/golden.flow --gen=-1,0 --q 3 --words 2
    python -m src.main density flows/golden.flow --max-m 1000
"""

import argparse
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv

from src.cli import ExitCode
from src.cli.commands import (
    cmd_check,
    cmd_density,
    cmd_group,
    cmd_load_results,
    cmd_search,
    cmd_unit,
    cmd_verify,
)
from src.cli.report import ReportWriter
from src.config import get_settings
from src.logging_config import configure_logging
from src.models.number_field import NumberFieldError
from src.repositories.flow_file_repository import FlowFileError
from src.repositories.results_repository import ResultsFileError
from src.services.analysis_service import AnalysisError
from src.services.group_service import (
    GroupStructureError,
    InvalidModelParametersError,
    ModelTooLargeError,
    NotClosedError,
)
from src.services.multiplier_search import SearchError
from src.services.symmetry_service import (
    DimensionMismatchError,
    InvalidFlowError,
    NoIntegerSolutionError,
    NotAnEigenvectorError,
    NotUnimodularError,
)


logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """argparse parser that reports usage errors with the parse exit code."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(ExitCode.PARSE, f"{self.prog}: error: {message}\n")


# Exception families in match order; the first matching entry wins
EXIT_CODES = (
    ((FlowFileError, ResultsFileError, DimensionMismatchError), ExitCode.PARSE),
    ((NotAnEigenvectorError, NotUnimodularError, NoIntegerSolutionError), ExitCode.NOT_A_SYMMETRY),
    ((ModelTooLargeError, NotClosedError), ExitCode.RESOURCE),
    (
        (InvalidFlowError, NumberFieldError, SearchError, AnalysisError,
         InvalidModelParametersError, GroupStructureError, ValueError),
        ExitCode.INVALID_FLOW,
    ),
)


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="qpsym",
        description="Exact symmetry computations for linear flows on the n-torus.",
    )
    parser.add_argument("--log-level", default=None, help="Logging level (default: settings)")
    parser.add_argument("--log-format", choices=["text", "json"], default=None)
    parser.add_argument("--element-cap", type=int, default=None,
                        help="Maximum torsion model size")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    check = sub.add_parser("check", help="Validate a flow file")
    check.add_argument("flow_file")
    check.set_defaults(handler=cmd_check)

    search = sub.add_parser("search", help="Search multipliers up to a height")
    search.add_argument("flow_file")
    search.add_argument("--height", type=int, default=None)
    search.add_argument("--out", default=None, help="Results file to write")
    search.set_defaults(handler=cmd_search)

    verify = sub.add_parser("verify", help="Classify and check a candidate lift")
    verify.add_argument("flow_file")
    verify.add_argument("--matrix", required=True, help="Row-major matrix, e.g. 0,1;1,1")
    verify.add_argument("--translation", default=None, help="Translation, e.g. 1/2,0|0,0")
    verify.set_defaults(handler=cmd_verify)

    group = sub.add_parser("group", help="Certify the semidirect-product structure")
    group.add_argument("flow_file")
    group.add_argument("--gen", action="append", default=None,
                       help="Generator coordinates, e.g. --gen=-1,0 (repeatable; default -1)")
    group.add_argument("--q", type=int, default=None, help="Torsion denominator")
    group.add_argument("--words", type=int, default=None, help="Word length bound")
    group.add_argument("--require-nonabelian", action="store_true",
                       help="Fail unless a non-commuting pair is found")
    group.set_defaults(handler=cmd_group)

    density = sub.add_parser("density", help="Empirical density of the set J")
    density.add_argument("flow_file")
    density.add_argument("--max-m", dest="max_m", type=int, required=True)
    density.add_argument("--grid", type=int, default=None, help="Probes per axis for n > 2")
    density.set_defaults(handler=cmd_density)

    unit = sub.add_parser("unit", help="Fundamental unit of a real quadratic field")
    unit.add_argument("flow_file")
    unit.add_argument("--height", type=int, default=None, help="Also list +-u^k within this height")
    unit.set_defaults(handler=cmd_unit)

    load = sub.add_parser("load-results", help="Validate and re-emit a results file")
    load.add_argument("flow_file")
    load.add_argument("results_file")
    load.set_defaults(handler=cmd_load_results)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        Process exit code
    """
    load_dotenv()
    args = build_parser().parse_args(argv)

    settings = get_settings()
    overrides = {}
    if args.element_cap is not None:
        overrides["element_cap"] = args.element_cap
    if args.log_level is not None:
        overrides["log_level"] = args.log_level.upper()
    if args.log_format is not None:
        overrides["log_format"] = args.log_format
    if overrides:
        settings = settings.model_copy(update=overrides)

    configure_logging(settings.log_level, settings.log_format)
    writer = ReportWriter()

    try:
        return int(args.handler(args, settings, writer))
    except Exception as e:
        for families, code in EXIT_CODES:
            if isinstance(e, families):
                logger.error("%s failed: %s", args.command, e)
                writer.note(f"error: {e}")
                return int(code)
        raise


if __name__ == "__main__":
    sys.exit(main())
