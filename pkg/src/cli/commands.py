"""
CLI command handlers.

Each handler takes the parsed arguments, the settings and a ReportWriter and
returns an ExitCode. Domain exceptions not handled here propagate to
``src.main``, which maps them to exit codes.
"""

import argparse
import logging
from fractions import Fraction

from src.cli import ExitCode
from src.cli.parsing import parse_element, parse_matrix, parse_translation
from src.cli.report import ReportWriter
from src.config import Settings
from src.models.flow import AffineLift
from src.models.number_field import AlgebraicNumber
from src.repositories.flow_file_repository import FlowFileRepository
from src.repositories.results_repository import ResultsRepository
from src.services.analysis_service import AnalysisService
from src.services.group_service import GroupStructureService, render_certificate
from src.services.multiplier_search import (
    MultiplierSearchService,
    quadratic_continued_fraction,
    quadratic_fundamental_unit,
    quadratic_norm,
    units_from_fundamental,
)
from src.services.symmetry_service import (
    NotAnEigenvectorError,
    NotUnimodularError,
    SymmetryService,
    charpoly_vanishes,
    check_rational_independence,
)


logger = logging.getLogger(__name__)

# Flow time used for the time-rescaling check in ``verify``
RESCALING_TIME = Fraction(1, 3)


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def cmd_check(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> ExitCode:
    """Validate a flow file: field, independence and a_n != 0."""
    spec = FlowFileRepository().read_spec(args.flow_file)
    field = spec.to_field_spec()
    values = [AlgebraicNumber.of(field, coords) for coords in spec.frequency_coords()]

    independent = check_rational_independence(values)
    last_nonzero = not values[-1].is_zero()

    writer.line("FIELD", field.describe())
    writer.line("DEGREE", field.degree)
    writer.line("DIMENSION", len(values))
    writer.line("INDEPENDENT", _yes_no(independent))
    writer.line("LAST_NONZERO", _yes_no(last_nonzero))
    if not independent:
        writer.note("Frequencies admit a rational relation; the flow is not quasiperiodic.")
    return ExitCode.OK if independent and last_nonzero else ExitCode.INVALID_FLOW


def cmd_search(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> ExitCode:
    """Search multipliers up to a height and optionally save them."""
    flow = FlowFileRepository().load(args.flow_file)
    height = settings.default_search_height if args.height is None else args.height
    symmetry = SymmetryService(flow)

    results = MultiplierSearchService(flow, symmetry_service=symmetry).search_multipliers(height)
    for multiplier in results:
        writer.raw(ResultsRepository.format_line(multiplier))
    writer.line("COUNT", len(results))

    if args.out:
        ResultsRepository(flow, symmetry_service=symmetry).save(results, args.out)
        writer.note(f"Saved {len(results)} multipliers to {args.out}")
    return ExitCode.OK


def cmd_verify(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> ExitCode:
    """Classify a candidate lift and run the exact checks on it."""
    flow = FlowFileRepository().load(args.flow_file)
    matrix = parse_matrix(args.matrix)
    if args.translation:
        translation = parse_translation(args.translation, flow.field, flow.n)
    else:
        translation = (AlgebraicNumber.zero(flow.field),) * matrix.n
    lift = AffineLift.create(matrix, translation)

    symmetry = SymmetryService(flow)
    try:
        classification = symmetry.classify(lift)
    except (NotAnEigenvectorError, NotUnimodularError) as e:
        writer.line("NOT_A_SYMMETRY", str(e))
        return ExitCode.NOT_A_SYMMETRY

    alpha = classification.alpha
    analysis = AnalysisService(flow, symmetry_service=symmetry, eps=settings.eps)
    residual = analysis.pde_residual(lift, alpha)

    writer.line("ALPHA", alpha.format())
    writer.line("APPROX", f"{float(alpha.approximate(settings.eps)):.12f}")
    writer.line("CLASS", classification.kind.value)
    writer.line("CHARPOLY_ROOT", _yes_no(charpoly_vanishes(matrix, alpha)))
    writer.line("DEGREE", alpha.minimal_degree())
    writer.line("PDE_RESIDUAL", "zero" if all(r.is_zero() for r in residual) else "nonzero")
    writer.line("TIME_RESCALING", _yes_no(symmetry.verify_time_rescaling(lift, RESCALING_TIME)))
    return ExitCode.OK


def cmd_group(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> ExitCode:
    """Build a torsion model and certify its semidirect-product structure."""
    flow = FlowFileRepository().load(args.flow_file)
    q = settings.default_torsion_q if args.q is None else args.q
    words = settings.default_word_bound if args.words is None else args.words

    service = GroupStructureService(flow, element_cap=settings.element_cap)
    if args.gen:
        subgroup = service.subgroup([parse_element(g, flow.field) for g in args.gen])
    else:
        subgroup = service.reversing_group()

    split_ok = service.verify_splitting(subgroup, words)
    model = service.build_torsion_model(subgroup, q, words)
    certificate = service.certify_structure(model)

    writer.line("GROUP", subgroup.describe())
    writer.line("SIZE", model.size)
    writer.line("CHECK", "splitting", "PASS" if split_ok else "FAIL")
    for record in render_certificate(certificate):
        writer.raw(record)

    passed = split_ok and certificate.semidirect_verified() and certificate.matrices_commute
    if args.require_nonabelian:
        passed = passed and certificate.nonabelian
    return ExitCode.OK if passed else ExitCode.NOT_A_SYMMETRY


def cmd_density(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> ExitCode:
    """Report density statistics of the set J at three scales of M."""
    flow = FlowFileRepository().load(args.flow_file)
    grid = settings.density_grid if args.grid is None else args.grid
    analysis = AnalysisService(flow, eps=settings.eps)

    for m, name, value in analysis.density_sequence(args.max_m, grid=grid):
        writer.line("DENSITY", f"M={m}", f"{name}={value}", f"APPROX={float(value):.9f}")
    return ExitCode.OK


def cmd_unit(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> ExitCode:
    """Report the fundamental unit of a real quadratic flow field."""
    flow = FlowFileRepository().load(args.flow_file)
    unit = quadratic_fundamental_unit(flow.field)
    prefix, period = quadratic_continued_fraction(flow.field)

    writer.line("UNIT", unit.format())
    writer.line("APPROX", f"{float(unit.approximate(settings.eps)):.12f}")
    writer.line("NORM", quadratic_norm(unit))
    writer.line(
        "CONTINUED_FRACTION",
        " ".join(str(t) for t in prefix),
        " ".join(str(t) for t in period),
    )
    if args.height is not None:
        for power in units_from_fundamental(unit, args.height):
            writer.line("POWER", power.format())
    return ExitCode.OK


def cmd_load_results(args: argparse.Namespace, settings: Settings, writer: ReportWriter) -> ExitCode:
    """Validate a results file against its flow and re-emit it."""
    flow = FlowFileRepository().load(args.flow_file)
    results = ResultsRepository(flow).load(args.results_file)
    for multiplier in results:
        writer.raw(ResultsRepository.format_line(multiplier))
    writer.line("COUNT", len(results))
    return ExitCode.OK
