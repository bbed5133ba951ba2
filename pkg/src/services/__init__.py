"""
Service layer for qpsym.

This module exports the service classes and their exceptions. Each service
is built for one flow and may share a SymmetryService with the others.

Usage:
    from src.repositories import FlowFileRepository
    from src.services import SymmetryService, MultiplierSearchService

    flow = FlowFileRepository().load("flows/golden.flow")
    symmetry = SymmetryService(flow)
    multipliers = MultiplierSearchService(flow, symmetry).search_multipliers(1)
"""

from .symmetry_service import (
    SymmetryService,
    SymmetryError,
    NotAnEigenvectorError,
    NotUnimodularError,
    NoIntegerSolutionError,
    DimensionMismatchError,
    InvalidFlowError,
    build_flow,
    check_rational_independence,
    compose,
    invert,
)
from .group_service import (
    GroupStructureService,
    GroupStructureError,
    ModelTooLargeError,
    NotClosedError,
    InvalidModelParametersError,
    render_certificate,
)
from .multiplier_search import (
    MultiplierSearchService,
    SearchError,
    NotQuadraticError,
    NotRealQuadraticError,
    quadratic_fundamental_unit,
)
from .analysis_service import (
    AnalysisService,
    AnalysisError,
    RelationViolatedError,
    DimensionUnsupportedError,
)

# Export all services and exceptions
__all__ = [
    # Symmetry Service
    "SymmetryService",
    "SymmetryError",
    "NotAnEigenvectorError",
    "NotUnimodularError",
    "NoIntegerSolutionError",
    "DimensionMismatchError",
    "InvalidFlowError",
    "build_flow",
    "check_rational_independence",
    "compose",
    "invert",
    # Group Structure Service
    "GroupStructureService",
    "GroupStructureError",
    "ModelTooLargeError",
    "NotClosedError",
    "InvalidModelParametersError",
    "render_certificate",
    # Multiplier Search Service
    "MultiplierSearchService",
    "SearchError",
    "NotQuadraticError",
    "NotRealQuadraticError",
    "quadratic_fundamental_unit",
    # Analysis Service
    "AnalysisService",
    "AnalysisError",
    "RelationViolatedError",
    "DimensionUnsupportedError",
]
