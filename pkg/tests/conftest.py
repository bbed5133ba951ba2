"""
Pytest configuration and shared fixtures for qpsym tests.

This module provides the reference fields and flows used throughout the
suite, services built on them, and flow files written to a temporary
directory for repository and CLI tests.
"""

from fractions import Fraction

import pytest

from src.config import get_settings
from src.models.number_field import AlgebraicNumber, FieldSpec
from src.services import (
    AnalysisService,
    GroupStructureService,
    MultiplierSearchService,
    SymmetryService,
    build_flow,
)


# Settings
# --------

@pytest.fixture(autouse=True)
def clear_settings_cache():
    """
    Drop the cached Settings before and after each test.

    Tests that patch QPSYM_* environment variables see a fresh instance.
    """
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


# Fields
# ------

GOLDEN = FieldSpec(min_poly=(-1, -1, 1), root_interval=(1, 2))
SILVER = FieldSpec(min_poly=(-2, 0, 1), root_interval=(1, 2))
SQRT3 = FieldSpec(min_poly=(-3, 0, 1), root_interval=(1, 2))
PLASTIC = FieldSpec(min_poly=(-1, -1, 0, 1), root_interval=(1, 2))


@pytest.fixture
def golden_field():
    """Q(phi) with phi^2 = phi + 1, phi in (1, 2)."""
    return GOLDEN


@pytest.fixture
def silver_field():
    """Q(sqrt 2)."""
    return SILVER


@pytest.fixture
def sqrt3_field():
    """Q(sqrt 3)."""
    return SQRT3


@pytest.fixture
def plastic_field():
    """Q(beta) with beta^3 = beta + 1, the plastic number."""
    return PLASTIC


@pytest.fixture
def phi(golden_field):
    return AlgebraicNumber.generator(golden_field)


@pytest.fixture
def plastic(plastic_field):
    return AlgebraicNumber.generator(plastic_field)


# Flows
# -----

@pytest.fixture
def golden_flow(golden_field):
    """a = (1, phi) on T^2."""
    return build_flow(golden_field, [[1, 0], [0, 1]])


@pytest.fixture
def silver_flow(silver_field):
    """a = (1, sqrt 2) on T^2."""
    return build_flow(silver_field, [[1, 0], [0, 1]])


@pytest.fixture
def plastic_flow(plastic_field):
    """a = (1, beta, beta^2) on T^3."""
    return build_flow(plastic_field, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])


# Services
# --------

@pytest.fixture
def golden_symmetry(golden_flow):
    return SymmetryService(golden_flow)


@pytest.fixture
def silver_symmetry(silver_flow):
    return SymmetryService(silver_flow)


@pytest.fixture
def plastic_symmetry(plastic_flow):
    return SymmetryService(plastic_flow)


@pytest.fixture
def golden_group(golden_flow, golden_symmetry):
    return GroupStructureService(golden_flow, symmetry_service=golden_symmetry)


@pytest.fixture
def golden_search(golden_flow, golden_symmetry):
    return MultiplierSearchService(golden_flow, symmetry_service=golden_symmetry)


@pytest.fixture
def golden_analysis(golden_flow, golden_symmetry):
    return AnalysisService(golden_flow, symmetry_service=golden_symmetry, eps=Fraction(1, 10**9))


@pytest.fixture
def plastic_analysis(plastic_flow, plastic_symmetry):
    return AnalysisService(plastic_flow, symmetry_service=plastic_symmetry, eps=Fraction(1, 10**9))


# Flow files
# ----------

GOLDEN_FLOW_TEXT = """\
# golden-ratio flow
min_poly = -1 -1 1
root = 1 2
n = 2
a1 = 1 0
a2 = 0 1
"""

SILVER_FLOW_TEXT = """\
min_poly = -2 0 1
root = 1 2
n = 2
a1 = 1 0
a2 = 0 1
"""

PLASTIC_FLOW_TEXT = """\
min_poly = -1 -1 0 1
root = 1 2
n = 3
a1 = 1 0 0
a2 = 0 1 0
a3 = 0 0 1
"""


@pytest.fixture
def write_flow(tmp_path):
    """Factory writing flow text to a file and returning its path."""
    def _write(text: str, name: str = "test.flow") -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def golden_flow_file(write_flow):
    return write_flow(GOLDEN_FLOW_TEXT, "golden.flow")


@pytest.fixture
def silver_flow_file(write_flow):
    return write_flow(SILVER_FLOW_TEXT, "silver.flow")


@pytest.fixture
def plastic_flow_file(write_flow):
    return write_flow(PLASTIC_FLOW_TEXT, "plastic.flow")
