"""
Runtime configuration for qpsym.

Settings are read from ``QPSYM_*`` environment variables (or a local ``.env``
file) so the CLI, the services and the tests share one typed source of
defaults. Command-line flags override them for a single invocation.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Literal

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings.

    Attributes:
        element_cap: Maximum number of elements a torsion model may hold
        approximation_eps: Rational precision used by the density checks
        refinement_gcd_check_after: Bisection steps before sign determination
            probes the minimal polynomial for a zero divisor
        log_level: Logging level name for the ``src`` logger
        log_format: ``text`` or ``json`` log records on stderr
        default_search_height: Height used by ``search`` when none is given
        default_word_bound: Word length bound used by ``group``
        default_torsion_q: Torsion denominator used by ``group``
        density_grid: Probe grid resolution for covering-radius checks
    """

    model_config = SettingsConfigDict(
        env_prefix="QPSYM_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    element_cap: int = Field(1_000_000, ge=1)
    approximation_eps: str = Field("1/1000000000")
    refinement_gcd_check_after: int = Field(64, ge=1)
    log_level: str = Field("WARNING")
    log_format: Literal["text", "json"] = "text"
    default_search_height: int = Field(1, ge=0)
    default_word_bound: int = Field(2, ge=1)
    default_torsion_q: int = Field(3, ge=1)
    density_grid: int = Field(20, ge=1)

    @field_validator("approximation_eps")
    @classmethod
    def validate_eps(cls, v: str) -> str:
        """
        Validate that the precision is a positive rational.

        Raises:
            ValueError: If the value does not parse or is not positive
        """
        try:
            value = Fraction(v)
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"approximation_eps must be a rational like 1/1000000000: {e}")
        if value <= 0:
            raise ValueError("approximation_eps must be positive")
        return v

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        level = v.strip().upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"Unknown log level: {v}")
        return level

    @property
    def eps(self) -> Fraction:
        return Fraction(self.approximation_eps)


@lru_cache
def get_settings() -> Settings:
    """Return the process-wide settings instance."""
    return Settings()
