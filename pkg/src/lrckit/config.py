"""
Configuration management for the LRC toolkit.

Every exhaustive search in the toolkit is guarded by a work budget so that an
oversized instance fails fast with BudgetExceededError instead of hanging.
All budgets have desk-scale defaults and can be overridden from the
environment, e.g.:

    LRCKIT_BUDGET_MESSAGES=67108864 lrckit verify big.code.yaml
"""

from functools import lru_cache
from typing import Literal

from pydantic import field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings. Library calls take explicit keyword overrides; these
    are only the fallbacks used when a caller passes None."""

    model_config = SettingsConfigDict(
        env_prefix="LRCKIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # ===== Enumeration budgets =====

    # Nonzero messages walked by minimum_distance. Messages are enumerated up
    # to scalar multiples, so the guarded count is (q^k - 1) / (q - 1).
    budget_messages: int = 2**24
    # Column subsets / vector selections walked by the locality checkers and
    # independent_selection_property.
    budget_subsets: int = 2**22
    # Ambient vectors walked by the exhaustive deep-hole search (q^n).
    budget_vectors: int = 2**24
    # Square submatrices inspected by all_square_submatrices_invertible.
    submatrix_work_limit: int = 10**6

    # ===== Construction =====

    # Full construction attempts before RetriesExhaustedError. Random
    # generator matrices at moderate q fail the distance check often enough
    # (a few percent success at q=31 for n=12) that single-digit retry
    # counts are not a safe default.
    max_retries: int = 100
    # Candidate vectors drawn for one greedy step before the attempt restarts.
    max_candidate_draws: int = 2000

    # Process-pool width for message enumeration and Monte Carlo trials.
    # 1 keeps everything in-process and bit-reproducible.
    workers: int = 1

    # ===== Logging =====
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    log_format: Literal["json", "console"] = "console"

    # ===== Validators =====

    @field_validator(
        "budget_messages",
        "budget_subsets",
        "budget_vectors",
        "submatrix_work_limit",
    )
    @classmethod
    def validate_budget(cls, v: int) -> int:
        if v < 1:
            raise ValueError("enumeration budgets must be at least 1")
        return v

    @field_validator("max_retries", "max_candidate_draws")
    @classmethod
    def validate_retries(cls, v: int) -> int:
        if v < 1:
            raise ValueError("retry counts must be at least 1")
        return v

    @field_validator("workers")
    @classmethod
    def validate_workers(cls, v: int) -> int:
        if v < 1:
            raise ValueError("workers must be at least 1")
        return v


@lru_cache
def _load_settings() -> Settings:
    return Settings()


# Set by the CLI once flags are parsed; None falls back to the environment.
_active: Settings | None = None


def get_settings() -> Settings:
    """
    Get the active settings instance.

    Usage:
        from lrckit.config import get_settings
        budget = get_settings().budget_messages
    """
    return _active if _active is not None else _load_settings()


def use_settings(settings: Settings | None) -> None:
    """Install ``settings`` for this process; None restores the env-loaded ones."""
    global _active
    _active = settings


def resolve(value: int | None, default: int) -> int:
    """Explicit keyword wins over the configured default."""
    return default if value is None else value
