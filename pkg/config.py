"""
Configuration Module

This module manages the configuration settings for codecosets runs,
including the enumeration caps and their environment overrides.
"""

import logging
import os
from dataclasses import dataclass, field
from typing import List, Optional

logger = logging.getLogger(__name__)

# Default configuration values
DEFAULT_ORDER = "drl"
DEFAULT_MAX_CANONICAL_FORMS = 2 ** 16
DEFAULT_MAX_CODEWORDS = 2 ** 20
DEFAULT_MAX_SEARCH_LENGTH = 12
DEFAULT_MAX_BRUTE_FORCE_LENGTH = 8
DEFAULT_THREADS = 4

ORDER_KINDS = ("drl", "lex")
DECODE_METHODS = ("auto", "binary", "matphi")
SUBCOMMANDS = ("matphi", "rbasis", "decode", "decode-all", "equiv", "stats", "weights")

# Environment variables overriding the caps
ENV_MAX_FORMS = "CODECOSETS_MAX_FORMS"
ENV_MAX_CODEWORDS = "CODECOSETS_MAX_CODEWORDS"
ENV_MAX_SEARCH_N = "CODECOSETS_MAX_SEARCH_N"


@dataclass
class RunConfig:
    """Configuration class for a single codecosets invocation."""

    subcommand: str
    inputs: List[str]
    order: str = DEFAULT_ORDER
    variable_order: Optional[List[int]] = None
    vectors: List[str] = field(default_factory=list)
    sigma: Optional[str] = None
    method: str = "auto"
    levels: List[int] = field(default_factory=list)
    output: Optional[str] = None
    xlsx: Optional[str] = None
    table: bool = False
    details: bool = False
    max_forms: int = DEFAULT_MAX_CANONICAL_FORMS
    max_codewords: int = DEFAULT_MAX_CODEWORDS
    max_search_length: int = DEFAULT_MAX_SEARCH_LENGTH
    threads: int = DEFAULT_THREADS
    debug: bool = False

    def validate(self) -> None:
        """
        Check the configuration for internal consistency.

        Raises:
            ValueError: If a field holds an unusable value
        """
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"Unknown subcommand: {self.subcommand}")
        if self.order not in ORDER_KINDS:
            raise ValueError(f"Unknown order kind: {self.order}")
        if self.method not in DECODE_METHODS:
            raise ValueError(f"Unknown decode method: {self.method}")

        expected_inputs = 2 if self.subcommand == "equiv" else 1
        if len(self.inputs) != expected_inputs:
            raise ValueError(
                f"Subcommand {self.subcommand} takes {expected_inputs} code file(s), "
                f"got {len(self.inputs)}"
            )

        for name in ("max_forms", "max_codewords", "max_search_length", "threads"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")

        if any(level < 0 for level in self.levels):
            raise ValueError(f"Levels must be nonnegative, got {self.levels}")

    def __str__(self) -> str:
        """String representation of the configuration."""
        return (
            f"RunConfig(subcommand={self.subcommand}, inputs={self.inputs}, "
            f"order={self.order}, max_forms={self.max_forms}, "
            f"max_codewords={self.max_codewords}, "
            f"max_search_length={self.max_search_length}, threads={self.threads})"
        )


def env_int(name: str, default: int) -> int:
    """
    Read a positive integer from the environment.

    Args:
        name: Environment variable name
        default: Value used when the variable is unset or unusable

    Returns:
        The parsed integer or the default
    """
    raw = os.environ.get(name)
    if raw is None or not raw.strip():
        return default

    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring non-integer {name}={raw!r}")
        return default

    if value <= 0:
        logger.warning(f"Ignoring non-positive {name}={value}")
        return default

    return value


def default_caps() -> dict:
    """Caps after applying the environment overrides."""
    return {
        "max_forms": env_int(ENV_MAX_FORMS, DEFAULT_MAX_CANONICAL_FORMS),
        "max_codewords": env_int(ENV_MAX_CODEWORDS, DEFAULT_MAX_CODEWORDS),
        "max_search_length": env_int(ENV_MAX_SEARCH_N, DEFAULT_MAX_SEARCH_LENGTH),
    }
