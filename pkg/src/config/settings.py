"""
Configuration management for the abelian structure toolkit.
Handles environment variables and engine settings.
"""

import logging
import os
from dataclasses import dataclass, replace
from typing import Optional

from dotenv import load_dotenv


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


@dataclass(frozen=True)
class EngineConfig:
    """Caps for the Groebner engine and the p-basis search."""
    reduction_step_cap: int = 1_000_000
    buchberger_step_cap: int = 200_000
    order_exponent_cap: int = 64
    staircase_cap: int = 10_000_000
    exhaustive_permutation_cap: int = 40_320

    def __post_init__(self):
        """Validate configuration after initialization."""
        if self.reduction_step_cap <= 0:
            raise ValueError("ABST_REDUCTION_STEP_CAP must be positive")
        if self.buchberger_step_cap <= 0:
            raise ValueError("ABST_BUCHBERGER_STEP_CAP must be positive")
        if self.order_exponent_cap <= 0:
            raise ValueError("ABST_ORDER_EXPONENT_CAP must be positive")
        if self.staircase_cap <= 0:
            raise ValueError("ABST_STAIRCASE_CAP must be positive")
        if self.exhaustive_permutation_cap <= 0:
            raise ValueError("ABST_EXHAUSTIVE_PERMUTATION_CAP must be positive")

    def with_order_cap(self, cap: Optional[int]) -> "EngineConfig":
        """Copy with an overridden element-order cap (CLI --cap)."""
        if cap is None:
            return self
        return replace(self, order_exponent_cap=cap)


@dataclass(frozen=True)
class DedekindConfig:
    """Settings for the module builders and the sentinel loop."""
    sentinel_padding: int = 2
    sentinel_max_iterations: int = 12
    check_irreducible: bool = True

    def __post_init__(self):
        """Validate Dedekind configuration."""
        if self.sentinel_padding < 1:
            raise ValueError("ABST_SENTINEL_PADDING must be at least 1")
        if self.sentinel_max_iterations < 2:
            raise ValueError("ABST_SENTINEL_MAX_ITERATIONS must be at least 2")


@dataclass(frozen=True)
class CliConfig:
    """Command-line surface configuration."""
    log_level: str = "WARNING"
    json_indent: int = 2

    def __post_init__(self):
        """Validate CLI configuration."""
        if not isinstance(logging.getLevelName(self.log_level.upper()), int):
            raise ValueError(f"ABST_LOG_LEVEL is not a logging level: {self.log_level}")
        if self.json_indent < 0:
            raise ValueError("ABST_JSON_INDENT must be non-negative")

    @property
    def level(self) -> int:
        """Numeric logging level."""
        return logging.getLevelName(self.log_level.upper())


class ConfigManager:
    """Centralized configuration manager."""

    def __init__(self, env_file: Optional[str] = None):
        """Initialize configuration manager."""
        # Load environment variables
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()

        self._engine_config = None
        self._dedekind_config = None
        self._cli_config = None

    @property
    def engine(self) -> EngineConfig:
        """Get engine configuration."""
        if self._engine_config is None:
            self._engine_config = EngineConfig(
                reduction_step_cap=int(os.getenv("ABST_REDUCTION_STEP_CAP", "1000000")),
                buchberger_step_cap=int(os.getenv("ABST_BUCHBERGER_STEP_CAP", "200000")),
                order_exponent_cap=int(os.getenv("ABST_ORDER_EXPONENT_CAP", "64")),
                staircase_cap=int(os.getenv("ABST_STAIRCASE_CAP", "10000000")),
                exhaustive_permutation_cap=int(os.getenv("ABST_EXHAUSTIVE_PERMUTATION_CAP", "40320")),
            )
        return self._engine_config

    @property
    def dedekind(self) -> DedekindConfig:
        """Get module builder configuration."""
        if self._dedekind_config is None:
            self._dedekind_config = DedekindConfig(
                sentinel_padding=int(os.getenv("ABST_SENTINEL_PADDING", "2")),
                sentinel_max_iterations=int(os.getenv("ABST_SENTINEL_MAX_ITERATIONS", "12")),
                check_irreducible=_env_bool("ABST_CHECK_IRREDUCIBLE", "True"),
            )
        return self._dedekind_config

    @property
    def cli(self) -> CliConfig:
        """Get CLI configuration."""
        if self._cli_config is None:
            self._cli_config = CliConfig(
                log_level=os.getenv("ABST_LOG_LEVEL", "WARNING"),
                json_indent=int(os.getenv("ABST_JSON_INDENT", "2")),
            )
        return self._cli_config

    def validate(self) -> bool:
        """Validate all configurations."""
        try:
            # This will trigger validation in __post_init__
            _ = self.engine
            _ = self.dedekind
            _ = self.cli
            return True
        except ValueError as e:
            raise ValueError(f"Configuration validation failed: {e}")
