"""Configuration management using Pydantic Settings."""

import logging
import os
from pathlib import Path
from typing import Any, Literal

import toml
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

from .pla.plaspec import MAX_EXHAUSTIVE_INPUTS
from .synth.builder import CopyStrategy

logger = logging.getLogger(__name__)

CONFIG_PATHS = (
    ".revpla.toml",
    "revpla.toml",
    "~/.revpla/config.toml",
    "~/.config/revpla/config.toml",
)


class RevPLASettings(BaseSettings):
    """Application settings with Pydantic validation."""

    model_config = SettingsConfigDict(
        env_prefix="REVPLA_",
        extra="ignore",
        case_sensitive=False,
    )

    def __init__(self, **kwargs: Any):
        """Initialize settings, merging a TOML config file under the overrides."""
        config_file = kwargs.get("config_file") or self._find_config_file()
        if config_file:
            # Keyword overrides beat REVPLA_ variables, which beat the file.
            from_file = {
                key: value
                for key, value in _read_config(config_file).items()
                if f"REVPLA_{key.upper()}" not in os.environ
            }
            kwargs = {**from_file, **kwargs}
        super().__init__(**kwargs)

    # Synthesis
    max_inputs: int = Field(
        MAX_EXHAUSTIVE_INPUTS,
        ge=1,
        le=MAX_EXHAUSTIVE_INPUTS,
        description="Largest input count accepted for synthesis and exhaustive checks",
    )
    copy_strategy: CopyStrategy = Field(
        CopyStrategy.LINEAR, description="Fan-out network shape: linear or tree"
    )

    # Verification
    workers: int = Field(4, ge=1, description="Worker threads for equivalence checks")

    # Power
    calibration: str = Field(
        "table1", description="Built-in calibration name or calibration file path"
    )

    # CLI Configuration
    output_format: Literal["text", "json", "csv"] = Field(
        "text", description="Report format: text, json, csv"
    )
    log_level: str = Field("WARNING", description="Log level")
    verbose: bool = Field(False, description="Enable verbose (DEBUG) logging")
    timestamps: bool = Field(False, description="Stamp reports with generation time")

    config_file: str | None = Field(None, description="Path to configuration file")

    def _find_config_file(self) -> str | None:
        """Find configuration file in standard locations."""
        for path in CONFIG_PATHS:
            expanded_path = Path(path).expanduser()
            if expanded_path.exists():
                return str(expanded_path)
        return None

    def effective_log_level(self) -> str:
        """Log level after applying ``verbose``."""
        return "DEBUG" if self.verbose else self.log_level.upper()


def _read_config(config_file: str) -> dict[str, Any]:
    path = Path(config_file).expanduser()
    if not path.exists():
        logger.warning("config file %s does not exist; using defaults", path)
        return {}
    try:
        with open(path, encoding="utf-8") as f:
            config_data = toml.load(f)
    except (OSError, toml.TomlDecodeError) as e:
        logger.warning("ignoring config file %s: %s", path, e)
        return {}

    # Flatten nested TOML structure for Pydantic
    flattened: dict[str, Any] = {}
    for section, values in config_data.items():
        if isinstance(values, dict):
            for key, value in values.items():
                flattened[f"{section}_{key}"] = value
        else:
            flattened[section] = values
    return flattened


def load_settings(config_file: str | None = None, **overrides: Any) -> RevPLASettings:
    """Load settings with optional overrides; ``None`` overrides are ignored."""
    overrides = {k: v for k, v in overrides.items() if v is not None}
    return RevPLASettings(config_file=config_file, **overrides)
