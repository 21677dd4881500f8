"""Tests for settings loading and the logging setup."""

import logging

import pytest
from pydantic import ValidationError

from revpla.log import setup_logging
from revpla.settings import RevPLASettings, load_settings
from revpla.synth.builder import CopyStrategy


@pytest.fixture(autouse=True)
def clean_env(monkeypatch, tmp_path):
    """Isolate from user config files and REVPLA_ variables."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path))
    for var in ("REVPLA_WORKERS", "REVPLA_OUTPUT_FORMAT", "REVPLA_COPY_STRATEGY"):
        monkeypatch.delenv(var, raising=False)


def test_defaults():
    """Test default values."""
    settings = load_settings()
    assert settings.max_inputs == 16
    assert settings.workers == 4
    assert settings.copy_strategy is CopyStrategy.LINEAR
    assert settings.output_format == "text"
    assert settings.calibration == "table1"
    assert settings.effective_log_level() == "WARNING"


def test_config_file_sections_flatten(tmp_path):
    """Test nested tables map to section_key fields."""
    config = tmp_path / "custom.toml"
    config.write_text('workers = 2\n[output]\nformat = "json"\n[log]\nlevel = "info"\n')
    settings = load_settings(config_file=str(config))
    assert settings.workers == 2
    assert settings.output_format == "json"
    assert settings.effective_log_level() == "INFO"


def test_config_file_discovered(tmp_path):
    """Test .revpla.toml in the working directory is picked up."""
    (tmp_path / ".revpla.toml").write_text('copy_strategy = "tree"\n')
    assert load_settings().copy_strategy is CopyStrategy.TREE


def test_precedence(tmp_path, monkeypatch):
    """Test overrides beat environment, which beats the file."""
    config = tmp_path / "custom.toml"
    config.write_text("workers = 2\nmax_inputs = 8\n")
    monkeypatch.setenv("REVPLA_WORKERS", "7")
    settings = load_settings(config_file=str(config))
    assert settings.workers == 7
    assert settings.max_inputs == 8
    assert load_settings(config_file=str(config), workers=3).workers == 3


def test_none_overrides_ignored():
    """Test unset CLI options do not clobber other sources."""
    assert load_settings(workers=None, verbose=None).workers == 4


def test_verbose_forces_debug():
    """Test verbose lowers the log level."""
    assert load_settings(verbose=True).effective_log_level() == "DEBUG"


def test_invalid_values_rejected():
    """Test field validation."""
    with pytest.raises(ValidationError):
        RevPLASettings(workers=0)
    with pytest.raises(ValidationError):
        RevPLASettings(output_format="xml")
    with pytest.raises(ValidationError):
        RevPLASettings(max_inputs=17)


def test_broken_config_falls_back(tmp_path):
    """Test an unparsable config file is skipped."""
    config = tmp_path / "broken.toml"
    config.write_text("workers = [\n")
    assert load_settings(config_file=str(config)).workers == 4


def test_setup_logging_single_handler():
    """Test repeated setup keeps one handler at the requested level."""
    setup_logging("INFO")
    setup_logging("DEBUG", timestamps=True)
    logger = logging.getLogger("revpla")
    assert len(logger.handlers) == 1
    assert logger.level == logging.DEBUG
