"""Loading device/activity parameter files and calibration tables."""

import logging
from pathlib import Path
from typing import Any

import toml
from pydantic import BaseModel, ValidationError

from ..errors import ParameterError, UsageError
from .model import ActivityParams, DeviceParams
from .table import BUILTIN_CALIBRATIONS, CalibrationTable

logger = logging.getLogger(__name__)


class ParameterSet(BaseModel):
    """Contents of a parameter file."""

    device: DeviceParams
    activity: ActivityParams | None = None


def _read_toml(path: str | Path, what: str) -> dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as f:
            return toml.load(f)
    except FileNotFoundError as e:
        raise UsageError(f"{what} not found: {path}") from e
    except toml.TomlDecodeError as e:
        raise ParameterError(f"{what} {path} is malformed: {e}") from e
    except OSError as e:
        raise UsageError(f"cannot read {what} {path}: {e.strerror}") from e


def _flatten(data: dict[str, Any]) -> dict[str, Any]:
    # Tables such as [device] are merged without a prefix.
    flat: dict[str, Any] = {}
    for key, value in data.items():
        if isinstance(value, dict):
            flat.update(value)
        else:
            flat[key] = value
    return flat


def _describe(error: ValidationError) -> str:
    return "; ".join(
        f"{'.'.join(str(p) for p in item['loc']) or 'value'}: {item['msg']}"
        for item in error.errors()
    )


def parse_parameters(data: dict[str, Any]) -> ParameterSet:
    """Split a flat key/value mapping into device and optional activity parameters.

    Raises:
        ParameterError: On unknown keys or values violating parameter invariants
    """
    flat = _flatten(data)
    device_keys = set(DeviceParams.model_fields)
    activity_keys = set(ActivityParams.model_fields)
    unknown = sorted(set(flat) - device_keys - activity_keys)
    if unknown:
        raise ParameterError(f"unknown parameter(s): {', '.join(unknown)}")

    try:
        device = DeviceParams.model_validate(
            {k: v for k, v in flat.items() if k in device_keys}
        )
        activity_values = {k: v for k, v in flat.items() if k in activity_keys}
        activity = (
            ActivityParams.model_validate(activity_values) if activity_values else None
        )
    except ValidationError as e:
        raise ParameterError(f"invalid parameters: {_describe(e)}") from e
    return ParameterSet(device=device, activity=activity)


def load_parameter_file(path: str | Path) -> ParameterSet:
    """Read a ``key = value`` parameter file.

    Raises:
        UsageError: If the file cannot be read
        ParameterError: If the content is malformed or invalid
    """
    params = parse_parameters(_read_toml(path, "parameter file"))
    logger.debug("loaded parameters from %s", path)
    return params


def load_calibration(source: str | Path) -> CalibrationTable:
    """Resolve a built-in calibration name or read a TOML calibration file.

    The file carries ``ungated_pw`` and ``gated_pw`` lists in picowatts.

    Raises:
        UsageError: If the file cannot be read
        ParameterError: If the content is malformed or invalid
    """
    if str(source) in BUILTIN_CALIBRATIONS:
        return BUILTIN_CALIBRATIONS[str(source)]
    data = _read_toml(source, "calibration file")
    try:
        return CalibrationTable.model_validate(_flatten(data))
    except ValidationError as e:
        raise ParameterError(f"invalid calibration {source}: {_describe(e)}") from e
