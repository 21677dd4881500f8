"""Per-input-vector wattmeter tables for ungated and sleep-gated arrays."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import UsageError
from ..pla.plaspec import MAX_EXHAUSTIVE_INPUTS, format_bits, vector_bits
from .model import LeakageEstimate, PowerBreakdown


class CalibrationTable(BaseModel):
    """Measured per-line input power (pW) when that line is held at logic 1."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    ungated_pw: tuple[float, ...] = Field(..., min_length=1)
    gated_pw: tuple[float, ...] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _check_lines(self) -> "CalibrationTable":
        if len(self.ungated_pw) != len(self.gated_pw):
            raise ValueError(
                f"{len(self.ungated_pw)} ungated readings but {len(self.gated_pw)} gated"
            )
        if any(v < 0 for v in (*self.ungated_pw, *self.gated_pw)):
            raise ValueError("power readings must be non-negative")
        return self

    @property
    def lines(self) -> int:
        """Number of wattmeters (input lines)."""
        return len(self.ungated_pw)


# Three-input wattmeter readings of the reference array, lines A, B, C.
TABLE1 = CalibrationTable(
    ungated_pw=(187.71, 221.92, 221.91),
    gated_pw=(90.57, 90.57, 90.57),
)

BUILTIN_CALIBRATIONS = {"table1": TABLE1}


class PowerRow(BaseModel):
    """Readings PM1..PMn for one input vector."""

    vector: str
    ungated_pw: tuple[float, ...]
    gated_pw: tuple[float, ...]


class PowerReport(BaseModel):
    """Wattmeter table plus derived ratios and the optional analytic chain."""

    num_inputs: int
    rows: list[PowerRow]
    line_ratios: list[float | None] = Field(
        ..., description="Gated over ungated reading per input line"
    )
    consumption_ratio: float | None = Field(
        ..., description="Gated over ungated total at the all-ones vector"
    )
    saving: float | None = Field(..., description="1 - consumption_ratio")
    leakage_estimate: LeakageEstimate | None = None
    average_power: PowerBreakdown | None = None


def _ratio(gated: float, ungated: float) -> float | None:
    return gated / ungated if ungated else None


def power_table(n: int, calib: CalibrationTable) -> PowerReport:
    """Expand a calibration into the 2^n-row wattmeter table.

    A reading is the calibrated line value when that input bit is 1 and
    exactly 0.0 otherwise.

    Args:
        n: Number of input lines
        calib: Per-line readings, one per input line

    Returns:
        PowerReport without leakage or average-power sections

    Raises:
        UsageError: If n is out of range or the calibration has a different width
    """
    if not 1 <= n <= MAX_EXHAUSTIVE_INPUTS:
        raise UsageError(f"input count must be in 1..{MAX_EXHAUSTIVE_INPUTS}, got {n}")
    if calib.lines != n:
        raise UsageError(f"calibration has {calib.lines} lines but the table needs {n}")

    rows = []
    for word in range(1 << n):
        bits = vector_bits(word, n)
        rows.append(
            PowerRow(
                vector=format_bits(bits),
                ungated_pw=tuple(v if b else 0.0 for v, b in zip(calib.ungated_pw, bits)),
                gated_pw=tuple(v if b else 0.0 for v, b in zip(calib.gated_pw, bits)),
            )
        )

    ratio = _ratio(sum(calib.gated_pw), sum(calib.ungated_pw))
    return PowerReport(
        num_inputs=n,
        rows=rows,
        line_ratios=[_ratio(g, u) for g, u in zip(calib.gated_pw, calib.ungated_pw)],
        consumption_ratio=ratio,
        saving=None if ratio is None else 1.0 - ratio,
    )
