"""Parse, synthesize, verify and power-report runs behind the CLI."""

import logging
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from .cli.utils import get_formatter
from .errors import (
    EXIT_OK,
    EXIT_VERIFICATION_FAILED,
    RevPLAError,
    UsageError,
    VerificationError,
)
from .pla.plaspec import MAX_EXHAUSTIVE_INPUTS, PlaSpec, format_bits, load_pla, parse_vector
from .power.model import leakage_report, power_breakdown
from .power.params import load_calibration, load_parameter_file
from .power.table import power_table
from .sim.audit import audit_reversibility, verify_equivalence
from .sim.simulator import SimMode, format_values, simulate
from .synth.builder import CopyStrategy, attach_sleep, synthesize
from .synth.netlist import RplaNetlist

logger = logging.getLogger(__name__)


class Subcommand(str, Enum):
    """What a run produces."""

    SYNTH = "synth"
    SIM = "sim"
    CHECK = "check"
    POWER = "power"
    REPORT = "report"


_NEEDS_PLA = {Subcommand.SYNTH, Subcommand.SIM, Subcommand.CHECK, Subcommand.REPORT}
_NEEDS_PARAMS = {Subcommand.POWER, Subcommand.REPORT}


class RunConfig(BaseModel):
    """One fully specified toolchain run."""

    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    input_path: Path | None = None
    param_path: Path | None = None
    calibration: str = "table1"
    output_format: Literal["text", "json", "csv"] = "text"
    mode: SimMode = SimMode.ACTIVE
    vector: str | None = None
    copy_strategy: CopyStrategy = CopyStrategy.LINEAR
    workers: int = Field(1, ge=1)
    max_inputs: int = Field(MAX_EXHAUSTIVE_INPUTS, ge=1, le=MAX_EXHAUSTIVE_INPUTS)
    out_path: Path | None = None
    timestamps: bool = False

    @model_validator(mode="after")
    def _check_required(self) -> "RunConfig":
        if self.subcommand in _NEEDS_PLA and self.input_path is None:
            raise ValueError(f"{self.subcommand.value} needs a PLA input file")
        if self.subcommand in _NEEDS_PARAMS and self.param_path is None:
            raise ValueError(f"{self.subcommand.value} needs a parameter file")
        if self.subcommand is Subcommand.SIM and self.vector is None:
            raise ValueError("sim needs an input vector")
        return self


class RunOutcome(BaseModel):
    """Exit code, rendered report and diagnostic of a run."""

    exit_code: int
    report: str = ""
    error: str | None = None


def _load_spec(config: RunConfig) -> PlaSpec:
    spec = load_pla(config.input_path)
    if spec.num_inputs > config.max_inputs:
        raise UsageError(
            f"{config.input_path} has {spec.num_inputs} inputs; the limit is {config.max_inputs}"
        )
    return spec


def _netlist_section(netlist: RplaNetlist, with_dump: bool) -> dict[str, Any]:
    section: dict[str, Any] = netlist.metrics().model_dump()
    section["sleep_domains"] = len(netlist.sleep_domains)
    section["switch_kind"] = (
        netlist.sleep_domains[0].switch_kind.value if netlist.sleep_domains else None
    )
    if with_dump:
        section["dump"] = netlist.dump()
    return section


def _power_section(config: RunConfig, n: int | None) -> dict[str, Any]:
    params = load_parameter_file(config.param_path)
    calib = load_calibration(config.calibration)
    report = power_table(calib.lines if n is None else n, calib)
    leakage = leakage_report(params.device)
    average = (
        power_breakdown(params.activity, params.device.vdd) if params.activity else None
    )
    return {
        "table": [row.model_dump(mode="json") for row in report.rows],
        "ratio": report.consumption_ratio,
        "line_ratios": report.line_ratios,
        "saving": report.saving,
        "leakage": leakage.model_dump(mode="json"),
        "average_power": average.model_dump(mode="json") if average else None,
    }


def build_document(config: RunConfig) -> tuple[dict[str, Any], int]:
    """Run the toolchain and collect the report document.

    Returns:
        The document and the exit code it implies

    Raises:
        RevPLAError: On unreadable or invalid inputs
    """
    document: dict[str, Any] = {}
    exit_code = EXIT_OK
    command = config.subcommand

    if command in _NEEDS_PLA:
        spec = _load_spec(config)
        netlist = attach_sleep(synthesize(spec, config.copy_strategy))
        document["netlist"] = _netlist_section(netlist, command is Subcommand.SYNTH)

        if command is Subcommand.SIM:
            bits = parse_vector(config.vector, spec.num_inputs)
            values = simulate(netlist, bits, config.mode)
            document["simulation"] = {
                "vector": format_bits(bits),
                "mode": config.mode.value,
                "outputs": format_values(values),
            }

        if command in (Subcommand.CHECK, Subcommand.REPORT):
            equivalence = verify_equivalence(netlist, spec, workers=config.workers)
            audit = audit_reversibility(netlist)
            document["equivalence"] = equivalence.model_dump(mode="json", by_alias=True)
            document["audit"] = audit.model_dump(mode="json")
            if not equivalence.passed or not audit.clean:
                exit_code = EXIT_VERIFICATION_FAILED

        if command is Subcommand.REPORT:
            document["power"] = _power_section(config, spec.num_inputs)

    if command is Subcommand.POWER:
        document["power"] = _power_section(config, None)

    if config.timestamps:
        document["generated_at"] = datetime.now(timezone.utc).isoformat()
    return document, exit_code


def _failure_summary(document: dict[str, Any]) -> str:
    counterexamples = len(document["equivalence"]["counterexamples"])
    violations = len(document["audit"]["violations"])
    return (
        f"verification failed: {counterexamples} counterexample(s), "
        f"{violations} audit violation(s)"
    )


def run(config: RunConfig) -> RunOutcome:
    """Execute a run, render its report, and write it to ``out_path`` if set.

    Errors never escape. Input errors become exit code 2 with a diagnostic; a
    failed verification keeps the rendered report and exits with code 1.
    """
    report = ""
    try:
        document, exit_code = build_document(config)
        report = get_formatter(config.output_format).render(document)
        if config.out_path is not None:
            try:
                config.out_path.write_text(report, encoding="utf-8")
            except OSError as e:
                raise UsageError(f"cannot write {config.out_path}: {e.strerror}") from e
        if exit_code == EXIT_VERIFICATION_FAILED:
            raise VerificationError(_failure_summary(document))
    except VerificationError as e:
        return RunOutcome(exit_code=e.exit_code, report=report, error=e.message)
    except RevPLAError as e:
        logger.debug("run failed", exc_info=True)
        return RunOutcome(exit_code=e.exit_code, error=e.message)
    return RunOutcome(exit_code=exit_code, report=report)


def make_config(**fields: Any) -> RunConfig:
    """Build a RunConfig, turning validation failures into a UsageError."""
    try:
        return RunConfig(**fields)
    except ValidationError as e:
        details = "; ".join(item["msg"] for item in e.errors())
        raise UsageError(f"invalid run configuration: {details}") from e
