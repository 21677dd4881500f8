"""Main CLI entry point for revpla."""

from pathlib import Path
from typing import Any

import click

from revpla import __version__
from revpla.errors import EXIT_INPUT_ERROR, RevPLAError
from revpla.log import setup_logging
from revpla.pipeline import RunConfig, Subcommand, make_config, run
from revpla.settings import RevPLASettings, load_settings
from revpla.sim.simulator import SimMode
from revpla.synth.builder import CopyStrategy

PLA_ARGUMENT = click.argument("pla", type=click.Path(path_type=Path))


@click.group()
@click.option(
    "--config",
    "-c",
    type=click.Path(exists=True, dir_okay=False),
    help="Configuration file path",
)
@click.option(
    "--format",
    "output_format",
    type=click.Choice(["text", "json", "csv"]),
    help="Report format",
)
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    help="Write the report to a file instead of stdout",
)
@click.option("--workers", type=click.IntRange(min=1), help="Equivalence-check worker threads")
@click.option("--verbose", "-v", is_flag=True, default=None, help="Enable verbose logging")
@click.option(
    "--timestamps", is_flag=True, default=None, help="Stamp reports with generation time"
)
@click.version_option(version=__version__, prog_name="revpla")
@click.pass_context
def cli(
    ctx: click.Context,
    config: str | None,
    output_format: str | None,
    out: Path | None,
    workers: int | None,
    verbose: bool | None,
    timestamps: bool | None,
) -> None:
    """revpla - reversible PLA synthesis, verification and power analysis."""
    try:
        settings = load_settings(
            config_file=config,
            output_format=output_format,
            workers=workers,
            verbose=verbose,
            timestamps=timestamps,
        )
    except Exception as e:
        raise click.ClickException(f"Failed to initialize CLI: {e}") from e

    setup_logging(settings.effective_log_level(), timestamps=settings.timestamps)

    ctx.ensure_object(dict)
    ctx.obj["settings"] = settings
    ctx.obj["out"] = out


def _execute(ctx: click.Context, subcommand: Subcommand, **fields: Any) -> None:
    settings: RevPLASettings = ctx.obj["settings"]
    base = {
        "subcommand": subcommand,
        "output_format": settings.output_format,
        "workers": settings.workers,
        "max_inputs": settings.max_inputs,
        "copy_strategy": settings.copy_strategy,
        "calibration": settings.calibration,
        "timestamps": settings.timestamps,
        "out_path": ctx.obj["out"],
    }
    base.update({k: v for k, v in fields.items() if v is not None})
    try:
        config: RunConfig = make_config(**base)
    except RevPLAError as e:
        click.echo(f"Error: {e.message}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)

    outcome = run(config)
    if outcome.report and config.out_path is None:
        click.echo(outcome.report, nl=False)
    if outcome.error is not None:
        click.echo(f"Error: {outcome.error}", err=True)
    ctx.exit(outcome.exit_code)


@cli.command()
@PLA_ARGUMENT
@click.option(
    "--copy-strategy",
    type=click.Choice([s.value for s in CopyStrategy]),
    help="Fan-out network shape",
)
@click.pass_context
def synth(ctx: click.Context, pla: Path, copy_strategy: str | None) -> None:
    """Synthesize a PLA file and print the netlist with its metrics."""
    _execute(ctx, Subcommand.SYNTH, input_path=pla, copy_strategy=copy_strategy)


@cli.command()
@PLA_ARGUMENT
@click.option("--vector", required=True, help="Input bits, first input line first")
@click.option(
    "--mode",
    type=click.Choice([m.value for m in SimMode]),
    default=SimMode.ACTIVE.value,
    show_default=True,
    help="Array operating mode",
)
@click.pass_context
def sim(ctx: click.Context, pla: Path, vector: str, mode: str) -> None:
    """Synthesize a PLA file and simulate one input vector."""
    _execute(ctx, Subcommand.SIM, input_path=pla, vector=vector, mode=mode)


@cli.command()
@PLA_ARGUMENT
@click.pass_context
def check(ctx: click.Context, pla: Path) -> None:
    """Exhaustively verify a synthesis and audit its reversibility."""
    _execute(ctx, Subcommand.CHECK, input_path=pla)


@cli.command()
@click.option(
    "--params", "params", required=True, type=click.Path(path_type=Path),
    help="Device/activity parameter file",
)
@click.option("--calib", help="Calibration file or built-in name (table1)")
@click.pass_context
def power(ctx: click.Context, params: Path, calib: str | None) -> None:
    """Print the leakage estimate and the wattmeter power table."""
    _execute(ctx, Subcommand.POWER, param_path=params, calibration=calib)


@cli.command()
@PLA_ARGUMENT
@click.option(
    "--params", "params", required=True, type=click.Path(path_type=Path),
    help="Device/activity parameter file",
)
@click.option("--calib", help="Calibration file or built-in name (table1)")
@click.pass_context
def report(ctx: click.Context, pla: Path, params: Path, calib: str | None) -> None:
    """Synthesize, verify and power-analyse a PLA in one document."""
    _execute(ctx, Subcommand.REPORT, input_path=pla, param_path=params, calibration=calib)


def main() -> None:
    """Main entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
