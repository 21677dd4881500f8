"""Report formatter classes for CLI."""

import csv
import io
import json
from abc import ABC, abstractmethod
from typing import Any

from rich import box
from rich.console import Console
from rich.table import Table

POWER_CSV_COLUMNS = ("vector", "pm_index", "ungated_pw", "gated_pw")


def format_number(value: Any) -> str:
    """Render a scalar for text/csv: up to 6 significant digits."""
    if value is None:
        return "-"
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _scalars(section: dict[str, Any]) -> list[tuple[str, Any]]:
    return [
        (key, value)
        for key, value in section.items()
        if key != "dump" and not isinstance(value, (dict, list))
    ]


class ReportFormatter(ABC):
    """Abstract base class for report renderers.

    A report document is a dict with optional sections ``netlist``,
    ``simulation``, ``equivalence``, ``audit`` and ``power``.
    """

    @abstractmethod
    def render(self, document: dict[str, Any]) -> str:
        """Render a report document to text."""
        pass


class TextFormatter(ReportFormatter):
    """Human-readable tables, rendered without colour at a fixed width."""

    def __init__(self, width: int = 120):
        """Initialize the text formatter.

        Args:
            width: Console width used for table layout
        """
        self.width = width

    def render(self, document: dict[str, Any]) -> str:
        """Render every present section as a rich table."""
        buffer = io.StringIO()
        console = Console(
            file=buffer,
            width=self.width,
            no_color=True,
            color_system=None,
            force_terminal=False,
            highlight=False,
            emoji=False,
            soft_wrap=True,
        )

        if "generated_at" in document:
            console.print(f"generated at {document['generated_at']}")
        if "netlist" in document:
            self._netlist(console, document["netlist"])
        if "simulation" in document:
            self._key_values(console, "Simulation", document["simulation"])
        if "equivalence" in document:
            self._equivalence(console, document["equivalence"])
        if "audit" in document:
            self._audit(console, document["audit"])
        if "power" in document:
            self._power(console, document["power"])
        return buffer.getvalue()

    def _key_values(self, console: Console, title: str, section: dict[str, Any]) -> None:
        table = Table("field", "value", title=title, box=box.SIMPLE_HEAD)
        for key, value in _scalars(section):
            table.add_row(key, format_number(value))
        console.print(table)

    def _netlist(self, console: Console, section: dict[str, Any]) -> None:
        if "dump" in section:
            console.print(section["dump"], end="", markup=False)
        self._key_values(console, "Netlist", section)

    def _equivalence(self, console: Console, section: dict[str, Any]) -> None:
        total = section["vectors_checked"]
        if section["pass"]:
            console.print(f"PASS, {total}/{total} vectors")
        else:
            bad = len(section["counterexamples"])
            console.print(f"FAIL, {total - bad}/{total} vectors")
            table = Table("vector", "expected", "got", box=box.SIMPLE_HEAD)
            for item in section["counterexamples"]:
                table.add_row(item["vector"], item["expected"], item["got"])
            console.print(table)

    def _audit(self, console: Console, section: dict[str, Any]) -> None:
        if section["clean"]:
            console.print(f"audit clean, {section['gates_checked']} gates")
            return
        console.print(f"audit found {len(section['violations'])} violations")
        table = Table("check", "gate", "wire", "message", box=box.SIMPLE_HEAD)
        for item in section["violations"]:
            table.add_row(
                item["check"],
                format_number(item["gate"]),
                format_number(item["wire"]),
                item["message"],
            )
        console.print(table)

    def _power(self, console: Console, section: dict[str, Any]) -> None:
        table_rows = section["table"]
        n = len(table_rows[0]["ungated_pw"]) if table_rows else 0
        headers = ["vector"]
        headers += [f"PM{i + 1} ungated" for i in range(n)]
        headers += [f"PM{i + 1} gated" for i in range(n)]
        table = Table(*headers, title="Input power (pW)", box=box.SIMPLE_HEAD)
        for row in table_rows:
            table.add_row(
                row["vector"],
                *(format_number(v) for v in row["ungated_pw"]),
                *(format_number(v) for v in row["gated_pw"]),
            )
        console.print(table)

        ratios = Table(
            "line", "gated/ungated", "percent", box=box.SIMPLE_HEAD, title="Line ratios"
        )
        for index, ratio in enumerate(section["line_ratios"]):
            percent = "-" if ratio is None else f"{ratio * 100:.1f}%"
            ratios.add_row(f"PM{index + 1}", format_number(ratio), percent)
        console.print(ratios)
        ratio = section["ratio"]
        console.print(f"consumption ratio (gated/ungated): {format_number(ratio)}")
        console.print(f"saving (1 - ratio): {format_number(section['saving'])}")

        if section.get("leakage"):
            self._key_values(console, "Leakage estimate", section["leakage"])
        if section.get("average_power"):
            self._key_values(console, "Average power (W)", section["average_power"])


class JSONFormatter(ReportFormatter):
    """Indented JSON with shortest round-trip float rendering."""

    def render(self, document: dict[str, Any]) -> str:
        """Render the document as JSON."""
        return json.dumps(document, indent=2) + "\n"


class CSVFormatter(ReportFormatter):
    """Comma-separated blocks: scalar fields, then the power table."""

    def render(self, document: dict[str, Any]) -> str:
        """Render scalars as ``section,field,value`` rows and the power table by line."""
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")

        scalars = []
        for name, section in document.items():
            if isinstance(section, dict):
                scalars.extend(
                    (name, key, format_number(value)) for key, value in _scalars(section)
                )
                for nested_name in ("leakage", "average_power"):
                    nested = section.get(nested_name)
                    if isinstance(nested, dict):
                        scalars.extend(
                            (f"{name}.{nested_name}", key, format_number(value))
                            for key, value in _scalars(nested)
                        )
            elif not isinstance(section, list):
                scalars.append(("report", name, format_number(section)))
        if scalars:
            writer.writerow(("section", "field", "value"))
            writer.writerows(scalars)

        power = document.get("power")
        if power:
            if scalars:
                buffer.write("\n")
            writer.writerow(POWER_CSV_COLUMNS)
            for row in power["table"]:
                for index, (ungated, gated) in enumerate(
                    zip(row["ungated_pw"], row["gated_pw"], strict=True), start=1
                ):
                    writer.writerow(
                        (row["vector"], index, format_number(ungated), format_number(gated))
                    )
        return buffer.getvalue()


_FORMATTERS: dict[str, type[ReportFormatter]] = {
    "text": TextFormatter,
    "json": JSONFormatter,
    "csv": CSVFormatter,
}


def get_formatter(output_format: str) -> ReportFormatter:
    """Get the report formatter for a format name.

    Raises:
        ValueError: If the format is unknown
    """
    try:
        return _FORMATTERS[output_format]()
    except KeyError:
        raise ValueError(f"unknown output format: {output_format}") from None
