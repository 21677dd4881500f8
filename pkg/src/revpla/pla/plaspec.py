"""PLA text format parser and brute-force sum-of-products oracle.

Supported format (a strict subset of the two-level PLA interchange format)::

    # comment
    .i 3            number of inputs (mandatory)
    .o 2            number of outputs (mandatory)
    .ilb a b c      optional input labels
    .ob sum carry   optional output labels
    .type f         optional, only on-set semantics are supported
    .p 4            optional cube count
    1-1 10          one cube per line: inputs over {0,1,-}, outputs over {0,1}
    .e              terminator

Input column 0 is the most significant bit of an input word.
"""

import itertools
import logging
from collections.abc import Sequence
from functools import lru_cache
from pathlib import Path
from typing import TextIO

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import PlaFormatError, UsageError

logger = logging.getLogger(__name__)

MAX_EXHAUSTIVE_INPUTS = 16

_INPUT_CHARS = frozenset("01-")
_OUTPUT_CHARS = frozenset("01")


class Cube(BaseModel):
    """One product term with its output pattern."""

    model_config = ConfigDict(frozen=True)

    inputs: str = Field(..., description="Input literals over {0, 1, -}")
    outputs: str = Field(..., description="Output pattern over {0, 1}")

    @model_validator(mode="after")
    def _check_chars(self) -> "Cube":
        if not self.inputs or set(self.inputs) - _INPUT_CHARS:
            raise ValueError(f"invalid input field {self.inputs!r}")
        if not self.outputs or set(self.outputs) - _OUTPUT_CHARS:
            raise ValueError(f"invalid output field {self.outputs!r}")
        return self

    def matches(self, word: int) -> bool:
        """True iff the input word lies inside this cube."""
        mask, value = _compile_inputs(self.inputs)
        return word & mask == value

    def __str__(self) -> str:
        return f"{self.inputs} {self.outputs}"


@lru_cache(maxsize=4096)
def _compile_inputs(inputs: str) -> tuple[int, int]:
    mask = value = 0
    for char in inputs:
        mask <<= 1
        value <<= 1
        if char != "-":
            mask |= 1
            value |= int(char)
    return mask, value


class PlaSpec(BaseModel):
    """A multi-output Boolean function given as a list of cubes."""

    model_config = ConfigDict(frozen=True)

    num_inputs: int = Field(..., ge=1, description="Input count n")
    num_outputs: int = Field(..., ge=1, description="Output count m")
    cubes: tuple[Cube, ...] = Field(default=(), description="Cubes in file order")
    input_labels: tuple[str, ...] | None = Field(default=None)
    output_labels: tuple[str, ...] | None = Field(default=None)

    @model_validator(mode="after")
    def _check_widths(self) -> "PlaSpec":
        for index, cube in enumerate(self.cubes):
            if len(cube.inputs) != self.num_inputs:
                raise ValueError(
                    f"cube {index} has {len(cube.inputs)} inputs, expected {self.num_inputs}"
                )
            if len(cube.outputs) != self.num_outputs:
                raise ValueError(
                    f"cube {index} has {len(cube.outputs)} outputs, expected {self.num_outputs}"
                )
        if self.input_labels is not None and len(self.input_labels) != self.num_inputs:
            raise ValueError(".ilb label count does not match .i")
        if self.output_labels is not None and len(self.output_labels) != self.num_outputs:
            raise ValueError(".ob label count does not match .o")
        return self


def _parse_count(args: list[str], lineno: int, directive: str) -> int:
    if len(args) != 1:
        raise PlaFormatError(f"{directive} takes exactly one argument", lineno)
    try:
        value = int(args[0])
    except ValueError:
        raise PlaFormatError(f"{directive} argument {args[0]!r} is not an integer", lineno) from None
    if value < 0 or (directive != ".p" and value < 1):
        raise PlaFormatError(f"{directive} argument must be positive, got {value}", lineno)
    return value


def parse_pla(source: str | TextIO) -> PlaSpec:
    """Parse PLA text into a :class:`PlaSpec`.

    Args:
        source: PLA text or an open text stream

    Returns:
        Parsed specification

    Raises:
        PlaFormatError: On any malformed input, with the offending line number
    """
    text = source if isinstance(source, str) else source.read()

    num_inputs: int | None = None
    num_outputs: int | None = None
    declared_cubes: int | None = None
    input_labels: tuple[str, ...] | None = None
    output_labels: tuple[str, ...] | None = None
    label_lines: dict[str, int] = {}
    cubes: list[Cube] = []
    last_line = 1

    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r").split("#", 1)[0].strip()
        if not line:
            continue
        last_line = lineno

        if line.startswith("."):
            directive, *args = line.split()
            if directive in (".e", ".end"):
                break
            if directive == ".i":
                if num_inputs is not None:
                    raise PlaFormatError("duplicate .i directive", lineno)
                num_inputs = _parse_count(args, lineno, directive)
            elif directive == ".o":
                if num_outputs is not None:
                    raise PlaFormatError("duplicate .o directive", lineno)
                num_outputs = _parse_count(args, lineno, directive)
            elif directive == ".p":
                declared_cubes = _parse_count(args, lineno, directive)
            elif directive == ".ilb":
                input_labels = tuple(args)
                label_lines[".ilb"] = lineno
            elif directive == ".ob":
                output_labels = tuple(args)
                label_lines[".ob"] = lineno
            elif directive == ".type":
                if args != ["f"]:
                    raise PlaFormatError(
                        f"unsupported .type {' '.join(args)!r}, only 'f' is accepted",
                        lineno,
                    )
            else:
                raise PlaFormatError(f"unknown directive {directive}", lineno)
            continue

        if num_inputs is None or num_outputs is None:
            raise PlaFormatError("cube line before .i and .o directives", lineno)

        fields = line.split()
        if len(fields) != 2:
            raise PlaFormatError(
                f"expected '<inputs> <outputs>', got {len(fields)} fields", lineno
            )
        inputs, outputs = fields
        if len(inputs) != num_inputs:
            raise PlaFormatError(
                f"input field has width {len(inputs)}, expected {num_inputs}", lineno
            )
        if len(outputs) != num_outputs:
            raise PlaFormatError(
                f"output field has width {len(outputs)}, expected {num_outputs}", lineno
            )
        bad_in = set(inputs) - _INPUT_CHARS
        if bad_in:
            raise PlaFormatError(
                f"invalid character {sorted(bad_in)[0]!r} in input field", lineno
            )
        bad_out = set(outputs) - _OUTPUT_CHARS
        if bad_out:
            raise PlaFormatError(
                f"invalid character {sorted(bad_out)[0]!r} in output field", lineno
            )
        cubes.append(Cube(inputs=inputs, outputs=outputs))

    if num_inputs is None:
        raise PlaFormatError("missing .i directive", last_line)
    if num_outputs is None:
        raise PlaFormatError("missing .o directive", last_line)
    if input_labels is not None and len(input_labels) != num_inputs:
        raise PlaFormatError(".ilb label count does not match .i", label_lines[".ilb"])
    if output_labels is not None and len(output_labels) != num_outputs:
        raise PlaFormatError(".ob label count does not match .o", label_lines[".ob"])
    if declared_cubes is not None and declared_cubes != len(cubes):
        logger.warning(".p declares %d cubes, found %d", declared_cubes, len(cubes))

    return PlaSpec(
        num_inputs=num_inputs,
        num_outputs=num_outputs,
        cubes=tuple(cubes),
        input_labels=input_labels,
        output_labels=output_labels,
    )


def load_pla(path: str | Path) -> PlaSpec:
    """Read and parse a PLA file.

    Raises:
        UsageError: If the file cannot be read
        PlaFormatError: If the file is not valid PLA text
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"file not found: {path}") from None
    except UnicodeDecodeError as e:
        raise PlaFormatError(f"{path} is not UTF-8 text: {e}") from None
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    logger.debug("parsing %s", path)
    return parse_pla(text)


def serialize_pla(spec: PlaSpec) -> str:
    """Render a spec back to PLA text."""
    lines = [f".i {spec.num_inputs}", f".o {spec.num_outputs}"]
    if spec.input_labels is not None:
        lines.append(".ilb " + " ".join(spec.input_labels))
    if spec.output_labels is not None:
        lines.append(".ob " + " ".join(spec.output_labels))
    lines.append(f".p {len(spec.cubes)}")
    lines.extend(str(cube) for cube in spec.cubes)
    lines.append(".e")
    return "\n".join(lines) + "\n"


def vector_bits(word: int, width: int) -> tuple[int, ...]:
    """Unpack a word into bits, most significant first."""
    return tuple((word >> (width - 1 - i)) & 1 for i in range(width))


def vector_word(bits: Sequence[int]) -> int:
    """Pack bits (most significant first) into a word."""
    word = 0
    for bit in bits:
        word = (word << 1) | bit
    return word


def parse_vector(text: str, width: int) -> tuple[int, ...]:
    """Parse a string such as ``"101"`` into a bit tuple.

    Raises:
        UsageError: On width mismatch or characters other than 0/1
    """
    if len(text) != width or set(text) - _OUTPUT_CHARS:
        raise UsageError(f"vector {text!r} is not a {width}-bit binary word")
    return tuple(int(char) for char in text)


def format_bits(bits: Sequence[int]) -> str:
    """Render bits as a 0/1 string."""
    return "".join(str(bit) for bit in bits)


def _check_bits(bits: Sequence[int], width: int) -> None:
    if len(bits) != width:
        raise UsageError(f"input vector has width {len(bits)}, expected {width}")
    if any(bit not in (0, 1) for bit in bits):
        raise UsageError(f"input vector {list(bits)} contains non-binary values")


def eval_spec(spec: PlaSpec, bits: Sequence[int]) -> tuple[int, ...]:
    """Evaluate the sum of products at one input vector.

    Args:
        spec: Function specification
        bits: Input vector, ``num_inputs`` bits, most significant first

    Returns:
        Output vector of ``num_outputs`` bits

    Raises:
        UsageError: If the vector width does not match the spec
    """
    _check_bits(bits, spec.num_inputs)
    word = vector_word(bits)
    result = [0] * spec.num_outputs
    for cube in spec.cubes:
        if cube.matches(word):
            for j, char in enumerate(cube.outputs):
                if char == "1":
                    result[j] = 1
    return tuple(result)


def _check_exhaustive(spec: PlaSpec) -> None:
    if spec.num_inputs > MAX_EXHAUSTIVE_INPUTS:
        raise UsageError(
            f"{spec.num_inputs} inputs exceeds the exhaustive limit of {MAX_EXHAUSTIVE_INPUTS}"
        )


def minterm_set(spec: PlaSpec, output_index: int) -> frozenset[int]:
    """Input words at which the given output is 1.

    Raises:
        UsageError: If the index is out of range or n exceeds the exhaustive limit
    """
    if not 0 <= output_index < spec.num_outputs:
        raise UsageError(
            f"output index {output_index} out of range 0..{spec.num_outputs - 1}"
        )
    _check_exhaustive(spec)

    minterms: set[int] = set()
    for cube in spec.cubes:
        if cube.outputs[output_index] != "1":
            continue
        free = [i for i, char in enumerate(cube.inputs) if char == "-"]
        _, base = _compile_inputs(cube.inputs)
        shift = spec.num_inputs - 1
        for choice in itertools.product((0, 1), repeat=len(free)):
            word = base
            for position, bit in zip(free, choice, strict=True):
                word |= bit << (shift - position)
            minterms.add(word)
    return frozenset(minterms)


def spec_truth_table(spec: PlaSpec) -> list[tuple[int, ...]]:
    """Output vectors for every input word, indexed by word."""
    _check_exhaustive(spec)
    return [
        eval_spec(spec, vector_bits(word, spec.num_inputs))
        for word in range(1 << spec.num_inputs)
    ]
