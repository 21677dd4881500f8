"""Feynman and MUX reversible gates.

Words are packed MSB-first: for a gate with inputs (A, B, C) the input word
is ``A << 2 | B << 1 | C`` and the output word is packed the same way from
(P, Q, R).
"""

from collections import Counter
from collections.abc import Iterable, Sequence
from enum import Enum
from typing import Protocol

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import UsageError

Bit = int


class GateKind(str, Enum):
    """The two reversible gate types an RPLA is built from."""

    FEYNMAN = "feynman"
    MUX = "mux"

    @property
    def arity(self) -> int:
        """Number of input lines (equal to the number of output lines)."""
        return _ARITY[self]

    @property
    def quantum_cost(self) -> int:
        """Per-instance quantum cost."""
        return _QUANTUM_COST[self]


_ARITY = {GateKind.FEYNMAN: 2, GateKind.MUX: 3}
_QUANTUM_COST = {GateKind.FEYNMAN: 1, GateKind.MUX: 4}


class GateConfig(str, Enum):
    """Constant-binding configurations used to realize classical functions."""

    AND = "and"
    OR = "or"
    NOT = "not"
    COPY = "copy"

    @property
    def kind(self) -> GateKind:
        """Gate type realizing this configuration."""
        return _CONFIGS[self][0]

    @property
    def constant_line(self) -> int:
        """Index of the input line tied to a constant."""
        return _CONFIGS[self][1]

    @property
    def constant_value(self) -> Bit:
        """Constant tied to :attr:`constant_line`."""
        return _CONFIGS[self][2]

    @property
    def result_line(self) -> int:
        """Index of the output line carrying the function value."""
        return _CONFIGS[self][3]


# config -> (kind, constant input line, constant value, result output line)
_CONFIGS: dict[GateConfig, tuple[GateKind, int, Bit, int]] = {
    GateConfig.AND: (GateKind.MUX, 2, 0, 2),
    GateConfig.OR: (GateKind.MUX, 1, 1, 2),
    GateConfig.NOT: (GateKind.FEYNMAN, 1, 1, 1),
    GateConfig.COPY: (GateKind.FEYNMAN, 1, 0, 1),
}


def eval_feynman(a: Bit, b: Bit) -> tuple[Bit, Bit]:
    """Evaluate a Feynman (CNOT) gate: P = A, Q = A xor B."""
    return a, a ^ b


def eval_mux(a: Bit, b: Bit, c: Bit) -> tuple[Bit, Bit, Bit]:
    """Evaluate a MUX gate: P = A, Q = A xor B xor C, R = A'C xor AB."""
    return a, a ^ b ^ c, ((1 - a) & c) ^ (a & b)


def evaluate_gate(kind: GateKind, inputs: Sequence[Bit]) -> tuple[Bit, ...]:
    """Evaluate a gate of the given kind on a sequence of input bits.

    Raises:
        UsageError: If the number of inputs does not match the arity
    """
    if len(inputs) != kind.arity:
        raise UsageError(
            f"{kind.value} gate takes {kind.arity} inputs, got {len(inputs)}"
        )
    if kind is GateKind.FEYNMAN:
        return eval_feynman(inputs[0], inputs[1])
    return eval_mux(inputs[0], inputs[1], inputs[2])


class TruthTable(BaseModel):
    """Complete input-word to output-word map of an n x n block."""

    model_config = ConfigDict(frozen=True)

    arity: int = Field(..., gt=0, description="Number of input (and output) lines")
    rows: dict[int, int] = Field(..., description="Input word -> output word")

    @model_validator(mode="after")
    def _check_rows(self) -> "TruthTable":
        size = 1 << self.arity
        if sorted(self.rows) != list(range(size)):
            raise ValueError(f"truth table needs exactly one row per word 0..{size - 1}")
        for word, out in self.rows.items():
            if not 0 <= out < size:
                raise ValueError(f"row {word} maps to out-of-range word {out}")
        return self

    def format_rows(self) -> list[str]:
        """Render rows as ``in->out`` bit strings."""
        return [
            f"{word:0{self.arity}b}->{self.rows[word]:0{self.arity}b}"
            for word in sorted(self.rows)
        ]


def _pack(bits: Iterable[Bit]) -> int:
    word = 0
    for bit in bits:
        word = (word << 1) | bit
    return word


def _unpack(word: int, width: int) -> tuple[Bit, ...]:
    return tuple((word >> (width - 1 - i)) & 1 for i in range(width))


def truth_table(kind: GateKind) -> TruthTable:
    """Tabulate a gate over all 2^arity input words."""
    rows = {
        word: _pack(evaluate_gate(kind, _unpack(word, kind.arity)))
        for word in range(1 << kind.arity)
    }
    return TruthTable(arity=kind.arity, rows=rows)


def check_bijective(table: TruthTable) -> bool:
    """True iff the table's output words are pairwise distinct."""
    return len(set(table.rows.values())) == len(table.rows)


class _HasGates(Protocol):
    @property
    def gates(self) -> Sequence["_HasKind"]: ...


class _HasKind(Protocol):
    @property
    def kind(self) -> GateKind: ...


def gate_counts(netlist: _HasGates) -> dict[GateKind, int]:
    """Count gate instances per kind (every kind present, possibly 0)."""
    counts = Counter(gate.kind for gate in netlist.gates)
    return {kind: counts.get(kind, 0) for kind in GateKind}


def quantum_cost(netlist: _HasGates) -> int:
    """Sum of per-gate quantum costs; constant bindings do not change cost."""
    return sum(gate.kind.quantum_cost for gate in netlist.gates)
