"""Topological simulator for RPLA netlists in active and sleep modes."""

from collections.abc import Callable, Sequence
from enum import Enum

from ..errors import NetlistError, UsageError
from ..logic.gates import GateKind, eval_feynman, eval_mux
from ..pla.plaspec import MAX_EXHAUSTIVE_INPUTS, vector_bits
from ..synth.netlist import Plane, RplaNetlist


class SimMode(str, Enum):
    """Array operating mode."""

    ACTIVE = "active"
    SLEEP = "sleep"


class SimValue(str, Enum):
    """Observable logic value of an output line."""

    ZERO = "0"
    ONE = "1"
    UNDEFINED = "X"

    @classmethod
    def from_bit(cls, bit: int | None) -> "SimValue":
        """Map 0/1/None to a value."""
        if bit is None:
            return cls.UNDEFINED
        return cls.ONE if bit else cls.ZERO


_EVALUATORS: dict[GateKind, Callable[..., tuple[int, ...]]] = {
    GateKind.FEYNMAN: eval_feynman,
    GateKind.MUX: eval_mux,
}


class NetlistSimulator:
    """Evaluates a netlist in its stored gate order.

    The order is checked once on construction; every gate must read only
    primary inputs, constants, or outputs of earlier gates.
    """

    def __init__(self, netlist: RplaNetlist):
        """Prepare a netlist for repeated evaluation.

        Args:
            netlist: Netlist whose gates are topologically ordered

        Raises:
            NetlistError: If a gate reads a wire before it is driven
        """
        self.netlist = netlist
        driven = set(netlist.primary_inputs)
        driven.update(wire for wire, _ in netlist.constant_inputs)
        self._schedule: list[tuple[Callable[..., tuple[int, ...]], tuple[int, ...], tuple[int, ...], Plane]] = []
        wire_count = len(netlist.wires)
        for index, gate in enumerate(netlist.gates):
            unknown = [w for w in (*gate.inputs, *gate.outputs) if not 0 <= w < wire_count]
            if unknown:
                raise NetlistError(f"gate g{index} references unknown wire w{unknown[0]}")
            if len(gate.inputs) != gate.kind.arity:
                raise NetlistError(
                    f"gate g{index} is a {gate.kind.value} gate with {len(gate.inputs)} lines"
                )
            for wire in gate.inputs:
                if wire not in driven:
                    raise NetlistError(
                        f"gate g{index} reads w{wire} before it is driven; "
                        "netlist is not topologically ordered"
                    )
            driven.update(gate.outputs)
            self._schedule.append(
                (_EVALUATORS[gate.kind], gate.inputs, gate.outputs, gate.plane)
            )
        for wire in netlist.primary_outputs:
            if wire not in driven:
                raise NetlistError(f"primary output w{wire} is never driven")

    def run(
        self, bits: Sequence[int], mode: SimMode = SimMode.ACTIVE
    ) -> tuple[SimValue, ...]:
        """Simulate one input vector.

        In ACTIVE mode the planes whose own sleep domain is switched off
        still float; in SLEEP mode every plane is off. An output is undefined
        when any gate on its support path sits in a sleeping plane, so with
        one plane asleep some outputs can stay defined.

        Raises:
            UsageError: If the vector width does not match the netlist
        """
        netlist = self.netlist
        if len(bits) != netlist.num_inputs or any(b not in (0, 1) for b in bits):
            raise UsageError(
                f"input vector {list(bits)} is not a {netlist.num_inputs}-bit binary word"
            )
        if mode is SimMode.SLEEP:
            sleeping = frozenset(Plane)
        else:
            sleeping = netlist.sleeping_planes()
        if sleeping == frozenset(Plane):
            return (SimValue.UNDEFINED,) * netlist.num_outputs

        values: list[int | None] = [None] * len(netlist.wires)
        for wire, bit in zip(netlist.primary_inputs, bits, strict=True):
            values[wire] = bit
        for wire, bit in netlist.constant_inputs:
            values[wire] = bit

        for evaluate, inputs, outputs, plane in self._schedule:
            operands = [values[wire] for wire in inputs]
            if plane in sleeping or None in operands:
                for wire in outputs:
                    values[wire] = None
                continue
            for wire, bit in zip(outputs, evaluate(*operands), strict=True):
                values[wire] = bit

        return tuple(SimValue.from_bit(values[wire]) for wire in netlist.primary_outputs)

    def exhaustive(self, mode: SimMode = SimMode.ACTIVE) -> list[tuple[SimValue, ...]]:
        """Outputs for every input word, indexed by word."""
        n = self.netlist.num_inputs
        if n > MAX_EXHAUSTIVE_INPUTS:
            raise UsageError(
                f"{n} inputs exceeds the exhaustive limit of {MAX_EXHAUSTIVE_INPUTS}"
            )
        return [self.run(vector_bits(word, n), mode) for word in range(1 << n)]


def simulate(
    netlist: RplaNetlist, bits: Sequence[int], mode: SimMode = SimMode.ACTIVE
) -> tuple[SimValue, ...]:
    """Simulate a single input vector; see :meth:`NetlistSimulator.run`."""
    return NetlistSimulator(netlist).run(bits, mode)


def exhaustive_outputs(
    netlist: RplaNetlist, mode: SimMode = SimMode.ACTIVE
) -> list[tuple[SimValue, ...]]:
    """Simulate every input word of a netlist."""
    return NetlistSimulator(netlist).exhaustive(mode)


def format_values(values: Sequence[SimValue]) -> str:
    """Render simulated values as a string such as ``"01X"``."""
    return "".join(value.value for value in values)
