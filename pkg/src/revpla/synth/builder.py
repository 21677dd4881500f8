"""Full-decode RPLA synthesis from Feynman and MUX gates.

AND plane: every input passes a Feynman NOT gate (B=1) that yields both
literals, each literal is fanned out with Feynman copy gates (B=0), and each
of the 2^n minterms is a left-to-right chain of MUX AND gates
(A=literal, B=partial, C=0).

OR plane: minterms shared by several outputs are fanned out with copy
gates, then each output ORs its minterms with a chain of MUX OR gates
(A=partial, B=1, C=minterm).
"""

import logging
from collections import deque
from collections.abc import Iterator, Sequence
from enum import Enum

from ..errors import UsageError
from ..logic.gates import GateConfig, GateKind
from ..pla.plaspec import MAX_EXHAUSTIVE_INPUTS, PlaSpec, minterm_set
from .netlist import (
    GateInstance,
    Plane,
    RplaNetlist,
    SleepDomain,
    SleepState,
    Wire,
    WireOrigin,
)

logger = logging.getLogger(__name__)


class CopyStrategy(str, Enum):
    """Shape of Feynman fan-out networks."""

    LINEAR = "linear"
    TREE = "tree"


class NetlistBuilder:
    """Incrementally allocates wires and gates in topological order."""

    def __init__(self, copy_strategy: CopyStrategy = CopyStrategy.LINEAR):
        """Initialize an empty builder.

        Args:
            copy_strategy: Shape used by :meth:`fan_out`
        """
        self.copy_strategy = copy_strategy
        self._wires: list[Wire] = []
        self._gates: list[GateInstance] = []
        self._constants: list[tuple[int, int]] = []

    def new_wire(self, origin: WireOrigin) -> int:
        """Allocate a wire and return its id."""
        wire = Wire(id=len(self._wires), origin=origin)
        self._wires.append(wire)
        return wire.id

    def constant(self, bit: int) -> int:
        """Allocate a constant ancilla wire."""
        origin = WireOrigin.CONSTANT_1 if bit else WireOrigin.CONSTANT_0
        wire = self.new_wire(origin)
        self._constants.append((wire, bit))
        return wire

    def add_gate(
        self, kind: GateKind, inputs: Sequence[int], plane: Plane
    ) -> tuple[int, ...]:
        """Append a gate and return its freshly allocated output wires."""
        outputs = tuple(self.new_wire(WireOrigin.GATE_OUTPUT) for _ in inputs)
        self._gates.append(
            GateInstance(kind=kind, inputs=tuple(inputs), outputs=outputs, plane=plane)
        )
        return outputs

    def configured(
        self, config: GateConfig, operands: Sequence[int], plane: Plane
    ) -> tuple[int, ...]:
        """Append a gate in a constant-binding configuration.

        Operands fill the non-constant input lines in order.
        """
        inputs = list(operands)
        inputs.insert(config.constant_line, self.constant(config.constant_value))
        return self.add_gate(config.kind, inputs, plane)

    def fan_out(self, source: int, count: int, plane: Plane) -> list[int]:
        """Return ``count`` single-use wires carrying the value of ``source``."""
        if count < 1:
            raise UsageError(f"fan-out count must be positive, got {count}")
        if self.copy_strategy is CopyStrategy.TREE:
            pending = deque([source])
            while len(pending) < count:
                passthrough, copy, *_ = self.configured(
                    GateConfig.COPY, [pending.popleft()], plane
                )
                pending.extend((passthrough, copy))
            return list(pending)

        instances = []
        current = source
        for _ in range(count - 1):
            current, copy = self.configured(GateConfig.COPY, [current], plane)
            instances.append(copy)
        instances.append(current)
        return instances

    def build(
        self,
        primary_inputs: Sequence[int],
        primary_outputs: Sequence[int],
        minterm_wires: Sequence[int],
    ) -> RplaNetlist:
        """Freeze into a netlist; every unread non-output wire becomes garbage."""
        consumed = {wire for gate in self._gates for wire in gate.inputs}
        outputs = set(primary_outputs)
        garbage = tuple(
            wire.id
            for wire in self._wires
            if wire.id not in consumed and wire.id not in outputs
        )
        return RplaNetlist(
            wires=tuple(self._wires),
            gates=tuple(self._gates),
            primary_inputs=tuple(primary_inputs),
            primary_outputs=tuple(primary_outputs),
            minterm_wires=tuple(minterm_wires),
            garbage_wires=garbage,
            constant_inputs=tuple(self._constants),
        )


def _emit_and_plane(builder: NetlistBuilder, inputs: Sequence[int]) -> list[int]:
    n = len(inputs)
    uses = 1 << (n - 1)
    positive: list[Iterator[int]] = []
    negative: list[Iterator[int]] = []
    for wire in inputs:
        literal, inverted = builder.configured(GateConfig.NOT, [wire], Plane.AND)
        positive.append(iter(builder.fan_out(literal, uses, Plane.AND)))
        negative.append(iter(builder.fan_out(inverted, uses, Plane.AND)))

    minterms = []
    for word in range(1 << n):
        literals = [
            next(positive[i] if (word >> (n - 1 - i)) & 1 else negative[i])
            for i in range(n)
        ]
        partial = literals[0]
        for literal in literals[1:]:
            partial = builder.configured(GateConfig.AND, [literal, partial], Plane.AND)[2]
        minterms.append(partial)
    return minterms


def _emit_or_plane(
    builder: NetlistBuilder,
    minterms: Sequence[int],
    minterm_sets: Sequence[frozenset[int]],
) -> list[int]:
    pools: dict[int, Iterator[int]] = {}
    for index, wire in enumerate(minterms):
        uses = sum(1 for selected in minterm_sets if index in selected)
        if uses:
            pools[index] = iter(builder.fan_out(wire, uses, Plane.OR))

    outputs = []
    for selected in minterm_sets:
        ordered = sorted(selected)
        if not ordered:
            outputs.append(builder.constant(0))
            continue
        partial = next(pools[ordered[0]])
        for index in ordered[1:]:
            partial = builder.configured(
                GateConfig.OR, [partial, next(pools[index])], Plane.OR
            )[2]
        outputs.append(partial)
    return outputs


def _check_input_count(n: int) -> None:
    if not 1 <= n <= MAX_EXHAUSTIVE_INPUTS:
        raise UsageError(
            f"input count must be in 1..{MAX_EXHAUSTIVE_INPUTS}, got {n}"
        )


def _check_minterm_sets(
    minterm_sets: Sequence[frozenset[int] | set[int]], n: int
) -> list[frozenset[int]]:
    limit = 1 << n
    checked = []
    for j, selected in enumerate(minterm_sets):
        bad = [index for index in selected if not 0 <= index < limit]
        if bad:
            raise UsageError(
                f"output {j}: minterm index {min(bad)} out of range 0..{limit - 1}"
            )
        checked.append(frozenset(selected))
    return checked


def build_and_plane(
    n: int, copy_strategy: CopyStrategy = CopyStrategy.LINEAR
) -> RplaNetlist:
    """Build a standalone AND plane decoding ``n`` inputs into 2^n minterms.

    The fragment's primary outputs are the minterm wires, in word order.

    Raises:
        UsageError: If ``n`` is outside 1..16
    """
    _check_input_count(n)
    builder = NetlistBuilder(copy_strategy)
    inputs = [builder.new_wire(WireOrigin.PRIMARY_INPUT) for _ in range(n)]
    minterms = _emit_and_plane(builder, inputs)
    return builder.build(inputs, minterms, minterms)


def build_or_plane(
    minterm_sets: Sequence[frozenset[int] | set[int]],
    num_inputs: int,
    copy_strategy: CopyStrategy = CopyStrategy.LINEAR,
) -> RplaNetlist:
    """Build a standalone OR plane over 2^num_inputs minterm lines.

    The fragment's primary inputs are the minterm lines in word order, so a
    one-hot input vector selects a single minterm.

    Raises:
        UsageError: If ``num_inputs`` is out of range or an index is out of range
    """
    _check_input_count(num_inputs)
    checked = _check_minterm_sets(minterm_sets, num_inputs)
    builder = NetlistBuilder(copy_strategy)
    minterms = [
        builder.new_wire(WireOrigin.PRIMARY_INPUT) for _ in range(1 << num_inputs)
    ]
    outputs = _emit_or_plane(builder, minterms, checked)
    return builder.build(minterms, outputs, minterms)


def synthesize(
    spec: PlaSpec, copy_strategy: CopyStrategy = CopyStrategy.LINEAR
) -> RplaNetlist:
    """Synthesize a full-decode RPLA implementing ``spec``.

    Sleep domains are not attached; see :func:`attach_sleep`.
    """
    _check_input_count(spec.num_inputs)
    minterm_sets = [minterm_set(spec, j) for j in range(spec.num_outputs)]

    builder = NetlistBuilder(copy_strategy)
    inputs = [builder.new_wire(WireOrigin.PRIMARY_INPUT) for _ in range(spec.num_inputs)]
    minterms = _emit_and_plane(builder, inputs)
    outputs = _emit_or_plane(builder, minterms, minterm_sets)
    netlist = builder.build(inputs, outputs, minterms)

    logger.info(
        "synthesized %d-input %d-output RPLA: %d gates, %d wires",
        spec.num_inputs,
        spec.num_outputs,
        len(netlist.gates),
        len(netlist.wires),
    )
    return netlist


def expected_and_plane_counts(n: int) -> dict[GateConfig, int]:
    """Closed-form gate tally of a full-decode AND plane."""
    _check_input_count(n)
    return {
        GateConfig.NOT: n,
        GateConfig.COPY: 2 * n * ((1 << (n - 1)) - 1),
        GateConfig.AND: (n - 1) * (1 << n),
    }


def attach_sleep(netlist: RplaNetlist) -> RplaNetlist:
    """Attach one active footer domain per plane.

    Raises:
        UsageError: If the netlist already has sleep domains
    """
    if netlist.sleep_domains:
        raise UsageError("netlist already has sleep domains attached")
    domains = (SleepDomain(plane=Plane.AND), SleepDomain(plane=Plane.OR))
    return netlist.model_copy(update={"sleep_domains": domains})


def set_sleep_state(
    netlist: RplaNetlist, plane: Plane, state: SleepState
) -> RplaNetlist:
    """Return a copy with one plane's footer switched to ``state``.

    Raises:
        UsageError: If the netlist has no sleep domains
    """
    if not netlist.sleep_domains:
        raise UsageError("netlist has no sleep domains; call attach_sleep first")
    domains = tuple(
        domain.model_copy(update={"state": state}) if domain.plane is plane else domain
        for domain in netlist.sleep_domains
    )
    return netlist.model_copy(update={"sleep_domains": domains})
