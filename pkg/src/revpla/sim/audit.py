"""Exhaustive equivalence checking and structural reversibility audits."""

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from enum import Enum

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from ..errors import UsageError
from ..logic.gates import check_bijective, truth_table
from ..pla.plaspec import (
    MAX_EXHAUSTIVE_INPUTS,
    PlaSpec,
    eval_spec,
    format_bits,
    vector_bits,
)
from ..synth.netlist import RplaNetlist, WireOrigin
from .simulator import NetlistSimulator, SimMode, format_values

logger = logging.getLogger(__name__)


class Counterexample(BaseModel):
    """An input vector on which netlist and spec disagree."""

    vector: str
    expected: str
    got: str


class EquivalenceReport(BaseModel):
    """Result of an exhaustive netlist-versus-spec comparison."""

    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(..., alias="pass")
    vectors_checked: int
    counterexamples: list[Counterexample] = Field(default_factory=list)


def _check_range(
    simulator: NetlistSimulator, spec: PlaSpec, words: range
) -> list[Counterexample]:
    found = []
    n = spec.num_inputs
    for word in words:
        bits = vector_bits(word, n)
        expected = format_bits(eval_spec(spec, bits))
        got = format_values(simulator.run(bits, SimMode.ACTIVE))
        if got != expected:
            found.append(
                Counterexample(vector=format_bits(bits), expected=expected, got=got)
            )
    return found


def verify_equivalence(
    netlist: RplaNetlist, spec: PlaSpec, workers: int = 1
) -> EquivalenceReport:
    """Compare a netlist against its spec on all 2^n input words.

    Vectors are split into contiguous chunks across ``workers`` threads;
    counterexamples are returned sorted by vector regardless of worker count.

    Raises:
        UsageError: On dimension mismatch or n above the exhaustive limit
    """
    if netlist.num_inputs != spec.num_inputs or netlist.num_outputs != spec.num_outputs:
        raise UsageError(
            f"netlist is {netlist.num_inputs}x{netlist.num_outputs} but spec is "
            f"{spec.num_inputs}x{spec.num_outputs}"
        )
    if spec.num_inputs > MAX_EXHAUSTIVE_INPUTS:
        raise UsageError(
            f"{spec.num_inputs} inputs exceeds the exhaustive limit of {MAX_EXHAUSTIVE_INPUTS}"
        )

    simulator = NetlistSimulator(netlist)
    total = 1 << spec.num_inputs
    workers = max(1, min(workers, total))
    step = -(-total // workers)
    chunks = [range(start, min(start + step, total)) for start in range(0, total, step)]

    if workers == 1:
        results = [_check_range(simulator, spec, chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(lambda chunk: _check_range(simulator, spec, chunk), chunks)
            )

    counterexamples = sorted(
        (found for chunk in results for found in chunk), key=lambda c: c.vector
    )
    logger.info(
        "equivalence: %d vectors, %d counterexamples", total, len(counterexamples)
    )
    return EquivalenceReport(
        passed=not counterexamples, vectors_checked=total, counterexamples=counterexamples
    )


class AuditCheck(str, Enum):
    """Structural rule families checked by :func:`audit_reversibility`."""

    BIJECTIVITY = "bijectivity"
    ARITY = "arity"
    WIRING = "wiring"
    ACYCLICITY = "acyclicity"


class AuditViolation(BaseModel):
    """One broken structural rule."""

    check: AuditCheck
    gate: int | None = None
    wire: int | None = None
    message: str


class AuditReport(BaseModel):
    """All structural violations found in a netlist."""

    clean: bool
    gates_checked: int
    violations: list[AuditViolation] = Field(default_factory=list)


def audit_reversibility(netlist: RplaNetlist) -> AuditReport:
    """Check bijectivity, arity, single-driver/single-consumer wiring and acyclicity.

    Violations are collected, never raised.
    """
    violations: list[AuditViolation] = []

    def flag(
        check: AuditCheck, message: str, gate: int | None = None, wire: int | None = None
    ) -> None:
        violations.append(
            AuditViolation(check=check, gate=gate, wire=wire, message=message)
        )

    wire_count = len(netlist.wires)

    def known(wire: int) -> bool:
        return 0 <= wire < wire_count

    for wire_index, wire in enumerate(netlist.wires):
        if wire.id != wire_index:
            flag(AuditCheck.WIRING, f"wire at index {wire_index} has id {wire.id}", wire=wire_index)

    bijective = {}
    for index, gate in enumerate(netlist.gates):
        if gate.kind not in bijective:
            bijective[gate.kind] = check_bijective(truth_table(gate.kind))
        if not bijective[gate.kind]:
            flag(AuditCheck.BIJECTIVITY, f"{gate.kind.value} gate is not bijective", gate=index)
        arity = gate.kind.arity
        if len(gate.inputs) != arity or len(gate.outputs) != arity:
            flag(
                AuditCheck.ARITY,
                f"{gate.kind.value} gate needs {arity} inputs and outputs, has "
                f"{len(gate.inputs)}/{len(gate.outputs)}",
                gate=index,
            )

    drivers: dict[int, list[int]] = defaultdict(list)
    consumers: dict[int, list[int]] = defaultdict(list)
    for index, gate in enumerate(netlist.gates):
        for wire in gate.outputs:
            if not known(wire):
                flag(AuditCheck.WIRING, f"output references unknown wire w{wire}", gate=index, wire=wire)
                continue
            drivers[wire].append(index)
        for wire in gate.inputs:
            if not known(wire):
                flag(AuditCheck.WIRING, f"input references unknown wire w{wire}", gate=index, wire=wire)
                continue
            consumers[wire].append(index)

    primary_inputs = set(netlist.primary_inputs)
    constants = dict(netlist.constant_inputs)
    outputs = set(netlist.primary_outputs)
    garbage = set(netlist.garbage_wires)

    for wire in netlist.wires:
        if not known(wire.id):
            continue
        gate_drivers = drivers.get(wire.id, [])
        if wire.origin is WireOrigin.GATE_OUTPUT:
            if not gate_drivers:
                flag(AuditCheck.WIRING, "gate-output wire has no driving gate", wire=wire.id)
            elif len(gate_drivers) > 1:
                flag(
                    AuditCheck.WIRING,
                    "wire driven by gates " + ", ".join(f"g{g}" for g in gate_drivers),
                    gate=gate_drivers[1],
                    wire=wire.id,
                )
        else:
            if gate_drivers:
                flag(
                    AuditCheck.WIRING,
                    f"{wire.origin.value} wire is also driven by gate g{gate_drivers[0]}",
                    gate=gate_drivers[0],
                    wire=wire.id,
                )
            if wire.origin is WireOrigin.PRIMARY_INPUT and wire.id not in primary_inputs:
                flag(AuditCheck.WIRING, "input wire is not a declared primary input", wire=wire.id)
            if wire.origin in (WireOrigin.CONSTANT_0, WireOrigin.CONSTANT_1):
                bit = 1 if wire.origin is WireOrigin.CONSTANT_1 else 0
                if constants.get(wire.id) != bit:
                    flag(AuditCheck.WIRING, f"constant wire is not declared as constant {bit}", wire=wire.id)

        readers = consumers.get(wire.id, [])
        if len(readers) > 1:
            flag(
                AuditCheck.WIRING,
                "fan-out: wire read by gates " + ", ".join(f"g{g}" for g in readers),
                gate=readers[1],
                wire=wire.id,
            )
        if wire.origin is WireOrigin.GATE_OUTPUT and not readers:
            if wire.id not in outputs and wire.id not in garbage:
                flag(AuditCheck.WIRING, "unread gate output is neither a primary output nor garbage", wire=wire.id)
        if readers and wire.id in garbage:
            flag(AuditCheck.WIRING, "garbage wire is read by a gate", gate=readers[0], wire=wire.id)

    for wire in sorted(outputs & garbage):
        flag(AuditCheck.WIRING, "wire is both a primary output and garbage", wire=wire)
    for wire in sorted(set(netlist.primary_inputs) | outputs | garbage | set(constants)):
        if not known(wire):
            flag(AuditCheck.WIRING, f"declared wire w{wire} does not exist", wire=wire)

    graph = nx.DiGraph()
    graph.add_nodes_from(range(len(netlist.gates)))
    for wire, readers in consumers.items():
        for source in drivers.get(wire, []):
            for reader in readers:
                graph.add_edge(source, reader, wire=wire)

    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        first = cycle[0][0]
        flag(
            AuditCheck.ACYCLICITY,
            "cycle through gates " + " -> ".join(f"g{edge[0]}" for edge in cycle) + f" -> g{first}",
            gate=first,
        )
    else:
        for source, reader, data in graph.edges(data=True):
            if source >= reader:
                flag(
                    AuditCheck.ACYCLICITY,
                    f"gate g{reader} reads w{data['wire']} driven by later gate g{source}",
                    gate=reader,
                    wire=data["wire"],
                )

    violations.sort(
        key=lambda v: (
            v.check.value,
            -1 if v.gate is None else v.gate,
            -1 if v.wire is None else v.wire,
            v.message,
        )
    )
    return AuditReport(
        clean=not violations, gates_checked=len(netlist.gates), violations=violations
    )
