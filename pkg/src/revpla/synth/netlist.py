"""RPLA netlist data model."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..logic.gates import GateKind, gate_counts, quantum_cost


class WireOrigin(str, Enum):
    """What drives a wire."""

    PRIMARY_INPUT = "input"
    CONSTANT_0 = "const0"
    CONSTANT_1 = "const1"
    GATE_OUTPUT = "gate"


class Plane(str, Enum):
    """Array a gate belongs to."""

    AND = "and"
    OR = "or"


class SwitchKind(str, Enum):
    """Sleep transistor placement; only footer switches are generated."""

    FOOTER = "footer"


class SleepState(str, Enum):
    """Footer switch state."""

    ACTIVE = "active"
    SLEEP = "sleep"


class Wire(BaseModel):
    """A single-driver wire; ``id`` equals its index in the netlist."""

    model_config = ConfigDict(frozen=True)

    id: int = Field(..., ge=0)
    origin: WireOrigin


class GateInstance(BaseModel):
    """One reversible gate with its wire bindings."""

    model_config = ConfigDict(frozen=True)

    kind: GateKind
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    plane: Plane

    @model_validator(mode="after")
    def _check_lines(self) -> "GateInstance":
        if len(self.inputs) != len(self.outputs):
            raise ValueError(
                f"{self.kind.value} gate has {len(self.inputs)} inputs but "
                f"{len(self.outputs)} outputs"
            )
        return self


class SleepDomain(BaseModel):
    """Footer-gated power domain covering one plane."""

    model_config = ConfigDict(frozen=True)

    plane: Plane
    switch_kind: SwitchKind = SwitchKind.FOOTER
    state: SleepState = SleepState.ACTIVE


class NetlistMetrics(BaseModel):
    """Size and cost figures of a netlist."""

    gates: int
    feynman_gates: int
    mux_gates: int
    quantum_cost: int
    garbage: int
    ancilla: int
    wires: int
    depth: int
    and_plane_gates: int
    and_plane_quantum_cost: int
    or_plane_gates: int
    or_plane_quantum_cost: int


class RplaNetlist(BaseModel):
    """Gate-level reversible PLA (or a fragment of one).

    ``gates`` is stored in topological order.
    """

    model_config = ConfigDict(frozen=True)

    wires: tuple[Wire, ...]
    gates: tuple[GateInstance, ...]
    primary_inputs: tuple[int, ...]
    primary_outputs: tuple[int, ...]
    minterm_wires: tuple[int, ...] = ()
    garbage_wires: tuple[int, ...] = ()
    constant_inputs: tuple[tuple[int, int], ...] = ()
    sleep_domains: tuple[SleepDomain, ...] = ()

    @property
    def num_inputs(self) -> int:
        """Primary input count."""
        return len(self.primary_inputs)

    @property
    def num_outputs(self) -> int:
        """Primary output count."""
        return len(self.primary_outputs)

    @property
    def is_gated(self) -> bool:
        """True once sleep domains are attached."""
        return bool(self.sleep_domains)

    def domain(self, plane: Plane) -> SleepDomain | None:
        """Sleep domain for a plane, if attached."""
        for domain in self.sleep_domains:
            if domain.plane is plane:
                return domain
        return None

    def sleeping_planes(self) -> frozenset[Plane]:
        """Planes whose footer switch is currently off."""
        return frozenset(
            d.plane for d in self.sleep_domains if d.state is SleepState.SLEEP
        )

    def depth(self) -> int:
        """Longest gate path from any primary input or constant."""
        level = [0] * len(self.wires)
        deepest = 0
        for gate in self.gates:
            gate_level = 1 + max((level[w] for w in gate.inputs), default=0)
            for wire in gate.outputs:
                level[wire] = gate_level
            deepest = max(deepest, gate_level)
        return deepest

    def metrics(self) -> NetlistMetrics:
        """Compute size and cost figures."""
        counts = gate_counts(self)
        and_gates = [g for g in self.gates if g.plane is Plane.AND]
        or_gates = [g for g in self.gates if g.plane is Plane.OR]
        return NetlistMetrics(
            gates=len(self.gates),
            feynman_gates=counts[GateKind.FEYNMAN],
            mux_gates=counts[GateKind.MUX],
            quantum_cost=quantum_cost(self),
            garbage=len(self.garbage_wires),
            ancilla=len(self.constant_inputs),
            wires=len(self.wires),
            depth=self.depth(),
            and_plane_gates=len(and_gates),
            and_plane_quantum_cost=sum(g.kind.quantum_cost for g in and_gates),
            or_plane_gates=len(or_gates),
            or_plane_quantum_cost=sum(g.kind.quantum_cost for g in or_gates),
        )

    def dump(self) -> str:
        """Line-oriented text export, one gate per line."""
        lines = [
            "inputs " + " ".join(f"w{w}" for w in self.primary_inputs),
            "outputs " + " ".join(f"w{w}" for w in self.primary_outputs),
        ]
        if self.constant_inputs:
            lines.append(
                "constants " + " ".join(f"w{w}={bit}" for w, bit in self.constant_inputs)
            )
        for domain in self.sleep_domains:
            lines.append(
                f"sleep {domain.plane.value} {domain.switch_kind.value} {domain.state.value}"
            )
        for index, gate in enumerate(self.gates):
            ins = ",".join(f"w{w}" for w in gate.inputs)
            outs = ",".join(f"w{w}" for w in gate.outputs)
            lines.append(f"g{index} {gate.kind.value} {ins} -> {outs} {gate.plane.value}")
        if self.garbage_wires:
            lines.append("garbage " + " ".join(f"w{w}" for w in self.garbage_wires))
        return "\n".join(lines) + "\n"
