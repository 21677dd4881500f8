"""Tests for simulation, equivalence checking and the reversibility audit."""

from itertools import product

import pytest

from revpla.errors import NetlistError, UsageError
from revpla.logic.gates import GateKind, evaluate_gate
from revpla.pla.plaspec import eval_spec, parse_pla, vector_bits
from revpla.sim.audit import AuditCheck, audit_reversibility, verify_equivalence
from revpla.sim.simulator import (
    NetlistSimulator,
    SimMode,
    SimValue,
    exhaustive_outputs,
    format_values,
    simulate,
)
from revpla.synth.builder import NetlistBuilder, attach_sleep, set_sleep_state, synthesize
from revpla.synth.netlist import Plane, SleepState, Wire, WireOrigin

X = SimValue.UNDEFINED
ONE = SimValue.ONE
ZERO = SimValue.ZERO


def single_output_spec(minterms: int) -> str:
    """PLA text for the 3-input function whose truth table is the 8-bit mask."""
    lines = [".i 3", ".o 1"]
    lines += [f"{word:03b} 1" for word in range(8) if (minterms >> word) & 1]
    return "\n".join(lines) + "\n.e\n"


def test_all_three_input_functions():
    """Test every 3-input single-output function synthesizes correctly."""
    for mask in range(256):
        spec = parse_pla(single_output_spec(mask))
        netlist = synthesize(spec)
        outputs = exhaustive_outputs(netlist)
        for word in range(8):
            expected = eval_spec(spec, vector_bits(word, 3))
            assert outputs[word] == tuple(SimValue.from_bit(b) for b in expected), (
                f"function {mask:08b} fails on {word:03b}"
            )


def test_all_three_input_functions_audit_clean():
    """Test every 3-input single-output synthesis passes the audit."""
    for mask in range(256):
        netlist = synthesize(parse_pla(single_output_spec(mask)))
        report = audit_reversibility(netlist)
        assert report.clean, report.violations


def test_simulate_xor(xor2_spec):
    """Test single-vector simulation."""
    netlist = synthesize(xor2_spec)
    assert format_values(simulate(netlist, (1, 0))) == "1"
    assert format_values(simulate(netlist, (1, 1))) == "0"


def test_simulate_width_mismatch(xor2_spec):
    """Test a wrong-width vector is a usage error."""
    with pytest.raises(UsageError):
        simulate(synthesize(xor2_spec), (1,))


def test_sleep_mode_all_undefined(full_adder_spec):
    """Test every output floats in sleep mode."""
    netlist = attach_sleep(synthesize(full_adder_spec))
    for word in range(8):
        assert simulate(netlist, vector_bits(word, 3), SimMode.SLEEP) == (X, X)


def test_sleeping_and_plane_floats_outputs(xor2_spec):
    """Test a sleeping AND plane leaves the OR plane without defined inputs."""
    netlist = set_sleep_state(
        attach_sleep(synthesize(xor2_spec)), Plane.AND, SleepState.SLEEP
    )
    assert simulate(netlist, (0, 1), SimMode.ACTIVE) == (X,)


def test_sleeping_or_plane_floats_or_outputs(xor2_spec):
    """Test an output computed by OR-plane gates floats when that plane sleeps."""
    netlist = set_sleep_state(
        attach_sleep(synthesize(xor2_spec)), Plane.OR, SleepState.SLEEP
    )
    assert simulate(netlist, (1, 0), SimMode.ACTIVE) == (X,)


def test_sleeping_or_plane_keeps_direct_minterm_outputs():
    """Test a single-minterm output has no OR-plane gate and stays defined."""
    netlist = set_sleep_state(
        attach_sleep(synthesize(parse_pla(".i 3\n.o 1\n111 1\n"))), Plane.OR, SleepState.SLEEP
    )
    assert not [gate for gate in netlist.gates if gate.plane is Plane.OR]
    outputs = exhaustive_outputs(netlist)
    assert outputs[7] == (ONE,)
    assert outputs[:7] == [(ZERO,)] * 7


def test_partial_sleep_is_per_output():
    """Test one plane asleep floats only the outputs whose path crosses it."""
    spec = parse_pla(".i 2\n.o 3\n11 100\n01 010\n10 010\n")
    gated = attach_sleep(synthesize(spec))
    or_asleep = set_sleep_state(gated, Plane.OR, SleepState.SLEEP)
    assert simulate(or_asleep, (1, 1)) == (ONE, X, ZERO)
    and_asleep = set_sleep_state(gated, Plane.AND, SleepState.SLEEP)
    assert simulate(and_asleep, (1, 1)) == (X, X, ZERO)
    both = set_sleep_state(or_asleep, Plane.AND, SleepState.SLEEP)
    assert simulate(both, (1, 1)) == (X, X, X)


def test_mode_is_stateless(full_adder_spec):
    """Test sleep, active, sleep cycling never changes active results."""
    simulator = NetlistSimulator(attach_sleep(synthesize(full_adder_spec)))
    before = simulator.exhaustive(SimMode.ACTIVE)
    simulator.exhaustive(SimMode.SLEEP)
    after = simulator.exhaustive(SimMode.ACTIVE)
    simulator.exhaustive(SimMode.SLEEP)
    assert before == after
    assert X not in {value for row in after for value in row}


def test_unordered_netlist_rejected(xor2_spec):
    """Test the simulator refuses a gate list out of topological order."""
    netlist = synthesize(xor2_spec)
    reversed_gates = netlist.model_copy(update={"gates": netlist.gates[::-1]})
    with pytest.raises(NetlistError):
        NetlistSimulator(reversed_gates)


def test_equivalence_passes(full_adder_spec):
    """Test a correct synthesis has no counterexamples."""
    report = verify_equivalence(synthesize(full_adder_spec), full_adder_spec)
    assert report.passed
    assert report.vectors_checked == 8
    assert report.counterexamples == []
    assert report.model_dump(by_alias=True)["pass"] is True


def test_equivalence_counterexamples(xor2_spec):
    """Test an xor netlist against an xnor spec fails on every vector."""
    xnor = parse_pla(".i 2\n.o 1\n00 1\n11 1\n")
    report = verify_equivalence(synthesize(xor2_spec), xnor)
    assert not report.passed
    assert [c.vector for c in report.counterexamples] == ["00", "01", "10", "11"]
    assert report.counterexamples[0].expected == "1"
    assert report.counterexamples[0].got == "0"


def test_equivalence_independent_of_workers(xor2_spec):
    """Test worker count never changes the report."""
    xnor = parse_pla(".i 2\n.o 1\n00 1\n11 1\n")
    netlist = synthesize(xor2_spec)
    single = verify_equivalence(netlist, xnor, workers=1)
    assert verify_equivalence(netlist, xnor, workers=3) == single
    assert verify_equivalence(netlist, xnor, workers=16) == single


def test_equivalence_dimension_mismatch(xor2_spec, full_adder_spec):
    """Test comparing mismatched shapes is a usage error."""
    with pytest.raises(UsageError):
        verify_equivalence(synthesize(xor2_spec), full_adder_spec)


def test_audit_detects_wire_duplication(full_adder_spec):
    """Test a wire read by two gates is a wiring violation."""
    netlist = synthesize(full_adder_spec)
    gates = list(netlist.gates)
    victim = gates[5]
    stolen = gates[4].inputs[0]
    gates[5] = victim.model_copy(update={"inputs": (stolen, *victim.inputs[1:])})
    report = audit_reversibility(netlist.model_copy(update={"gates": tuple(gates)}))
    assert not report.clean
    assert any(
        v.check is AuditCheck.WIRING and v.wire == stolen and "fan-out" in v.message
        for v in report.violations
    )


def test_audit_detects_cycle(xor2_spec):
    """Test feeding a late output back into the first gate is a cycle."""
    netlist = synthesize(xor2_spec)
    gates = list(netlist.gates)
    last_output = gates[-1].outputs[-1]
    first = gates[0]
    gates[0] = first.model_copy(update={"inputs": (first.inputs[0], last_output)})
    report = audit_reversibility(netlist.model_copy(update={"gates": tuple(gates)}))
    assert any(v.check is AuditCheck.ACYCLICITY for v in report.violations)


def test_audit_detects_double_driver(xor2_spec):
    """Test two gates driving one wire is a wiring violation."""
    netlist = synthesize(xor2_spec)
    gates = list(netlist.gates)
    target = gates[0].outputs[0]
    gates[1] = gates[1].model_copy(
        update={"outputs": (target, *gates[1].outputs[1:])}
    )
    report = audit_reversibility(netlist.model_copy(update={"gates": tuple(gates)}))
    assert any("driven by gates" in v.message for v in report.violations)


def test_audit_detects_unknown_wire(xor2_spec):
    """Test a reference past the wire table is reported, not raised."""
    netlist = synthesize(xor2_spec)
    gates = list(netlist.gates)
    gates[0] = gates[0].model_copy(update={"inputs": (gates[0].inputs[0], 999)})
    report = audit_reversibility(netlist.model_copy(update={"gates": tuple(gates)}))
    assert any(v.wire == 999 for v in report.violations)


def test_audit_clean_report_shape(xor2_spec):
    """Test a clean report counts gates and lists nothing."""
    netlist = synthesize(xor2_spec)
    report = audit_reversibility(netlist)
    assert report.clean
    assert report.gates_checked == len(netlist.gates)
    assert report.violations == []


@pytest.mark.parametrize("kind", list(GateKind))
def test_single_gate_netlist_matches_gate_law(kind):
    """Test a one-gate netlist simulates to the gate's own evaluation on every input."""
    builder = NetlistBuilder()
    inputs = [builder.new_wire(WireOrigin.PRIMARY_INPUT) for _ in range(kind.arity)]
    outputs = builder.add_gate(kind, inputs, Plane.AND)
    netlist = builder.build(inputs, outputs, ())
    for bits in product((0, 1), repeat=kind.arity):
        expected = tuple(SimValue.from_bit(b) for b in evaluate_gate(kind, bits))
        assert simulate(netlist, bits) == expected


def test_equivalence_detects_dropped_or_connection(xor2_spec):
    """Test cutting one minterm line out of an OR gate yields a counterexample."""
    netlist = synthesize(xor2_spec)
    assert verify_equivalence(netlist, xor2_spec).passed
    index, gate = next((i, g) for i, g in enumerate(netlist.gates) if g.plane is Plane.OR)
    ground = len(netlist.wires)
    cut = gate.model_copy(update={"inputs": (ground, *gate.inputs[1:])})
    mutated = netlist.model_copy(
        update={
            "wires": (*netlist.wires, Wire(id=ground, origin=WireOrigin.CONSTANT_0)),
            "constant_inputs": (*netlist.constant_inputs, (ground, 0)),
            "gates": (*netlist.gates[:index], cut, *netlist.gates[index + 1 :]),
        }
    )
    report = verify_equivalence(mutated, xor2_spec)
    assert not report.passed
    assert [c.vector for c in report.counterexamples] == ["01"]
    assert report.counterexamples[0].expected == "1"
    assert report.counterexamples[0].got == "0"
