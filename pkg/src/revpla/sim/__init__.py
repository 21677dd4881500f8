"""Netlist simulation, equivalence checking and reversibility audits."""
