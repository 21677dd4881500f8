"""RPLA synthesis: netlist model, AND/OR plane builders and sleep domains."""
