"""Reversible gate library (Feynman and MUX gates)."""
