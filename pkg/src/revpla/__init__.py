"""revpla - reversible PLA synthesis, verification and power-gating analysis."""

__version__ = "0.1.0"
