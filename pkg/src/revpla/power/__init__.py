"""Power-gating model: subthreshold leakage, virtual ground and wattmeter tables."""
