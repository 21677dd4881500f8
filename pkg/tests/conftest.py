"""Shared fixtures."""

from pathlib import Path

import numpy as np
import pytest

from revpla.pla.plaspec import PlaSpec, parse_pla
from revpla.power.model import DeviceParams

SAMPLES = Path(__file__).resolve().parent.parent / "samples"

XOR2 = """\
.i 2
.o 1
01 1
10 1
.e
"""

FULL_ADDER = """\
.i 3
.o 2
001 10
010 10
100 10
111 11
11- 01
1-1 01
-11 01
.e
"""


@pytest.fixture
def xor2_spec() -> PlaSpec:
    """Two-input exclusive or."""
    return parse_pla(XOR2)


@pytest.fixture
def full_adder_spec() -> PlaSpec:
    """One-bit full adder (sum, carry)."""
    return parse_pla(FULL_ADDER)


@pytest.fixture
def samples_dir() -> Path:
    """Directory holding the sample PLA, parameter and calibration files."""
    return SAMPLES


@pytest.fixture
def device_params() -> DeviceParams:
    """Parameter point whose closed-form virtual ground is exactly 2.0 V."""
    return DeviceParams(
        i0=1e-9,
        wl_circuit=10.0,
        wl_footer=1.0,
        vth_circuit=0.3,
        vth_footer=0.5,
        eta=0.1,
        ss=0.1,
        vdd=1.0,
        vg_footer=0.0,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for parameter sweeps."""
    return np.random.default_rng(20240611)


def random_device_params(rng: np.random.Generator) -> DeviceParams:
    """Draw a parameter point with the footer gate at or below ground."""
    return DeviceParams(
        i0=float(rng.uniform(1e-10, 1e-9)),
        wl_circuit=float(rng.uniform(1.0, 20.0)),
        wl_footer=float(rng.uniform(1.0, 20.0)),
        vth_circuit=float(rng.uniform(0.3, 0.5)),
        vth_footer=float(rng.uniform(0.35, 0.6)),
        eta=float(rng.uniform(0.02, 0.15)),
        ss=float(rng.uniform(0.07, 0.11)),
        vdd=float(rng.uniform(0.6, 1.2)),
        vg_footer=float(rng.uniform(-0.2, 0.0)),
    )


@pytest.fixture
def draw_params(rng):
    """Callable returning a fresh random parameter point."""
    return lambda: random_device_params(rng)
