"""Analytic footer-switch leakage model.

All exponentials are base 10 with the subthreshold slope ``ss`` in volts per
decade. The footer's drain-source voltage is taken to be the virtual ground
potential (drain at virtual ground, source at true ground).
"""

import logging
import math

from pydantic import BaseModel, ConfigDict, Field
from scipy.optimize import bisect

from ..errors import ParameterError

logger = logging.getLogger(__name__)


def _pow10(exponent: float, what: str) -> float:
    try:
        return 10**exponent
    except OverflowError:
        raise ParameterError(
            f"{what} overflows: 10^{exponent:.6g} is out of floating-point range"
        ) from None


class DeviceParams(BaseModel):
    """Electrical parameters of the logic block and its footer switch."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    i0: float = Field(..., gt=0, description="Current scale I0 (A)")
    wl_circuit: float = Field(..., gt=0, description="W/L of the logic circuit")
    wl_footer: float = Field(..., gt=0, description="W/L of the footer switch")
    vth_circuit: float = Field(..., description="Logic threshold voltage Vthc (V)")
    vth_footer: float = Field(..., description="Footer threshold voltage VthF (V)")
    eta: float = Field(..., gt=0, description="DIBL coefficient")
    ss: float = Field(..., gt=0, description="Subthreshold slope (V/decade)")
    vdd: float = Field(..., gt=0, description="Supply voltage (V)")
    vg_footer: float = Field(..., description="Footer gate voltage Vg (V)")


class ActivityParams(BaseModel):
    """Switching activity and current terms of the average power equation."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    alpha: float = Field(..., ge=0, le=1, description="0->1 switching probability")
    c_load: float = Field(..., ge=0, description="Load capacitance (F)")
    f_clk: float = Field(..., ge=0, description="Clock frequency (Hz)")
    i_shortcircuit: float = Field(..., ge=0, description="Short-circuit current (A)")
    i_leakage: float = Field(..., ge=0, description="Leakage current (A)")
    i_static: float = Field(..., ge=0, description="Static current (A)")


class PowerBreakdown(BaseModel):
    """The four average-power components and their sum (W)."""

    dynamic_w: float
    short_circuit_w: float
    leakage_w: float
    static_w: float
    total_w: float


class LeakageEstimate(BaseModel):
    """Chained leakage analysis of one parameter set."""

    circuit_leakage_a: float = Field(..., description="Logic leakage at Vg=0, Vds=Vdd-Vgnd")
    vgnd_v: float = Field(..., description="Virtual ground as given by the closed form")
    vgnd_clamped_v: float = Field(..., description="Virtual ground clamped into [0, Vdd]")
    clamped: bool = Field(..., description="True if clamping changed the value")
    sleep_active_ratio: float = Field(..., description="I_sleep / I_active at the clamped Vgnd")
    leakage_saving: float = Field(..., description="1 - sleep_active_ratio")
    balance_residual_a: float = Field(..., description="Circuit minus footer leakage at vgnd_v")
    balance_vgnd_v: float | None = Field(
        None, description="Bisection root of the balance on [0, Vdd], if bracketed"
    )


def subthreshold_current(
    i0: float, wl: float, vg: float, vth: float, eta: float, vds: float, ss: float
) -> float:
    """Subthreshold drain current I0 (W/L) 10^(((Vg - Vth) + eta Vds) / ss).

    Raises:
        ParameterError: If i0, wl or ss is not positive, or the current
            overflows
    """
    if i0 <= 0:
        raise ParameterError(f"i0 must be positive, got {i0}")
    if wl <= 0:
        raise ParameterError(f"W/L must be positive, got {wl}")
    if ss <= 0:
        raise ParameterError(f"subthreshold slope must be positive, got {ss}")
    return i0 * wl * _pow10(((vg - vth) + eta * vds) / ss, "subthreshold current")


def virtual_ground(p: DeviceParams) -> float:
    """Virtual ground potential solving the circuit/footer leakage balance.

    Not clamped; may lie outside [0, Vdd] for some parameter sets.

    Raises:
        ParameterError: If the width ratio is not positive
    """
    ratio = p.wl_circuit / p.wl_footer
    if ratio <= 0:
        raise ParameterError(f"width ratio must be positive, got {ratio}")
    return (
        -p.vg_footer
        + p.ss * math.log10(ratio)
        + (p.vth_footer - p.vth_circuit + p.eta * p.vdd)
    ) / (2 * p.eta)


def leakage_balance_residual(p: DeviceParams, vgnd: float) -> float:
    """Circuit leakage minus footer leakage at a given virtual ground."""
    circuit = subthreshold_current(
        p.i0, p.wl_circuit, 0.0, p.vth_circuit, p.eta, p.vdd - vgnd, p.ss
    )
    footer = subthreshold_current(
        p.i0, p.wl_footer, p.vg_footer, p.vth_footer, p.eta, vgnd, p.ss
    )
    return circuit - footer


def balance_point(p: DeviceParams, xtol: float = 1e-15) -> float | None:
    """Bisect the leakage balance for Vgnd on [0, Vdd].

    Returns:
        The root, or None if the residual does not change sign on the interval
    """
    low = leakage_balance_residual(p, 0.0)
    high = leakage_balance_residual(p, p.vdd)
    if low == 0:
        return 0.0
    if high == 0:
        return p.vdd
    if (low > 0) == (high > 0):
        logger.debug("balance not bracketed on [0, %g]: %g, %g", p.vdd, low, high)
        return None
    return bisect(
        lambda vgnd: leakage_balance_residual(p, vgnd), 0.0, p.vdd, xtol=xtol, maxiter=400
    )


def sleep_active_ratio(eta: float, vdd: float, vgnd: float, ss: float) -> float:
    """I_sleep / I_active = 10^(-eta (Vdd - Vgnd) / ss).

    Raises:
        ParameterError: If ss is not positive or the ratio overflows
    """
    if ss <= 0:
        raise ParameterError(f"subthreshold slope must be positive, got {ss}")
    return _pow10(-(eta * (vdd - vgnd)) / ss, "sleep/active ratio")


def power_breakdown(a: ActivityParams, vdd: float) -> PowerBreakdown:
    """Split average power into dynamic, short-circuit, leakage and static parts."""
    dynamic = a.alpha * a.c_load * vdd**2 * a.f_clk
    short_circuit = a.i_shortcircuit * vdd
    leakage = a.i_leakage * vdd
    static = a.i_static * vdd
    return PowerBreakdown(
        dynamic_w=dynamic,
        short_circuit_w=short_circuit,
        leakage_w=leakage,
        static_w=static,
        total_w=dynamic + short_circuit + leakage + static,
    )


def total_average_power(a: ActivityParams, vdd: float) -> float:
    """Average power as the sum of its four components (W)."""
    return power_breakdown(a, vdd).total_w


def leakage_report(p: DeviceParams) -> LeakageEstimate:
    """Chain the leakage, virtual ground, balance and sleep/active analyses."""
    vgnd = virtual_ground(p)
    clamped = min(max(vgnd, 0.0), p.vdd)
    if clamped != vgnd:
        logger.warning("virtual ground %.6g V outside [0, %.6g] V; clamped", vgnd, p.vdd)
    ratio = sleep_active_ratio(p.eta, p.vdd, clamped, p.ss)
    return LeakageEstimate(
        circuit_leakage_a=subthreshold_current(
            p.i0, p.wl_circuit, 0.0, p.vth_circuit, p.eta, p.vdd - vgnd, p.ss
        ),
        vgnd_v=vgnd,
        vgnd_clamped_v=clamped,
        clamped=clamped != vgnd,
        sleep_active_ratio=ratio,
        leakage_saving=1.0 - ratio,
        balance_residual_a=leakage_balance_residual(p, vgnd),
        balance_vgnd_v=balance_point(p),
    )
