"""Discrete-time dual-polarization (2RC) cell model, scaled 93-in-series to the pack.

Sign convention: charging current is positive. The RC overpotentials use the
exact zero-order-hold update, so the discrete trajectory reproduces the
continuous solution exactly for piecewise-constant current. Parameters are
looked up at the state at the start of the step; aged resistance applies as a
uniform multiplier on r_ser, r1 and r2, and SOC is counted against the aged
(effective) capacity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .aging import AgingState
from .params import CellParameterSet

SECONDS_PER_HOUR = 3600.0


@dataclass
class EcmState:
    """Cell electrical state: SOC plus the two RC overpotentials (V)."""

    soc: float
    u1: float = 0.0
    u2: float = 0.0


@dataclass
class ElectricalStepResult:
    terminal_voltage_cell: float  # V
    terminal_voltage_pack: float  # V
    heat_power: float  # W, per cell, >= 0
    soc_after: float
    soc_clipped: bool = False


def _check_finite(label: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"non-finite {label}: {v!r}")


def _effective_params(
    state: EcmState, params: CellParameterSet, aging: AgingState, temp: float
) -> tuple[float, float, float, float, float, float]:
    """(ocv, r_ser, r1, c1, r2, c2) at the step's starting point, aged."""
    soc = state.soc
    ocv = params.ocv.interpolate(soc, temp)
    r_norm = aging.r_norm
    r_ser = params.r_ser.interpolate(soc, temp) * r_norm
    r1 = params.r1.interpolate(soc, temp) * r_norm
    r2 = params.r2.interpolate(soc, temp) * r_norm
    c1 = params.c1.interpolate(soc, temp)
    c2 = params.c2.interpolate(soc, temp)
    return ocv, r_ser, r1, c1, r2, c2


def step_ecm(
    state: EcmState,
    params: CellParameterSet,
    aging: AgingState,
    current: float,
    temp: float,
    dt: float,
) -> tuple[EcmState, ElectricalStepResult]:
    """Advance the cell by one step of ``dt`` seconds at constant ``current`` (A).

    Returns the new state and the step result (terminal voltages, irreversible
    heat, SOC). SOC leaving [0, 1] saturates and sets ``soc_clipped``; keeping
    it inside the window is the charge controller's job, not the plant's.
    """
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    _check_finite("step input", state.soc, state.u1, state.u2, current, temp, dt)

    ocv, r_ser, r1, c1, r2, c2 = _effective_params(state, params, aging, temp)

    k1 = math.exp(-dt / (r1 * c1))
    k2 = math.exp(-dt / (r2 * c2))
    u1 = state.u1 * k1 + r1 * current * (1.0 - k1)
    u2 = state.u2 * k2 + r2 * current * (1.0 - k2)

    c_eff_ah = params.nominal_capacity_ah * aging.c_norm
    soc = state.soc + current * dt / (SECONDS_PER_HOUR * c_eff_ah)
    clipped = soc < 0.0 or soc > 1.0
    if clipped:
        soc = min(max(soc, 0.0), 1.0)

    v_cell = ocv + current * r_ser + u1 + u2
    heat = current * current * r_ser + u1 * u1 / r1 + u2 * u2 / r2
    _check_finite("step output", u1, u2, soc, v_cell, heat)

    result = ElectricalStepResult(
        terminal_voltage_cell=v_cell,
        terminal_voltage_pack=params.n_series * v_cell,
        heat_power=heat,
        soc_after=soc,
        soc_clipped=clipped,
    )
    return EcmState(soc=soc, u1=u1, u2=u2), result


def rest_voltage(state: EcmState, params: CellParameterSet, temp: float) -> float:
    """Terminal cell voltage at zero current: OCV plus the RC overpotentials."""
    return params.ocv.interpolate(state.soc, temp) + state.u1 + state.u2


def voltage_prediction_coeffs(
    state: EcmState,
    params: CellParameterSet,
    aging: AgingState,
    temp: float,
    dt: float,
) -> tuple[float, float]:
    """Affine coefficients (a, b) with predicted end-of-step cell voltage a + b*I.

    Mirrors :func:`step_ecm` exactly for constant current over one step, which
    lets a voltage limiter pick the largest current whose predicted voltage
    stays at or under a ceiling.
    """
    ocv, r_ser, r1, c1, r2, c2 = _effective_params(state, params, aging, temp)
    k1 = math.exp(-dt / (r1 * c1))
    k2 = math.exp(-dt / (r2 * c2))
    a = ocv + state.u1 * k1 + state.u2 * k2
    b = r_ser + r1 * (1.0 - k1) + r2 * (1.0 - k2)
    return a, b
