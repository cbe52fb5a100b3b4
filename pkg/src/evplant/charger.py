"""On-board AC charger model.

Covers the four behaviors that matter for charge control studies: set-point
quantization (integer-ampere pilot signaling from 6 A to 16 A, or the two
fixed one-phase cable settings), the measured ramp dynamics after a set-point
change (up to 52 s up, 4 s down), AC-to-DC conversion efficiency as a function
of AC power, and voltage-limited (CV) current tapering.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

# ramp dynamics after a new set-point command
RAMP_UP_DURATION_S = 52.0  # upward target reached after at most this
RAMP_DOWN_DELAY_S = 4.0  # downward target reached after this
DEFAULT_DEAD_TIME_S = 2.0  # initial reaction delay when starting from 0 W

DEFAULT_GRID_VOLTAGE_V = 230.0
N_PHASES = 3
MIN_CURRENT_A = 6
MAX_CURRENT_A = 16
CURRENT_STEP_A = 1
ONE_PHASE_SETPOINTS_W = (1800.0, 2900.0)


class ChargerMode(Enum):
    ONE_PHASE = "one_phase"
    THREE_PHASE = "three_phase"


class PiecewiseLinear:
    """y(x) through anchor points, clamped to the end values outside their span."""

    def __init__(self, points: Sequence[tuple[float, float]]):
        if len(points) < 2:
            raise ValueError("need at least two anchor points")
        xs = [p[0] for p in points]
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("anchor abscissae must be strictly increasing")
        self.points = tuple((float(x), float(y)) for x, y in points)
        self._xs = tuple(xs)

    def __call__(self, x: float) -> float:
        pts = self.points
        if x <= pts[0][0]:
            return pts[0][1]
        if x >= pts[-1][0]:
            return pts[-1][1]
        i = bisect_right(self._xs, x) - 1
        x0, y0 = pts[i]
        x1, y1 = pts[i + 1]
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


def load_curve(path: str | Path) -> PiecewiseLinear:
    """Two-column comma-separated curve file (header row, then abscissa,value)."""
    path = Path(path)
    if not path.is_file():
        raise ValueError(f"missing curve file: {path}")
    rows = [ln.split(",") for ln in path.read_text().splitlines() if ln.strip()]
    try:
        points = [(float(a), float(b)) for a, b in rows[1:]]
    except ValueError:
        raise ValueError(f"non-numeric entry in curve file {path}") from None
    return PiecewiseLinear(points)


def _default_curve_dir() -> Path:
    return Path(__file__).parent / "data"


@dataclass
class ChargerConfig:
    mode: ChargerMode = ChargerMode.THREE_PHASE
    grid_voltage: float = DEFAULT_GRID_VOLTAGE_V  # V per phase
    min_current_a: int = MIN_CURRENT_A
    max_current_a: int = MAX_CURRENT_A
    current_step_a: int = CURRENT_STEP_A
    one_phase_setpoints: tuple[float, ...] = ONE_PHASE_SETPOINTS_W
    efficiency: PiecewiseLinear = field(
        default_factory=lambda: load_curve(_default_curve_dir() / "efficiency_curve.csv")
    )
    ramp: PiecewiseLinear = field(
        default_factory=lambda: load_curve(_default_curve_dir() / "ramp_curve.csv")
    )
    dead_time_s: float = DEFAULT_DEAD_TIME_S

    def __post_init__(self) -> None:
        etas = [y for _, y in self.efficiency.points]
        if any(not 0.0 < e <= 1.0 for e in etas):
            raise ValueError("efficiency anchors must lie in (0, 1]")
        if any(b < a for a, b in zip(etas, etas[1:])):
            raise ValueError("efficiency must be non-decreasing in power")
        if self.ramp(0.0) != 0.0 or self.ramp(RAMP_UP_DURATION_S) != 1.0:
            raise ValueError(
                f"ramp curve must start at 0 and reach 1 at {RAMP_UP_DURATION_S} s"
            )
        if not 0.0 <= self.dead_time_s < RAMP_UP_DURATION_S:
            raise ValueError("dead time must lie within the ramp-up duration")


def achievable_setpoints(config: ChargerConfig) -> tuple[float, ...]:
    """All commandable AC powers including 0 (charging off), ascending."""
    if config.mode is ChargerMode.ONE_PHASE:
        return (0.0,) + tuple(sorted(config.one_phase_setpoints))
    powers = [
        N_PHASES * config.grid_voltage * n
        for n in range(config.min_current_a, config.max_current_a + 1, config.current_step_a)
    ]
    return (0.0,) + tuple(powers)


def quantize_setpoint(requested_w: float, config: ChargerConfig) -> float:
    """Largest achievable set-point not exceeding the request; 0 below the minimum."""
    if requested_w < 0 or not math.isfinite(requested_w):
        raise ValueError(f"requested power must be finite and >= 0, got {requested_w}")
    best = 0.0
    for p in achievable_setpoints(config):
        if p <= requested_w:
            best = p
    return best


class Direction(Enum):
    UP = "up"
    DOWN = "down"
    NONE = "none"


@dataclass
class ChargeControlState:
    """Commanded set-point plus what is needed to replay the ramp."""

    p_target: float = 0.0  # W AC, quantized
    p_at_command: float = 0.0  # W AC when the command was issued
    t_since_command: float = RAMP_UP_DURATION_S
    direction: Direction = Direction.NONE


def command_setpoint(
    state: ChargeControlState, new_target_w: float, current_power_w: float
) -> ChargeControlState:
    """Record a new (already quantized) set-point; the ramp restarts from now."""
    if new_target_w > current_power_w:
        direction = Direction.UP
    elif new_target_w < current_power_w:
        direction = Direction.DOWN
    else:
        direction = Direction.NONE
    return ChargeControlState(
        p_target=new_target_w,
        p_at_command=current_power_w,
        t_since_command=0.0,
        direction=direction,
    )


def ramp_power(state: ChargeControlState, t: float, config: ChargerConfig) -> float:
    """AC power ``t`` seconds after the last set-point command.

    Upward changes follow the normalized mean ramp shape and land on the
    target at exactly 52 s; downward changes hold the old power for 4 s and
    then step to the target. A command starting from 0 W first sits through
    the reaction dead time, with the remaining shape compressed so the target
    is still reached at 52 s.
    """
    if state.direction is Direction.NONE:
        return state.p_target
    if state.direction is Direction.DOWN:
        return state.p_at_command if t < RAMP_DOWN_DELAY_S else state.p_target
    if t >= RAMP_UP_DURATION_S:
        return state.p_target
    t_eff = t
    if state.p_at_command == 0.0 and config.dead_time_s > 0.0:
        t_eff = (
            max(0.0, t - config.dead_time_s)
            * RAMP_UP_DURATION_S
            / (RAMP_UP_DURATION_S - config.dead_time_s)
        )
    return state.p_at_command + (state.p_target - state.p_at_command) * config.ramp(t_eff)


def ac_to_dc(p_ac: float, config: ChargerConfig) -> float:
    """DC power into the battery for a given AC draw."""
    if p_ac < 0:
        raise ValueError(f"AC power must be >= 0, got {p_ac}")
    if p_ac == 0.0:
        return 0.0
    return p_ac * config.efficiency(p_ac)


def dc_to_ac(p_dc: float, config: ChargerConfig) -> float:
    """AC draw needed for a given DC power: the exact inverse of :func:`ac_to_dc`.

    p * eta(p) is strictly increasing (eta positive and non-decreasing), so the
    inverse is unique; solved segment by segment on the efficiency curve.
    """
    if p_dc < 0:
        raise ValueError(f"DC power must be >= 0, got {p_dc}")
    if p_dc == 0.0:
        return 0.0
    pts = config.efficiency.points
    # below the first anchor and above the last, eta is constant
    if p_dc <= pts[0][0] * pts[0][1]:
        return p_dc / pts[0][1]
    if p_dc >= pts[-1][0] * pts[-1][1]:
        return p_dc / pts[-1][1]
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        g0, g1 = x0 * y0, x1 * y1
        if g0 <= p_dc <= g1:
            slope = (y1 - y0) / (x1 - x0)
            if slope == 0.0:
                return p_dc / y0
            # solve slope*p^2 + (y0 - slope*x0)*p - p_dc = 0 for p in [x0, x1]
            b = y0 - slope * x0
            return (-b + math.sqrt(b * b + 4.0 * slope * p_dc)) / (2.0 * slope)
    raise AssertionError("unreachable: dc power not bracketed")


def cc_cv_limit(
    p_dc_request: float,
    pack_voltage: float,
    v_max_pack: float,
    v_pred_offset: float,
    v_pred_slope: float,
) -> float:
    """DC current command for constant-power charging with a voltage ceiling.

    Below the limit the command is simply request/voltage. The CV taper uses
    the plant's one-step prediction ``v = v_pred_offset + v_pred_slope * i``
    (pack level) and picks the largest current whose predicted voltage stays
    at or under ``v_max_pack``; the result is never negative.
    """
    if pack_voltage <= 0:
        raise ValueError(f"pack voltage must be positive, got {pack_voltage}")
    if p_dc_request <= 0:
        return 0.0
    i_cc = p_dc_request / pack_voltage
    i_cv = (v_max_pack - v_pred_offset) / v_pred_slope
    return max(0.0, min(i_cc, i_cv))
