"""Fixed-timestep simulation engine coupling plant, charger, BMS, and strategy.

Each step: resolve the active profile segment; when plugged in, poll the
strategy at the control interval, quantize and ramp the AC set-point, convert
to DC, apply the CV current limit and the BMS gate; when driving, convert the
requested DC power to current against the latest pack voltage and gate it.
Then advance the cell electrics, feed the cell heat (times the series count)
to the thermal model, and accrue aging at its own cadence. Runs are purely
deterministic: identical inputs give bit-identical trajectories.

The CV limiter targets the cell voltage ceiling minus a 0.1 mV margin so the
pinned voltage sits strictly inside the BMS trip level and tapering is smooth.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .aging import (
    AgingState,
    calendar_step,
    cycle_accumulate,
    eol_check,
    flush_cycles,
    load_calendar_coeffs,
    load_cycle_coeffs,
)
from .bms import GateReason, gate_current
from .charger import (
    ChargeControlState,
    ChargerConfig,
    ChargerMode,
    ac_to_dc,
    achievable_setpoints,
    cc_cv_limit,
    command_setpoint,
    dc_to_ac,
    load_curve,
    quantize_setpoint,
    ramp_power,
)
from .ecm import EcmState, rest_voltage, step_ecm, voltage_prediction_coeffs
from .params import default_data_dir, load_parameter_set
from .scenario import ScenarioConfig, ScenarioProfile, SegmentKind
from .thermal import ThermalMode, ThermalParams, ThermalState, step_thermal

SECONDS_PER_DAY = 86400.0

# CV target sits this far below the cell voltage limit (see module docstring)
CV_MARGIN_V_PER_CELL = 1e-4

TRAJECTORY_HEADER = "t_s,soc,v_cell_v,v_pack_v,i_dc_a,t_pack_c,p_ac_w,p_dc_w,c_norm,r_norm,eqfc,flags"


@dataclass(frozen=True)
class StrategyObservation:
    """What a charge strategy is allowed to see; never plant internals."""

    t_s: float
    soc: float
    t_pack_c: float
    plugged: bool
    ac_power_w: float  # currently drawn AC power
    setpoints_w: tuple[float, ...]  # achievable AC set-points incl. 0


Strategy = Callable[[StrategyObservation], float]


def strategy_max_power(obs: StrategyObservation) -> float:
    """Always request the highest achievable set-point."""
    return obs.setpoints_w[-1]


def strategy_off(obs: StrategyObservation) -> float:
    return 0.0


def make_constant_strategy(watts: float) -> Strategy:
    def strategy(obs: StrategyObservation) -> float:
        return watts

    return strategy


def make_profile_strategy(profile: ScenarioProfile) -> Strategy:
    """Request the profile record's ``value_w`` while plugged in (the default)."""
    ts = [r.t_s for r in profile.records]
    records = profile.records

    def strategy(obs: StrategyObservation) -> float:
        idx = max(bisect_right(ts, obs.t_s) - 1, 0)
        return max(0.0, records[idx].value_w)

    return strategy


@dataclass
class Trajectory:
    """Per-step simulation record; rows are stamped with the end of each step."""

    t_s: np.ndarray
    soc: np.ndarray
    v_cell: np.ndarray
    v_pack: np.ndarray
    i_dc: np.ndarray
    t_pack: np.ndarray
    p_ac: np.ndarray
    p_dc: np.ndarray
    c_norm: np.ndarray
    r_norm: np.ndarray
    eqfc: np.ndarray
    flags: list[str]

    @classmethod
    def empty(cls) -> "Trajectory":
        z = np.zeros(0)
        return cls(z, z, z, z, z, z, z, z, z, z, z, [])

    @property
    def n_rows(self) -> int:
        return len(self.t_s)


@dataclass
class ValidationMetrics:
    rmse_cell_voltage_mv: float
    max_abs_error_cell_voltage_mv: float
    rmse_pack_temp_k: float
    max_abs_error_pack_temp_k: float
    charge_ah: float
    energy_kwh: float
    duration_min: float

    def as_dict(self) -> dict[str, float]:
        return {
            "rmse_cell_voltage_mv": self.rmse_cell_voltage_mv,
            "max_abs_error_cell_voltage_mv": self.max_abs_error_cell_voltage_mv,
            "rmse_pack_temp_k": self.rmse_pack_temp_k,
            "max_abs_error_pack_temp_k": self.max_abs_error_pack_temp_k,
            "charge_ah": self.charge_ah,
            "energy_kwh": self.energy_kwh,
            "duration_min": self.duration_min,
        }


def run_scenario(
    config: ScenarioConfig,
    profile: ScenarioProfile,
    strategy: Strategy | None = None,
) -> Trajectory:
    """Simulate one scenario; see the module docstring for the step order."""
    records = profile.records
    if len(records) < 2:
        return Trajectory.empty()
    dt = config.dt_s
    n_steps = int(math.floor(profile.duration_s / dt + 1e-9))
    if n_steps <= 0:
        return Trajectory.empty()
    control_every = max(1, int(round(config.control_interval_s / dt)))
    aging_every = max(1, int(round(config.aging_interval_s / dt)))

    params = load_parameter_set(config.data_dir)
    aging_dir = config.aging_data_dir if config.aging_data_dir is not None else config.data_dir
    cal_coeffs = load_calendar_coeffs(aging_dir)
    cyc_coeffs = load_cycle_coeffs(aging_dir)
    th_params = ThermalParams.for_mode(config.thermal_mode, c_pack=config.c_pack_j_per_k)
    ramp_curve = load_curve(config.ramp_curve or default_data_dir() / "ramp_curve.csv")
    eff_curve = load_curve(config.efficiency_curve or default_data_dir() / "efficiency_curve.csv")
    charger_cfgs = {
        mode: ChargerConfig(
            mode=mode,
            grid_voltage=config.grid_voltage_v,
            efficiency=eff_curve,
            ramp=ramp_curve,
            dead_time_s=config.dead_time_s,
        )
        for mode in ChargerMode
    }
    limits = config.bms
    if strategy is None:
        strategy = make_profile_strategy(profile)

    ecm_state = EcmState(soc=config.initial_soc)
    aging = AgingState()
    t0 = records[0].t_s
    t_init = config.initial_temp_c if config.initial_temp_c is not None else records[0].ambient_c
    th_state = ThermalState(t_pack=t_init)
    v_cell = rest_voltage(ecm_state, params, th_state.t_pack)
    v_pack = params.n_series * v_cell
    v_max_pack = params.n_series * (params.v_max - CV_MARGIN_V_PER_CELL)

    ctrl = ChargeControlState()
    p_ac_prev = 0.0
    was_plugged = False
    rec_idx = 0

    rows: list[tuple] = []
    flags_col: list[str] = []

    for k in range(n_steps):
        t = t0 + k * dt
        while rec_idx + 1 < len(records) and records[rec_idx + 1].t_s <= t:
            rec_idx += 1
        rec = records[rec_idx]
        kind = rec.kind
        plugged = kind is SegmentKind.PLUGGED
        flags = [kind.value]
        gate = None
        i_dc = 0.0
        p_ac = 0.0

        if plugged:
            ch_cfg = charger_cfgs[rec.charger_mode or config.charger_mode]
            if not was_plugged:
                ctrl = ChargeControlState()
                p_ac_prev = 0.0
            if k % control_every == 0 or not was_plugged:
                obs = StrategyObservation(
                    t_s=t,
                    soc=ecm_state.soc,
                    t_pack_c=th_state.t_pack,
                    plugged=True,
                    ac_power_w=p_ac_prev,
                    setpoints_w=achievable_setpoints(ch_cfg),
                )
                requested = float(strategy(obs))
                if not math.isfinite(requested) or requested < 0:
                    raise ValueError(f"strategy returned invalid power {requested!r} at t={t}")
                target = quantize_setpoint(requested, ch_cfg)
                if target != ctrl.p_target:
                    ctrl = command_setpoint(ctrl, target, p_ac_prev)
            p_ac_set = ramp_power(ctrl, ctrl.t_since_command, ch_cfg)
            p_dc_avail = ac_to_dc(p_ac_set, ch_cfg)
            a_cell, b_cell = voltage_prediction_coeffs(
                ecm_state, params, aging, th_state.t_pack, dt
            )
            i_cmd = cc_cv_limit(
                p_dc_avail,
                v_pack,
                v_max_pack,
                params.n_series * a_cell,
                params.n_series * b_cell,
            )
            gate = gate_current(i_cmd, ecm_state.soc, v_cell, th_state.t_pack, limits)
            i_dc = gate.allowed_current
            ctrl.t_since_command += dt
        elif kind is SegmentKind.DRIVE:
            i_req = rec.value_w / v_pack
            gate = gate_current(i_req, ecm_state.soc, v_cell, th_state.t_pack, limits)
            i_dc = gate.allowed_current

        try:
            ecm_state, res = step_ecm(ecm_state, params, aging, i_dc, th_state.t_pack, dt)
        except ValueError as exc:
            raise RuntimeError(f"electrical step failed at step {k} (t={t} s): {exc}") from exc
        v_cell = res.terminal_voltage_cell
        v_pack = res.terminal_voltage_pack
        p_dc = i_dc * v_pack
        if plugged and p_dc > 0:
            p_ac = dc_to_ac(p_dc, charger_cfgs[rec.charger_mode or config.charger_mode])

        cooling = (
            config.thermal_mode is ThermalMode.EV_OPERATION
            and (kind is SegmentKind.DRIVE or (plugged and i_dc > 0))
            and th_state.t_pack > rec.ambient_c
        )
        try:
            th_state = step_thermal(
                th_state,
                res.heat_power * params.n_series,
                rec.ambient_c,
                dt,
                th_params,
                cooling_active=cooling,
                charging=plugged,
            )
        except ValueError as exc:
            raise RuntimeError(f"thermal step failed at step {k} (t={t} s): {exc}") from exc

        if (k + 1) % aging_every == 0:
            calendar_step(
                aging, ecm_state.soc, th_state.t_pack, aging_every * dt / SECONDS_PER_DAY, cal_coeffs
            )
            cycle_accumulate(aging, ecm_state.soc, cyc_coeffs)

        if gate is not None and gate.reason is not GateReason.OK:
            flags.append(gate.reason.value)
        if res.soc_clipped:
            flags.append("soc_clip")
        if gate is not None and gate.heating_required:
            flags.append("heating")
        if not th_state.in_envelope():
            flags.append("temp_envelope")

        rows.append(
            (
                t + dt,
                ecm_state.soc,
                v_cell,
                v_pack,
                i_dc,
                th_state.t_pack,
                p_ac,
                p_dc,
                aging.c_norm,
                aging.r_norm,
                aging.eqfc,
            )
        )
        flags_col.append("|".join(flags))
        p_ac_prev = p_ac
        was_plugged = plugged

    # book the unclosed residual half cycles into the final reported state
    flush_cycles(aging, cyc_coeffs)
    if rows:
        last = rows[-1]
        rows[-1] = last[:8] + (aging.c_norm, aging.r_norm, aging.eqfc)

    cols = list(zip(*rows)) if rows else [[]] * 11
    return Trajectory(*(np.asarray(c, dtype=float) for c in cols), flags=flags_col)


def compute_metrics(sim: Trajectory, reference: Trajectory) -> ValidationMetrics:
    """Deviation of a simulated trajectory from a reference one.

    The reference is zero-order-hold resampled onto the simulation timestamps;
    samples outside the reference's time span are dropped. Charge and energy
    integrals use the trapezoidal rule over the simulated trajectory.
    """
    if sim.n_rows == 0 or reference.n_rows == 0:
        raise ValueError("cannot compute metrics on an empty trajectory")
    mask = (sim.t_s >= reference.t_s[0]) & (sim.t_s <= reference.t_s[-1])
    if not np.any(mask):
        raise ValueError("no overlapping samples between simulation and reference")
    idx = np.searchsorted(reference.t_s, sim.t_s[mask], side="right") - 1

    dv_mv = (sim.v_cell[mask] - reference.v_cell[idx]) * 1000.0
    dt_k = sim.t_pack[mask] - reference.t_pack[idx]
    return ValidationMetrics(
        rmse_cell_voltage_mv=float(np.sqrt(np.mean(dv_mv**2))),
        max_abs_error_cell_voltage_mv=float(np.max(np.abs(dv_mv))),
        rmse_pack_temp_k=float(np.sqrt(np.mean(dt_k**2))),
        max_abs_error_pack_temp_k=float(np.max(np.abs(dt_k))),
        charge_ah=float(np.trapezoid(sim.i_dc, sim.t_s) / 3600.0),
        energy_kwh=float(np.trapezoid(sim.i_dc * sim.v_pack, sim.t_s) / 3.6e6),
        duration_min=float((sim.t_s[-1] - sim.t_s[0]) / 60.0),
    )


def _step_integral(values: np.ndarray, t: np.ndarray) -> float:
    """Sum of value*dt for end-of-step stamped rows on a uniform grid."""
    if len(t) < 2:
        return 0.0
    dt = float(t[1] - t[0])
    return float(np.sum(values) * dt)


def emit_report(
    trajectory: Trajectory,
    metrics: ValidationMetrics | None,
    out_dir: str | Path,
) -> list[Path]:
    """Write ``trajectory.csv`` and ``summary.txt`` into ``out_dir``."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    traj_path = out_dir / "trajectory.csv"
    summary_path = out_dir / "summary.txt"

    lines = [TRAJECTORY_HEADER]
    for i in range(trajectory.n_rows):
        lines.append(
            ",".join(
                [
                    repr(float(trajectory.t_s[i])),
                    repr(float(trajectory.soc[i])),
                    repr(float(trajectory.v_cell[i])),
                    repr(float(trajectory.v_pack[i])),
                    repr(float(trajectory.i_dc[i])),
                    repr(float(trajectory.t_pack[i])),
                    repr(float(trajectory.p_ac[i])),
                    repr(float(trajectory.p_dc[i])),
                    repr(float(trajectory.c_norm[i])),
                    repr(float(trajectory.r_norm[i])),
                    repr(float(trajectory.eqfc[i])),
                    trajectory.flags[i],
                ]
            )
        )
    traj_path.write_text("\n".join(lines) + "\n")

    summary: dict[str, object] = {"rows": trajectory.n_rows}
    if trajectory.n_rows:
        final = AgingState(
            c_norm=float(trajectory.c_norm[-1]), r_norm=float(trajectory.r_norm[-1])
        )
        summary.update(
            {
                "duration_min": (trajectory.t_s[-1] - trajectory.t_s[0]) / 60.0,
                "charge_ah": _step_integral(trajectory.i_dc, trajectory.t_s) / 3600.0,
                "ac_energy_kwh": _step_integral(trajectory.p_ac, trajectory.t_s) / 3.6e6,
                "dc_energy_kwh": _step_integral(trajectory.p_dc, trajectory.t_s) / 3.6e6,
                "final_soc": trajectory.soc[-1],
                "final_t_pack_c": trajectory.t_pack[-1],
                "final_c_norm": final.c_norm,
                "final_r_norm": final.r_norm,
                "final_eqfc": trajectory.eqfc[-1],
                "eol_status": eol_check(final).value,
            }
        )
    if metrics is not None:
        summary.update(metrics.as_dict())
    summary_lines = [
        f"{key} = {repr(float(val)) if isinstance(val, (int, float)) and not isinstance(val, bool) else val}"
        for key, val in summary.items()
    ]
    summary_path.write_text("\n".join(summary_lines) + "\n")
    return [traj_path, summary_path]


def read_trajectory(path: str | Path) -> Trajectory:
    """Read back a trajectory CSV written by :func:`emit_report`."""
    path = Path(path)
    if not path.is_file():
        raise ValueError(f"missing trajectory file: {path}")
    lines = [ln for ln in path.read_text().splitlines() if ln.strip()]
    if not lines or lines[0] != TRAJECTORY_HEADER:
        raise ValueError(f"{path}: first line must be '{TRAJECTORY_HEADER}'")
    rows = []
    flags = []
    for idx, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != 12:
            raise ValueError(f"{path} row {idx}: expected 12 cells, got {len(cells)}")
        rows.append(tuple(float(c) for c in cells[:11]))
        flags.append(cells[11])
    cols = list(zip(*rows)) if rows else [[]] * 11
    return Trajectory(*(np.asarray(c, dtype=float) for c in cols), flags=flags)
