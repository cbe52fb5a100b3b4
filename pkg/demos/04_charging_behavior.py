"""
Charging behavior
=================

Charging is commanded through discrete AC set-points (integer pilot amperes
on three phases, or the two one-phase cable settings), reached via a
measured ramp: up to 52 s up, 4 s down. The charger converts AC to DC with a
power-dependent efficiency, and the current tapers once the pack approaches
its voltage ceiling (CV phase). A full charge ends when the BMS closes the
SOC window.
"""

import numpy as np

from evplant import ChargerConfig, ChargerMode, quantize_setpoint
from evplant.charger import ac_to_dc, achievable_setpoints
from evplant.engine import make_constant_strategy, run_scenario
from evplant.scenario import ProfileRecord, ScenarioConfig, ScenarioProfile, SegmentKind

three_phase = ChargerConfig(mode=ChargerMode.THREE_PHASE)
print("achievable 3-phase set-points (W):", [int(p) for p in achievable_setpoints(three_phase)])
for request in (3000.0, 5000.0, 8000.0, 12000.0):
    print(f"  request {request:7.0f} W -> set-point {quantize_setpoint(request, three_phase):7.0f} W")
print(f"AC->DC at 1.8 kW: {ac_to_dc(1800.0, three_phase):.0f} W (73 % efficient)")
print(f"AC->DC at 11 kW:  {ac_to_dc(11040.0, three_phase):.0f} W (92 % efficient)")
print()

# Full 11 kW charge across the usable window, 1 s resolution.
config = ScenarioConfig(initial_soc=0.032, initial_temp_c=20.0)
profile = ScenarioProfile(
    [
        ProfileRecord(0.0, SegmentKind.PLUGGED, 11040.0, 20.0, None),
        ProfileRecord(10000.0, SegmentKind.IDLE, 0.0, 20.0, None),
    ]
)
traj = run_scenario(config, profile, make_constant_strategy(11040.0))

charging = traj.i_dc > 0.01
minutes = charging.sum() / 60.0
e_ac = traj.p_ac.sum() / 3.6e6
e_dc = traj.p_dc.sum() / 3.6e6
print(f"full charge finished in {minutes:.0f} min")
print(f"charge delivered: {traj.i_dc.sum() / 3600:.2f} Ah")
print(f"AC energy {e_ac:.2f} kWh -> DC energy {e_dc:.2f} kWh "
      f"(ratio {e_dc / e_ac:.3f})")
print(f"peak cell voltage {traj.v_cell.max():.4f} V (CV phase pins just under 4.2 V)")

cv_rows = traj.v_cell > 4.195
print(f"CV taper: current falls from {traj.i_dc[cv_rows][0]:.1f} A to "
      f"{traj.i_dc[charging][-1]:.1f} A over the last {cv_rows.sum() / 60:.0f} min")

# The ramp is visible at the start of the trajectory.
print()
print("AC power during the first minute (one sample per 5 s):")
print(np.round(traj.p_ac[:60:5]).astype(int))
