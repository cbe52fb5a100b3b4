"""
Cell pulse response
===================

A current pulse excites the three voltage components of the cell model: the
instantaneous ohmic drop across the series resistance, the fast RC branch
settling within tens of milliseconds, and the slow diffusion branch settling
over tens of seconds. The discrete update is an exact zero-order hold, so
coarse steps land on the continuous solution for piecewise-constant current.
"""

from evplant import EcmState, load_parameter_set, default_data_dir, step_ecm
from evplant.aging import AgingState

pset = load_parameter_set(default_data_dir())
fresh = AgingState()

state = EcmState(soc=0.50)
temp = 25.0

print("t_s   current_A   v_cell_V   u1_mV    u2_mV    heat_W")
t = 0.0
for phase, (current, duration) in enumerate([(26.0, 30), (0.0, 30), (-26.0, 30), (0.0, 30)]):
    for _ in range(duration):
        state, res = step_ecm(state, pset, fresh, current, temp, dt=1.0)
        t += 1.0
        if t % 10 == 0:
            print(
                f"{t:5.0f} {current:9.1f} {res.terminal_voltage_cell:10.4f}"
                f" {state.u1 * 1e3:8.2f} {state.u2 * 1e3:8.2f} {res.heat_power:9.3f}"
            )

print()
print(f"SOC after the symmetric pulse train: {state.soc:.6f} (started at 0.5)")
print(f"pack voltage = 93 x cell voltage = {res.terminal_voltage_pack:.2f} V")
