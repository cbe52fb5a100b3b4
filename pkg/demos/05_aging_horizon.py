"""
Aging over the vehicle's life
=============================

Capacity fade and resistance growth accumulate from two sources: calendar
aging, linear in time with rates tied to storage SOC and temperature, and
cycle aging, linear in equivalent full cycles with rates tied to cycle depth
and mean SOC (counted from the SOC trace by a streaming rainflow algorithm).
Both roads lead to end-of-life at 80 % capacity or 200 % resistance.
"""

from evplant import default_data_dir, eol_check
from evplant.aging import (
    AgingState,
    calendar_step,
    cycle_accumulate,
    flush_cycles,
    load_calendar_coeffs,
    load_cycle_coeffs,
)

cal = load_calendar_coeffs(default_data_dir())
cyc = load_cycle_coeffs(default_data_dir())

# Calendar: a year parked at different SOCs and temperatures.
print("capacity remaining after one parked year:")
print("  SOC \\ T   25 degC   40 degC   60 degC")
for soc in (0.25, 0.66, 0.90, 1.00):
    row = [1.0 - cal.alpha_c.interpolate(soc, t) * 365 for t in (25.0, 40.0, 60.0)]
    print(f"  {soc * 100:4.0f} %   " + "   ".join(f"{c * 100:6.2f} %" for c in row))

state = AgingState()
while state.c_norm > 0.8:
    calendar_step(state, 1.0, 40.0, 1.0, cal)
print(f"\nstored full at 40 degC, capacity end-of-life after {state.elapsed_days:.0f} days")

state = AgingState()
while state.r_norm < 2.0:
    calendar_step(state, 0.66, 60.0, 1.0, cal)
print(f"stored at 66 % SOC and 60 degC, resistance end-of-life after {state.elapsed_days:.0f} days")

# Cycling: deep cycles cost more life per equivalent full cycle.
print("\ncycling 10..90 % SOC until end-of-life:")
state = AgingState()
cycle_accumulate(state, 0.10, cyc)
while state.c_norm > 0.8:
    cycle_accumulate(state, 0.90, cyc)
    cycle_accumulate(state, 0.10, cyc)
flush_cycles(state, cyc)
print(f"  {state.eqfc:.0f} equivalent full cycles, status: {eol_check(state).value}")

# A day of mixed use books both contributions on one state.
state = AgingState()
for day in range(365):
    for soc in (0.8, 0.5, 0.7, 0.4, 0.8):  # two short trips and a recharge
        cycle_accumulate(state, soc, cyc)
    calendar_step(state, 0.6, 25.0, 1.0, cal)
flush_cycles(state, cyc)
print(
    f"\none year of daily mixed use: capacity {state.c_norm * 100:.2f} %, "
    f"resistance {state.r_norm * 100:.1f} %, {state.eqfc:.0f} EQFC"
)
