"""
Cell parameter tables
=====================

The electrical behavior of the 52 Ah pouch cell is captured by six lookup
tables over state of charge and temperature: the open-circuit voltage, the
series resistance, and the two RC pairs of the dual-polarization equivalent
circuit. This walk-through loads the shipped tables, samples them, and runs
the consistency scan.
"""

import numpy as np

from evplant import default_data_dir, load_parameter_set, validate_parameter_set

pset = load_parameter_set(default_data_dir())

# The tables resolve 5 % SOC steps; temperatures span -15..35 degC for the
# impedance parameters and -5..35 degC for the OCV (with guard rows at -5 %
# and 105 % SOC so lookups stay defined at the window edges).
for name in ("ocv", "r_ser", "r1", "r2", "c1", "c2"):
    grid = pset.grid(name)
    print(
        f"{name:6s}: {len(grid.soc_breakpoints):2d} SOC rows x "
        f"{len(grid.temp_breakpoints)} temperature columns, "
        f"range {grid.values.min():.6g} .. {grid.values.max():.6g}"
    )

# Lookups are bilinear between nodes and clamp outside the hull, so a query
# at 60 degC simply returns the 35 degC column.
print()
print("OCV at 50 % SOC, 25 degC:", pset.ocv.interpolate(0.50, 25.0), "V")
print("OCV at 50 % SOC, 60 degC:", pset.ocv.interpolate(0.50, 60.0), "V (clamped)")
print("R_ser at 50 % SOC, 25 degC:", pset.r_ser.interpolate(0.50, 25.0), "Ohm")

# The two RC time constants separate the fast charge-transfer process from
# the slow diffusion process; their ordering holds at every node.
taus = []
for soc in pset.r1.soc_breakpoints:
    for temp in pset.r1.temp_breakpoints:
        tau1 = pset.r1.interpolate(soc, temp) * pset.c1.interpolate(soc, temp)
        tau2 = pset.r2.interpolate(soc, temp) * pset.c2.interpolate(soc, temp)
        taus.append((tau1, tau2))
taus = np.array(taus)
print()
print(f"tau1 spans {taus[:, 0].min():.4g} .. {taus[:, 0].max():.4g} s")
print(f"tau2 spans {taus[:, 1].min():.4g} .. {taus[:, 1].max():.4g} s")
print("tau1 < tau2 everywhere:", bool(np.all(taus[:, 0] < taus[:, 1])))

# The validation report separates hard errors (none in the shipped data)
# from informational notes about suspicious nodes.
report = validate_parameter_set(pset)
print()
print(report.summary())
