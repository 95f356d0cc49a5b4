#!/usr/bin/env python3
"""The RAW-to-VWC calibration line and where the validity gates sit.

Prints the conversion over the interesting RAW range, the theta = 0
crossover, and how the dual gate (depth, theta window) classifies a few
representative readings.
"""

import numpy as np

from soilprobe.calib import (DEFAULT_THRESHOLDS, classify, raw_to_vwc,
                             vwc_to_raw)

print("RAW counts -> volumetric water content (m3/m3)")
for raw in (0, 500, 1000, 1793.2457, 2000, 2500, 3000, 3500):
    theta = raw_to_vwc(raw)
    print(f"  RAW {raw:9.2f} -> theta {theta:+.4f}")

print(f"\ntheta = 0 crossover at RAW = {vwc_to_raw(0.0):.4f}")
print(f"air readings sit near RAW 200 -> theta {raw_to_vwc(200.0):+.4f}, "
      "far below the window")

t = DEFAULT_THRESHOLDS
print(f"\nvalidity window: theta in [{t.theta_min}, {t.theta_max}], "
      f"depth within {t.depth_tol_m} m of target")
cases = [
    ("clean reading at depth", 0.0802, 0.05, 0.05),
    ("probe in air (RAW ~ 0)", -0.6956, 0.05, 0.05),
    ("stopped 30 mm short", 0.30, 0.02, 0.05),
    ("flooded / shorted probe", 0.85, 0.05, 0.05),
]
for label, theta, achieved, target in cases:
    verdict = classify(theta, achieved, target)
    print(f"  {label:<26} theta {theta:+.4f}, depth {achieved:.3f}/{target:.3f} m"
          f" -> {verdict.value}")

print("\nthe line is strictly monotone: more counts, more water")
raws = np.linspace(0, 4000, 9)
thetas = raw_to_vwc(raws)
assert all(a < b for a, b in zip(thetas, thetas[1:]))
print("  checked on", len(raws), "equally spaced RAW values")
