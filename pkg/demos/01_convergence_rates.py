"""Modelling-error convergence of the three approximative models.

Sweeps the viscosity on the unit strip torus at omega = 15 with the
gaussian-gradient source, measures the relative modelling error of the
order-0/1/2 pressure models against the exact viscous solver on the
interior region, and fits the convergence slopes in sqrt(eta).

Expected: slopes close to 1, 2 and 3.  Runtime ~half a minute.
"""

import math

from viscoustics import (AnalysisRegion, Discretization, GaussianGradient,
                         MaterialParams, StripTorus, run_sweep)

geom = StripTorus(period=1.0, height=1.0)
params = MaterialParams(omega=15.0, eta=1e-3)
source = GaussianGradient(center=(0.75, 0.5), width=0.005)
disc = Discretization(degree=12, n_interior=8, truncation=64)
region = AnalysisRegion(delta=0.2)

etas = [1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5]
report = run_sweep("eta", etas, params, geom, source, disc, region)

print(f"{'eta':>8} {'sqrt(eta)':>10} {'order 0':>12} {'order 1':>12} {'order 2':>12}")
for i, eta in enumerate(sorted(etas)):
    row = [s.err_total for s in report.samples if s.eta == eta]
    print(f"{eta:8.0e} {math.sqrt(eta):10.4f} "
          + " ".join(f"{v:12.4e}" for v in sorted(row, reverse=True)))

print("\nfitted slopes over the auto-selected windows:")
for order in (0, 1, 2):
    lo, hi = report.windows[order]
    print(f"  order {order}: {report.slopes[order]:.3f}   (window samples {lo}..{hi - 1})")
