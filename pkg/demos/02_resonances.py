"""Resonance behaviour of the model hierarchy.

Two experiments on the unit strip torus:

1. the viscosity sweep exactly at the eigenfrequency sqrt(20) pi, where the
   limit model has no solution: order 0 fails outright, order 1 drops to
   linear convergence and order 2 to roughly 1.7;
2. a small frequency scan near 3 pi (an eigenfrequency whose eigenfunction
   is constant along the walls): there the order-1 wall term is inactive,
   so order 1 degenerates to order 0 and its error explodes, while order 2
   stays accurate thanks to its volumic dissipation.

The source is offset from the channel midline: a midline gaussian excites
only wall-symmetric modes and would mute the odd resonances entirely.
"""

import math

from viscoustics import (AnalysisRegion, Discretization, GaussianGradient,
                         MaterialParams, StripTorus, run_sweep)

geom = StripTorus(1.0, 1.0)
disc = Discretization(degree=12, n_interior=8, truncation=48)
region = AnalysisRegion(0.2)

print("== viscosity sweep at the eigenfrequency sqrt(20) pi ==")
params = MaterialParams(omega=math.sqrt(20) * math.pi, eta=1e-3)
source = GaussianGradient((0.75, 0.5), 0.005)
rep = run_sweep("eta", [1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5],
                params, geom, source, disc, region)
for order in (0, 1, 2):
    rows = rep.series(order)
    failed = sum(1 for s in rows if s.status != "ok")
    slope = rep.slopes.get(order)
    slope_txt = f"slope {slope:.2f}" if slope is not None else "no fit"
    print(f"  order {order}: {failed}/{len(rows)} samples failed, {slope_txt}")

print("\n== frequency scan near 3 pi (eta = 1.6e-3, offset source) ==")
source = GaussianGradient((0.75, 0.52), 0.005)
params = MaterialParams(omega=15.0, eta=1.6e-3)
omegas = [3 * math.pi + d for d in (-0.4, -0.2, -0.05, 0.05, 0.2, 0.4)]
rep = run_sweep("omega", omegas, params, geom, source, disc, region)
print(f"{'omega':>10} {'order 0':>12} {'order 1':>12} {'order 2':>12}")
for w in omegas:
    row = {s.order: s for s in rep.samples if s.omega == w}
    cells = []
    for order in (0, 1, 2):
        s = row[order]
        cells.append(f"{s.err_total:12.4e}" if s.status == "ok" else f"{'failed':>12}")
    print(f"{w:10.4f} " + " ".join(cells))
print("\norder 1 loses its wall damping on the wall-constant resonant mode")
print("and behaves like order 0 there; order 2 never exceeds a few percent.")
