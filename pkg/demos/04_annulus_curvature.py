"""Curvature terms of the order-2 wall condition on the annulus.

On curved walls the order-2 model adds a signed-curvature correction to the
wall coefficient (+1/r on the convex outer circle, -1/r_inner on the
concave inner one).  This script solves one azimuthal mode on an annulus
for a shrinking viscosity and shows that order 2 gains a full power of
sqrt(eta) over order 1 -- which only happens when the curvature terms are
right.  It also cross-checks the pressure route against the mixed velocity
route (the two model families are algebraically equivalent).
"""

import numpy as np

from viscoustics import Annulus, MaterialParams, ModalManufactured, \
    project_to_modes
from viscoustics.analysis import Discretization
from viscoustics.exact import solve_exact_mode
from viscoustics.pressure import build_pressure_problem, solve_pressure_mode
from viscoustics.velocity import solve_velocity_mode

geom = Annulus(r_inner=0.5, r_outer=1.25)
k = 3
source = ModalManufactured(
    k,
    f_tan=lambda r: np.cos(1.1 * r) + 0.5j * r,
    f_nrm=lambda r: r**2 - 0.3j * np.sin(r),
    f_tan_dy=lambda r: -1.1 * np.sin(1.1 * r) + 0.5j * np.ones_like(r),
    f_tan_dyy=lambda r: -1.21 * np.cos(1.1 * r) + 0j * r,
    f_nrm_dy=lambda r: 2 * r - 0.3j * np.cos(r),
)
ms = project_to_modes(source, geom, k)[k]
disc = Discretization(degree=12, n_interior=8)
rr = np.linspace(0.65, 1.1, 300)

print("inner wall curvature:", geom.component("inner").kappa)
print("outer wall curvature:", geom.component("outer").kappa)
print(f"\n{'eta':>8} {'order 1 err':>12} {'order 2 err':>12} {'route gap':>12}")
prev = None
for eta in (4e-3, 1e-3, 2.5e-4, 6.25e-5):
    p = MaterialParams(omega=7.5, eta=eta)
    mesh = disc.mesh_for(geom, p.epsilon)
    exact = solve_exact_mode(p, geom, ms, mesh, disc.degree)
    ref = exact.pressure(rr)
    errs = []
    for order in (1, 2):
        sol = solve_pressure_mode(build_pressure_problem(p, geom, order, ms),
                                  mesh, disc.degree)
        errs.append(np.abs(sol.pressure(rr) - ref).max() / np.abs(ref).max())
    vsol = solve_velocity_mode(p, geom, 2, ms, mesh, disc.degree)
    psol = solve_pressure_mode(build_pressure_problem(p, geom, 2, ms),
                               mesh, disc.degree)
    gap = np.abs(vsol.pressure(rr) - psol.pressure(rr)).max() / np.abs(ref).max()
    print(f"{eta:8.1e} {errs[0]:12.4e} {errs[1]:12.4e} {gap:12.2e}")
    if prev is not None:
        r1 = prev[0] / errs[0]
        r2 = prev[1] / errs[1]
        print(f"{'ratios':>8} {r1:12.2f} {r2:12.2f}   (4x eta: expect 4 and 8)")
    prev = errs
