"""Approximative velocity models of order 0, 1, 2 per tangential mode.

The strong systems are

    alpha_N grad Div v + (w^2/c^2) v = g_N                  in the domain,
    v.n - (beta_N/alpha_N) dGamma^2 (alpha_N Div v) = dGamma h_N   on walls,

with ``g_0 = g_1 = (i w / rho0 c^2) f``, ``g_2 = g_1 + eta/(rho0^2 c^2)
curlcurl f``, ``beta_N = (c^2/w^2) B_N`` and

    h_1 = (i - 1)/(w rho0) sqrt(eta/(2 w rho0)) f.nperp,
    h_2 = h_1 - eta/(2 w^2 rho0^2) kappa f.nperp,

order 0 carrying the essential condition ``v.n = 0``.  The mixed weak form
introduces one multiplier per wall, ``lambda = alpha Div v``; per mode the
wall equation is a scalar relation

    (v.n)_b + (beta_b/alpha) |dG_b|^2 lambda_b = sigma_b h_b,

so lambda is eliminated in closed form and the wall coupling becomes a
single diagonal entry on the wall normal-velocity unknown.  For the k = 0
mode the tangential symbol vanishes and the wall condition degenerates to
the essential ``v.n = 0`` of the limit model.
"""

import numpy as np

from . import operators as ops
from .fem1d import get_line, SystemAssembler
from .geometry import oriented_symbol
from .params import velocity_coeffs, validate_order
from .solutions import MixedModalSolution

T, N = ops.TANGENTIAL, ops.NORMAL


def wall_data(params, order, component, traces):
    """Scalar wall datum h of the canonical velocity system."""
    p = params
    root = np.sqrt(p.eta / (2.0 * p.omega * p.rho0))
    h = (1j - 1.0) / (p.omega * p.rho0) * root * traces["f_nperp"]
    if order == 2:
        h = h - p.eta / (2.0 * p.omega**2 * p.rho0**2) * component.kappa * traces["f_nperp"]
    return h


def solve_velocity_mode(params, geom, order, ms, mesh, degree, pivot_rtol=1e-10):
    """Solve one mode of the order-N velocity model."""
    order = validate_order(order)
    p = params
    line = get_line(mesh, degree)
    asm = SystemAssembler(line, 2)
    mu = geom.mu(line.yq)
    alpha = 1.0 + 0.0j if order < 2 else velocity_coeffs(p, 2, 0.0).alpha
    dv = ops.div_stencil(geom, ms.k, line.yq)
    ops.add_quadratic(asm, dv, dv, mu, coef=alpha)
    for f in (T, N):
        asm.add_bilinear(f, f, mu, 0, 0, coef=-(p.omega**2) / p.c**2)

    # volumic data g_N, loaded with the -int g . w' sign of the mixed form
    gscale = 1j * p.omega / (p.rho0 * p.c**2)
    gt = gscale * np.asarray(ms.f_tan(line.yq), dtype=complex)
    gn = gscale * np.asarray(ms.f_nrm(line.yq), dtype=complex)
    if order == 2:
        cc_t, cc_n = ms.curlcurl(line.yq)
        s2 = p.eta / (p.rho0**2 * p.c**2)
        gt = gt + s2 * cc_t
        gn = gn + s2 * cc_n
    asm.add_load(T, gt, 0, mu, coef=-1.0)
    asm.add_load(N, gn, 0, mu, coef=-1.0)

    wall_aux = {}
    for b in geom.boundary_components():
        sig = oriented_symbol(geom, b, ms.k)
        sym2 = float(abs(sig) ** 2)
        mu_b = float(geom.mu(b.coord))
        if order == 0 or sym2 == 0.0:
            asm.constrain_zero(N, b.side)
            wall_aux[b.name] = None
            continue
        beta = velocity_coeffs(p, order, b.kappa).beta
        tr = ms.traces(b)
        h = wall_data(p, order, b, tr)
        coup = alpha / (beta * sym2)
        asm.add_wall_entry(N, N, b.side, mu_b * coup)
        asm.add_wall_load(N, b.side, mu_b * coup * sig * h * b.normal_sign)
        wall_aux[b.name] = (b, beta, sym2, sig, h)

    mat, rhs = asm.finalize()
    sol = mat.factor(pivot_rtol=pivot_rtol).solve(rhs)
    coef_t, coef_n = asm.split(sol)
    out = MixedModalSolution(ms.k, order, geom, p, line, coef_t, coef_n, ms,
                             alpha=alpha)
    for b in geom.boundary_components():
        wall_div = complex(out.div(np.array([b.coord]))[0])
        aux = wall_aux[b.name]
        if aux is None:
            out.multipliers[b.name] = alpha * wall_div
        else:
            bb, beta, sym2, sig, h = aux
            vn = bb.normal_sign * complex(
                line.evaluate(coef_n, np.array([bb.coord]))[0])
            out.multipliers[b.name] = alpha * (sig * h - vn) / (beta * sym2)
    return out


def pressure_from_velocity(sol, params=None):
    """A-posteriori far-field pressure profile of the same order."""
    return sol.pressure


def multiplier_consistency(sol):
    """|lambda - alpha Div v(wall)| / |lambda| per wall component."""
    out = {}
    for b in sol.geom.boundary_components():
        lam = sol.multipliers[b.name]
        wall_div = complex(sol.div(np.array([b.coord]))[0])
        out[b.name] = abs(lam - sol.alpha * wall_div) / max(abs(lam), 1e-300)
    return out


def wall_condition_residual(sol, ms):
    """Strong-form wall condition residual per component, relative scale."""
    p = sol.params
    out = {}
    for b in sol.geom.boundary_components():
        sig = oriented_symbol(sol.geom, b, sol.k)
        sym2 = float(abs(sig) ** 2)
        y = np.array([b.coord])
        vn = b.normal_sign * complex(sol.line.evaluate(sol.coef_n, y)[0])
        if sol.order == 0 or sym2 == 0.0:
            out[b.name] = abs(vn)
            continue
        beta = velocity_coeffs(p, sol.order, b.kappa).beta
        tr = ms.traces(b)
        h = wall_data(p, sol.order, b, tr)
        div_w = complex(sol.div(y)[0])
        lhs = vn + beta * sym2 * div_w
        rhs = sig * h
        scale = max(abs(vn), abs(beta * sym2 * div_w), abs(rhs), 1e-300)
        out[b.name] = abs(lhs - rhs) / scale
    return out
