"""Reference solver for the viscous model, one tangential mode at a time.

Momentum and continuity,

    -i w rho0 v + grad p - eta Lap v - eta' grad div v = f,
    -i w p + rho0 c^2 div v = 0,   v = 0 on the walls,

are reduced to a two-field wall-normal system by eliminating the pressure
through the continuity equation and writing the vector Laplacian as
``grad div - curlcurl``.  The weak form per mode then reads

    int mu [ -i w rho0 v.w' + (i rho0 c^2/w + eta + eta') Div v Div w'
             + eta Curl v Curl w' ] = int mu f . w'

over conforming (H^1_0)^2 trial/test pairs (test conjugated), with the
polar metric factors carried by the div/curl stencils on the annulus.
"""

import warnings

import numpy as np

from . import operators as ops
from .fem1d import get_line, SystemAssembler
from .solutions import ModalExactSolution

T, N = ops.TANGENTIAL, ops.NORMAL


def assemble_exact_mode(params, geom, ms, line):
    """System matrix and load vector of one mode (no-slip imposed)."""
    asm = SystemAssembler(line, 2)
    mu = geom.mu(line.yq)
    p = params
    dv = ops.div_stencil(geom, ms.k, line.yq)
    cv = ops.curl_stencil(geom, ms.k, line.yq)
    div_coef = 1j * p.rho0 * p.c**2 / p.omega + p.eta + p.eta_prime
    ops.add_quadratic(asm, dv, dv, mu, coef=div_coef)
    ops.add_quadratic(asm, cv, cv, mu, coef=p.eta)
    for f in (T, N):
        asm.add_bilinear(f, f, mu, 0, 0, coef=-1j * p.omega * p.rho0)
    asm.add_load(T, np.asarray(ms.f_tan(line.yq), dtype=complex), 0, mu)
    asm.add_load(N, np.asarray(ms.f_nrm(line.yq), dtype=complex), 0, mu)
    for f in (T, N):
        for side in ("lower", "upper"):
            asm.constrain_zero(f, side)
    return asm


def assemble_exact_annulus_mode(params, geom, ms, line):
    """Polar-coordinate assembly; the stencils carry the r-couplings."""
    if geom.kind != "annulus":
        raise ValueError("annulus geometry required")
    return assemble_exact_mode(params, geom, ms, line)


def solve_exact_mode(params, geom, ms, mesh, degree, pivot_rtol=1e-10):
    """Solve one mode of the viscous model on the given wall-normal mesh.

    Near-singular factorizations raise :class:`fem1d.NearSingularError`;
    an unresolved boundary layer (smallest wall element above the layer
    scale) only warns, since far-field accuracy degrades gracefully.
    """
    eps = params.epsilon
    hmin = float(mesh.sizes.min())
    if hmin > eps:
        warnings.warn(f"boundary layer unresolved: min element {hmin:.2e} "
                      f"> epsilon {eps:.2e}", stacklevel=2)
    line = get_line(mesh, degree)
    asm = assemble_exact_mode(params, geom, ms, line)
    mat, rhs = asm.finalize()
    sol = mat.factor(pivot_rtol=pivot_rtol).solve(rhs)
    coef_t, coef_n = asm.split(sol)
    return ModalExactSolution(ms.k, geom, params, line, coef_t, coef_n)


def momentum_residual(sol, ms, y):
    """Pointwise strong-form momentum residual (tangential, normal)."""
    p = sol.params
    geom, k, line = sol.geom, sol.k, sol.line
    y = np.asarray(y, dtype=float)
    s = geom.vol_tangential_symbol(k, y)
    vt, vn = sol.velocity(y)
    div = sol.div(y)
    ddiv = ops.div_eval_dy(geom, k, line, sol.coef_t, sol.coef_n, y)
    curl = sol.curl(y)
    dcurl = _curl_dy(sol, y)
    sigma = -1j * p.rho0 * p.c**2 / p.omega  # pressure = sigma * div
    # -eta Lap v = -eta grad div v + eta curlcurl v
    grad_t = s * (sigma - p.eta - p.eta_prime) * div
    grad_n = (sigma - p.eta - p.eta_prime) * ddiv
    if geom.kind == "strip":
        cc_t, cc_n = dcurl, -s * curl
    else:
        cc_t, cc_n = -dcurl, s * curl
    rt = -1j * p.omega * p.rho0 * vt + grad_t + p.eta * cc_t \
        - np.asarray(ms.f_tan(y), dtype=complex)
    rn = -1j * p.omega * p.rho0 * vn + grad_n + p.eta * cc_n \
        - np.asarray(ms.f_nrm(y), dtype=complex)
    return rt, rn


def _curl_dy(sol, y):
    geom, k, line = sol.geom, sol.k, sol.line
    y = np.asarray(y, dtype=float)
    s = geom.vol_tangential_symbol(k, y)
    if geom.kind == "strip":
        return s * line.evaluate(sol.coef_n, y, deriv=1) \
            - line.evaluate(sol.coef_t, y, deriv=2)
    vt = line.evaluate(sol.coef_t, y)
    dvt = line.evaluate(sol.coef_t, y, deriv=1)
    ddvt = line.evaluate(sol.coef_t, y, deriv=2)
    dvn = line.evaluate(sol.coef_n, y, deriv=1)
    return ddvt + dvt / y - vt / y**2 - (s / y) * dvn + (s / y**2) * line.evaluate(sol.coef_n, y)
