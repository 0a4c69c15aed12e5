"""Approximative pressure models of order 0, 1, 2 per tangential mode.

The strong systems are

    alpha_N Lap p + (w^2/c^2) p = Div f            in the domain,
    alpha_N grad p . n + B_N dGamma^2 p = data_N   on each wall,

with ``B_N = (1+i) sqrt(eta/2 w rho0) + i eta kappa/(2 w rho0) (N = 2)``
and wall data

    data_N = f.n - B_N dGamma(f.nperp)
             - (i eta / w rho0) curlcurl f . n   (N = 2 only),

order 0 being plain Neumann (B = 0, data = f.n).  The weak form used here
is derived from these strong conditions (the printed weak variants differ
in data signs between each other; the strong form is the arbiter, enforced
by the wall-residual check):

    int mu [alpha p' q'* + alpha |dG|^2 p q* - w^2/c^2 p q*]
      - sum_b mu_b B_b |dG_b|^2 p_b q_b*
    = int mu [f_n q'* - s f_t q*]
      - sum_b mu_b [B_b sigma_b (f.nperp)_b + (i eta/w rho0) (ccf.n)_b] q_b*

per mode, where ``sigma_b`` is the oriented tangential symbol and
``|dG|^2`` the squared symbol magnitude.  The a-posteriori far-field
velocity is ``v = (i/rho0 w)(f - alpha_N grad p) (+ eta/(rho0 w)^2 ccf)``.
"""

from dataclasses import dataclass

import numpy as np

from .fem1d import get_line, SystemAssembler
from .geometry import oriented_symbol
from .params import pressure_coeffs, validate_order
from .solutions import ModalPressureSolution


@dataclass
class CanonicalPressureProblem:
    """Assembled data of one mode of the canonical pressure system."""

    k: int
    order: int
    geom: object
    params: object
    source: object
    alpha: complex
    wall: dict  # name -> dict(beta, sym2, rhs, mu)

    def wentzell_form_coeff(self, name):
        """Wall bilinear coefficient; Im < 0 is the dissipation condition."""
        return -self.wall[name]["beta"]


def build_pressure_problem(params, geom, order, ms):
    """Fill the canonical (alpha, beta, data) record for one mode."""
    order = validate_order(order)
    p = params
    alpha = 1.0 + 0.0j
    if order == 2:
        alpha = pressure_coeffs(p, 2, 0.0).alpha
    wall = {}
    for b in geom.boundary_components():
        mu_b = float(geom.mu(b.coord))
        tr = ms.traces(b)
        if order == 0:
            wall[b.name] = {"beta": 0.0j, "sym2": 0.0, "rhs": 0.0j, "mu": mu_b,
                            "component": b}
            continue
        beta = pressure_coeffs(p, order, b.kappa).beta
        if not np.imag(-beta) < 0:
            raise ValueError("wall coefficient violates the dissipation sign")
        sig = oriented_symbol(geom, b, ms.k)
        sym2 = float(abs(sig) ** 2)
        rhs = -mu_b * beta * sig * tr["f_nperp"]
        if order == 2:
            rhs = rhs - mu_b * (1j * p.eta / (p.omega * p.rho0)) * tr["curlcurl_f_n"]
        wall[b.name] = {"beta": beta, "sym2": sym2, "rhs": rhs, "mu": mu_b,
                        "component": b}
    return CanonicalPressureProblem(ms.k, order, geom, p, ms, alpha, wall)


def solve_pressure_mode(prob, mesh, degree, pivot_rtol=1e-10):
    """Solve one mode of the order-N pressure model."""
    p = prob.params
    geom, ms = prob.geom, prob.source
    line = get_line(mesh, degree)
    asm = SystemAssembler(line, 1)
    mu = geom.mu(line.yq)
    s = geom.vol_tangential_symbol(prob.k, line.yq)
    asm.add_bilinear(0, 0, mu, 1, 1, coef=prob.alpha)
    asm.add_bilinear(0, 0, mu * np.abs(s) ** 2, 0, 0, coef=prob.alpha)
    asm.add_bilinear(0, 0, mu, 0, 0, coef=-(p.omega**2) / p.c**2)
    for name, w in prob.wall.items():
        side = w["component"].side
        if w["beta"] != 0:
            asm.add_wall_entry(0, 0, side, -w["mu"] * w["beta"] * w["sym2"])
        if w["rhs"] != 0:
            asm.add_wall_load(0, side, w["rhs"])
    # int mu f . grad q* = int mu [f_n q'* + conj(s) f_t q*]
    asm.add_load(0, np.asarray(ms.f_nrm(line.yq), dtype=complex), 1, mu)
    asm.add_load(0, np.conj(s) * np.asarray(ms.f_tan(line.yq), dtype=complex), 0, mu)
    mat, rhs = asm.finalize()
    coef_p, = asm.split(mat.factor(pivot_rtol=pivot_rtol).solve(rhs))
    return ModalPressureSolution(prob.k, prob.order, geom, p, line, coef_p,
                                 ms, prob.alpha)


def velocity_from_pressure(sol, params=None, ms=None):
    """A-posteriori far-field velocity profiles (tangential, normal)."""
    return sol.velocity


def wall_condition_residual(sol, prob):
    """Strong-form wall condition residual per component, relative scale."""
    out = {}
    p = prob.params
    for name, w in prob.wall.items():
        b = w["component"]
        y = b.coord
        tr = prob.source.traces(b)
        dpn = b.normal_sign * complex(sol.pressure_dy(np.array([y]))[0])
        pw = complex(sol.pressure(np.array([y]))[0])
        lhs = prob.alpha * dpn - w["beta"] * w["sym2"] * pw
        rhs = tr["f_n"]
        if prob.order >= 1:
            rhs = rhs - w["beta"] * tr["dG_f_nperp"]
        if prob.order == 2:
            rhs = rhs - (1j * p.eta / (p.omega * p.rho0)) * tr["curlcurl_f_n"]
        scale = max(abs(pw), abs(dpn), abs(rhs), 1e-300)
        out[name] = abs(lhs - rhs) / scale
    return out
