"""Per-mode solution containers with uniform field evaluators.

Every solution exposes pressure, velocity (canonical tangential/normal
components), their wall-normal derivatives, modal divergence and curl, all
as vectorized functions of the wall-normal coordinate.  The error measures
and the near-field assembly only go through this interface, so exact and
approximative routes may live on different meshes.
"""

from dataclasses import dataclass, field

import numpy as np

from . import operators as ops


@dataclass
class ModalExactSolution:
    """Mode of the viscous model; pressure is eliminated via continuity."""

    k: int
    geom: object
    params: object
    line: object
    coef_t: np.ndarray
    coef_n: np.ndarray

    def velocity(self, y):
        return self.line.evaluate(self.coef_t, y), self.line.evaluate(self.coef_n, y)

    def velocity_dy(self, y):
        return (self.line.evaluate(self.coef_t, y, deriv=1),
                self.line.evaluate(self.coef_n, y, deriv=1))

    def div(self, y):
        return ops.div_eval(self.geom, self.k, self.line, self.coef_t, self.coef_n, y)

    def curl(self, y):
        return ops.curl_eval(self.geom, self.k, self.line, self.coef_t, self.coef_n, y)

    def pressure(self, y):
        p = self.params
        return -1j * p.rho0 * p.c**2 / p.omega * self.div(y)

    def pressure_dy(self, y):
        p = self.params
        return -1j * p.rho0 * p.c**2 / p.omega * ops.div_eval_dy(
            self.geom, self.k, self.line, self.coef_t, self.coef_n, y)

    def continuity_residual(self, y):
        """-i w p + rho0 c^2 div v with the eliminated pressure reinserted."""
        p = self.params
        return -1j * p.omega * self.pressure(y) + p.rho0 * p.c**2 * self.div(y)


@dataclass
class ModalPressureSolution:
    """Mode of an approximative pressure model of order N."""

    k: int
    order: int
    geom: object
    params: object
    line: object
    coef_p: np.ndarray
    source: object
    alpha: complex = 1.0

    def pressure(self, y):
        return self.line.evaluate(self.coef_p, y)

    def pressure_dy(self, y):
        return self.line.evaluate(self.coef_p, y, deriv=1)

    def grad_p(self, y):
        """Modal gradient (tangential, normal components)."""
        y = np.asarray(y, dtype=float)
        s = self.geom.vol_tangential_symbol(self.k, y)
        return s * self.pressure(y), self.pressure_dy(y)

    def velocity(self, y):
        """A-posteriori far-field velocity of the same order."""
        p = self.params
        gt, gn = self.grad_p(y)
        ft = np.asarray(self.source.f_tan(y), dtype=complex)
        fn = np.asarray(self.source.f_nrm(y), dtype=complex)
        pref = 1j / (p.rho0 * p.omega)
        vt = pref * (ft - self.alpha * gt)
        vn = pref * (fn - self.alpha * gn)
        if self.order == 2:
            cc_t, cc_n = self.source.curlcurl(y)
            s2 = p.eta / (p.rho0**2 * p.omega**2)
            vt = vt + s2 * cc_t
            vn = vn + s2 * cc_n
        return vt, vn

    def div(self, y):
        """Divergence of the post-processed velocity, from the PDE."""
        p = self.params
        return 1j * p.omega / (p.rho0 * p.c**2) * self.pressure(y)


@dataclass
class MixedModalSolution:
    """Mode of an approximative velocity model; lambda per wall component."""

    k: int
    order: int
    geom: object
    params: object
    line: object
    coef_t: np.ndarray
    coef_n: np.ndarray
    source: object
    multipliers: dict = field(default_factory=dict)
    alpha: complex = 1.0

    def velocity(self, y):
        return self.line.evaluate(self.coef_t, y), self.line.evaluate(self.coef_n, y)

    def div(self, y):
        return ops.div_eval(self.geom, self.k, self.line, self.coef_t, self.coef_n, y)

    def div_dy(self, y):
        return ops.div_eval_dy(self.geom, self.k, self.line, self.coef_t, self.coef_n, y)

    def curl(self, y):
        return ops.curl_eval(self.geom, self.k, self.line, self.coef_t, self.coef_n, y)

    def pressure(self, y):
        p = self.params
        return -1j * p.rho0 * p.c**2 / p.omega * self.div(y)

    def pressure_dy(self, y):
        p = self.params
        return -1j * p.rho0 * p.c**2 / p.omega * self.div_dy(y)
