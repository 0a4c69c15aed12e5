"""Separable computational domains and their boundary data.

Two geometries are supported: a periodic strip (``StripTorus``), where both
walls are straight (kappa = 0), and an ``Annulus``, whose circular walls
carry the signed curvatures +1/r_outer and -1/r_inner (positive on convex
parts of the wall as seen from the domain).

Tangential Fourier modes are taken along the canonical direction (+x on the
strip, +theta on the annulus).  The boundary parametrization that all wall
formulas assume is the one with the domain lying to the *right* of the
direction of travel, so the tangential derivative acting on the trace of
mode k multiplies its coefficient by ``orientation * tangential_symbol``,
with ``orientation = -nperp_sign`` per component.  The vector ``n_perp`` is
the outer normal rotated by +90 degrees; ``nperp_sign`` is its sign against
the canonical tangential basis vector.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class BoundaryComponent:
    name: str
    coord: float          # wall-normal coordinate value (y or r)
    kappa: float          # signed curvature, constant along the component
    normal_sign: int      # +1 if the outer normal points toward growing coord
    nperp_sign: int       # sign of n_perp against the canonical tangent
    circumference: float
    side: str             # "lower"/"upper" end of the wall-normal interval

    @property
    def orientation(self):
        return -self.nperp_sign


class StripTorus:
    """Rectangle [0, period] x [0, height], periodic in the first direction."""

    kind = "strip"

    def __init__(self, period=1.0, height=1.0):
        if period <= 0 or height <= 0:
            raise ValueError("period and height must be positive")
        self.period = float(period)
        self.height = float(height)
        self._components = (
            BoundaryComponent("bottom", 0.0, 0.0, -1, +1, self.period, "lower"),
            BoundaryComponent("top", self.height, 0.0, +1, -1, self.period, "upper"),
        )

    def boundary_components(self):
        return self._components

    def component(self, name):
        return _lookup(self._components, name)

    @property
    def wall_interval(self):
        return (0.0, self.height)

    @property
    def mode_measure(self):
        """Tangential Parseval factor per mode."""
        return self.period

    def mu(self, y):
        return np.ones_like(np.asarray(y, dtype=float))

    def tangential_symbol(self, component, k):
        return 2j * np.pi * k / self.period

    def vol_tangential_symbol(self, k, y):
        """Multiplier of mode k under the canonical tangential derivative."""
        return 2j * np.pi * k / self.period * np.ones_like(np.asarray(y, dtype=float))

    def max_abs_kappa(self):
        return 0.0


class Annulus:
    """Ring r_inner < r < r_outer; tangential coordinate is arclength r*theta."""

    kind = "annulus"

    def __init__(self, r_inner, r_outer):
        if not 0 < r_inner < r_outer:
            raise ValueError("need 0 < r_inner < r_outer")
        self.r_inner = float(r_inner)
        self.r_outer = float(r_outer)
        self._components = (
            BoundaryComponent("inner", self.r_inner, -1.0 / self.r_inner, -1, -1,
                              2 * np.pi * self.r_inner, "lower"),
            BoundaryComponent("outer", self.r_outer, +1.0 / self.r_outer, +1, +1,
                              2 * np.pi * self.r_outer, "upper"),
        )

    def boundary_components(self):
        return self._components

    def component(self, name):
        return _lookup(self._components, name)

    @property
    def wall_interval(self):
        return (self.r_inner, self.r_outer)

    @property
    def mode_measure(self):
        return 2 * np.pi

    def mu(self, r):
        return np.asarray(r, dtype=float)

    def tangential_symbol(self, component, k):
        return 1j * k / component.coord

    def vol_tangential_symbol(self, k, r):
        return 1j * k / np.asarray(r, dtype=float)

    def max_abs_kappa(self):
        return 1.0 / self.r_inner


def _lookup(components, name):
    for b in components:
        if b.name == name:
            return b
    raise KeyError(f"unknown boundary component {name!r}")


def curvature(geom, name):
    """Signed curvature of the named boundary component."""
    return geom.component(name).kappa


def tangential_symbol(geom, name, k):
    """Canonical tangential-derivative multiplier for mode k on component."""
    return geom.tangential_symbol(geom.component(name), k)


def oriented_symbol(geom, component, k):
    """Tangential-derivative multiplier in the locked wall orientation."""
    return component.orientation * geom.tangential_symbol(component, k)


@dataclass(frozen=True)
class LocalCoords:
    """Wall-attached coordinates: arclength t, wall distance s >= 0.

    The stretched coordinate S = s/eps lives on the boundary-layer scale.
    """

    t: float
    s: float

    def __post_init__(self):
        if self.s < 0:
            raise ValueError("wall distance must be nonnegative")

    def stretched(self, eps):
        return self.s / eps


@dataclass(frozen=True)
class CutoffSpec:
    """Admissible cut-off: 1 for s < s1, 0 for s >= s0, C-infinity between."""

    s1: float
    s0: float

    def __post_init__(self):
        if not 0 < self.s1 < self.s0:
            raise ValueError("need 0 < s1 < s0")

    @classmethod
    def default(cls, geom):
        lo, hi = geom.wall_interval
        s1 = 0.1 * (hi - lo)
        spec = cls(s1, 2 * s1)
        spec.validate(geom)
        return spec

    def validate(self, geom):
        max_k = geom.max_abs_kappa()
        if max_k > 0 and not self.s0 < 0.5 / max_k:
            raise ValueError("cut-off support too wide for the wall curvature")
        lo, hi = geom.wall_interval
        if not self.s0 < 0.5 * (hi - lo):
            raise ValueError("cut-off supports of opposite walls would overlap")
        return self


def _bump(x):
    # exp(-1/x) extended by 0 for x <= 0; all derivatives vanish at 0.
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    pos = x > 0
    out[pos] = np.exp(-1.0 / x[pos])
    return out


def cutoff_eval(spec, s):
    """Evaluate the cut-off at distance(s) s >= 0 from the wall."""
    s = np.asarray(s, dtype=float)
    u = (s - spec.s1) / (spec.s0 - spec.s1)
    a = _bump(1.0 - u)
    b = _bump(u)
    with np.errstate(invalid="ignore"):
        val = np.where(u <= 0.0, 1.0, np.where(u >= 1.0, 0.0, a / (a + b + 1e-300)))
    return val if val.ndim else float(val)


def cutoff_derivative(spec, s):
    """d(chi)/ds, analytic."""
    s = np.asarray(s, dtype=float)
    w = spec.s0 - spec.s1
    u = (s - spec.s1) / w
    a = _bump(1.0 - u)      # h(1-u)
    b = _bump(u)            # h(u)
    inside = (u > 0.0) & (u < 1.0)
    da = np.zeros_like(u)
    db = np.zeros_like(u)
    # h'(x) = h(x)/x^2
    da[inside] = -a[inside] / (1.0 - u[inside]) ** 2
    db[inside] = b[inside] / u[inside] ** 2
    denom = (a + b) ** 2 + 1e-300
    dval = np.where(inside, (da * b - a * db) / denom, 0.0) / w
    return dval if dval.ndim else float(dval)
