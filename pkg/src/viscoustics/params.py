"""Physical parameters and the canonical impedance coefficient tables.

All quantities are dimensionless by default.  The unit-square experiments
with ``omega = 15``, ``c = rho0 = 1`` and ``eta ~ 1e-6 .. 1e-2`` correspond,
for dimensionful quantities, to a 4 cm x 8 cm air-filled cavity driven at
about 5.1 kHz (c = 343 m/s, rho0 = 1.2 kg/m^3), where air viscosity maps to
a dimensionless eta of about 1e-6.
"""

from dataclasses import dataclass

import numpy as np

ORDERS = (0, 1, 2)


def validate_order(order):
    if order not in ORDERS:
        raise ValueError(f"model order must be one of {ORDERS}, got {order!r}")
    return int(order)


@dataclass(frozen=True)
class MaterialParams:
    """Angular frequency, sound speed, mean density and viscosities."""

    omega: float
    c: float = 1.0
    rho0: float = 1.0
    eta: float = 1e-3
    eta_prime: float = 0.0

    def __post_init__(self):
        if not self.omega > 0:
            raise ValueError("omega must be positive")
        if not self.c > 0:
            raise ValueError("c must be positive")
        if not self.rho0 > 0:
            raise ValueError("rho0 must be positive")
        if not self.eta > 0:
            raise ValueError("eta must be positive")
        if self.eta_prime < 0:
            raise ValueError("eta_prime must be nonnegative")

    @property
    def gamma_prime(self):
        """Viscosity ratio eta'/eta, defined as 0 when eta' = 0."""
        if self.eta_prime == 0.0:
            return 0.0
        return self.eta_prime / self.eta

    @property
    def epsilon(self):
        return epsilon(self)

    @property
    def boundary_layer_scale(self):
        """Boundary-layer thickness d_BL; alias of the small parameter."""
        return epsilon(self)

    def with_eta(self, eta, eta_prime=None):
        if eta_prime is None:
            eta_prime = eta * self.gamma_prime
        return MaterialParams(self.omega, self.c, self.rho0, eta, eta_prime)

    def with_omega(self, omega):
        return MaterialParams(omega, self.c, self.rho0, self.eta, self.eta_prime)


def epsilon(params):
    """Small parameter sqrt(2*eta/(omega*rho0)); the layer thickness scale."""
    return float(np.sqrt(2.0 * params.eta / (params.omega * params.rho0)))


@dataclass(frozen=True)
class CanonicalPressureCoeffs:
    """Coefficients (alpha, beta) of the order-1/2 pressure wall condition.

    ``beta`` multiplies the second tangential trace derivative in the strong
    wall condition (``alpha grad p . n + beta dGamma^2 p = data``).  In the
    weak form the wall bilinear term enters with the opposite sign, exposed
    as ``wentzell_form_coeff``; its imaginary part is strictly negative for
    eta > 0, which is the dissipation (well-posedness) condition.
    """

    alpha: complex
    beta: complex

    @property
    def wentzell_form_coeff(self):
        return -self.beta


@dataclass(frozen=True)
class CanonicalVelocityCoeffs:
    """Coefficients of the order-1/2 velocity wall condition.

    ``beta`` multiplies dGamma^2(Div v) in the strong wall condition; it is
    c^2/omega^2 times the pressure table beta.
    """

    alpha: complex
    beta: complex

    @property
    def wentzell_form_coeff(self):
        return -self.beta


def _alpha(params, order):
    if order == 2:
        w, r, cc = params.omega, params.rho0, params.c**2
        return 1.0 - 1j * w * (params.eta + params.eta_prime) / (r * cc)
    return 1.0 + 0.0j


def _beta_pressure(params, order, kappa):
    w, r = params.omega, params.rho0
    beta = (1.0 + 1j) * np.sqrt(params.eta / (2.0 * w * r))
    if order == 2:
        beta = beta + 1j * params.eta / (2.0 * w * r) * kappa
    return complex(beta)


def pressure_coeffs(params, order, kappa=0.0):
    """Tabulated (alpha, beta) of the canonical pressure system.

    Order 0 is rejected: the limit model is a plain Neumann problem and has
    no canonical wall coefficient.
    """
    order = validate_order(order)
    if order == 0:
        raise ValueError("order 0 has no canonical wall coefficients (plain Neumann)")
    return CanonicalPressureCoeffs(_alpha(params, order), _beta_pressure(params, order, kappa))


def velocity_coeffs(params, order, kappa=0.0):
    """Tabulated (alpha, beta) of the canonical velocity system."""
    order = validate_order(order)
    if order == 0:
        raise ValueError("order 0 has no canonical wall coefficients (essential v.n = 0)")
    scale = params.c**2 / params.omega**2
    return CanonicalVelocityCoeffs(_alpha(params, order), scale * _beta_pressure(params, order, kappa))
