import numpy as np
import pytest

from viscoustics.params import (MaterialParams, epsilon, pressure_coeffs,
                                velocity_coeffs)


def test_epsilon_matches_reported_layer_scale():
    # eta = 1.6e-3 at omega = 15 gives the documented d_BL = 1.46e-2
    p = MaterialParams(omega=15.0, eta=1.6e-3)
    assert epsilon(p) == pytest.approx(1.46e-2, rel=5e-3)
    assert p.boundary_layer_scale == epsilon(p)


def test_epsilon_limits_and_arithmetic():
    assert epsilon(MaterialParams(omega=1.0, rho0=4.0, eta=2e-6)) == pytest.approx(1e-3)
    etas = [1e-3, 1e-6, 1e-9, 1e-12]
    vals = [epsilon(MaterialParams(omega=2.0, eta=e)) for e in etas]
    assert all(v1 > v2 for v1, v2 in zip(vals, vals[1:]))
    assert vals[-1] <= 1e-6


@pytest.mark.parametrize("eta", [1e-2, 3.7e-4, 1e-6])
def test_epsilon_identity(eta):
    p = MaterialParams(omega=7.3, rho0=1.4, eta=eta)
    assert epsilon(p) ** 2 * p.omega * p.rho0 / 2 == pytest.approx(eta, rel=1e-14)


def test_invalid_params_rejected():
    for kw in ({"omega": -1.0}, {"c": 0.0}, {"rho0": -2.0}, {"eta": 0.0},
               {"eta_prime": -1e-9}):
        with pytest.raises(ValueError):
            MaterialParams(**{"omega": 1.0, "eta": 1e-3, **kw})


def test_gamma_prime_zero_when_eta_prime_zero():
    assert MaterialParams(omega=1.0, eta=1e-3).gamma_prime == 0.0
    p = MaterialParams(omega=1.0, eta=1e-3, eta_prime=5e-4)
    assert p.gamma_prime == pytest.approx(0.5)


def test_pressure_coeffs_order1_table():
    p = MaterialParams(omega=3.0, rho0=2.0, eta=4e-3)
    c = pressure_coeffs(p, 1, kappa=17.0)  # kappa ignored at order 1
    root = np.sqrt(p.eta / (2 * p.omega * p.rho0))
    assert c.alpha == pytest.approx(1.0)
    assert c.beta == pytest.approx((1 + 1j) * root)


def test_pressure_coeffs_order2():
    p = MaterialParams(omega=3.0, rho0=2.0, eta=4e-3, eta_prime=1e-3)
    c0 = pressure_coeffs(p, 2, kappa=0.0)
    assert c0.beta == pytest.approx(pressure_coeffs(p, 1, 0.0).beta)
    assert c0.alpha == pytest.approx(1 - 1j * p.omega * (p.eta + p.eta_prime)
                                     / (p.rho0 * p.c**2))
    # hand-substituted point: eta = 2 w rho0 makes the root 1 and the
    # curvature term i * kappa
    p2 = MaterialParams(omega=0.5, rho0=1.0, eta=1.0)
    c2 = pressure_coeffs(p2, 2, kappa=1.0)
    assert c2.beta == pytest.approx((1 + 1j) + 1j)


def test_order0_has_no_canonical_coeffs():
    p = MaterialParams(omega=1.0, eta=1e-3)
    with pytest.raises(ValueError):
        pressure_coeffs(p, 0)
    with pytest.raises(ValueError):
        velocity_coeffs(p, 0)
    with pytest.raises(ValueError):
        pressure_coeffs(p, 3)


def test_velocity_coeffs_scale():
    p = MaterialParams(omega=3.0, rho0=2.0, eta=4e-3)
    scale = p.c**2 / p.omega**2
    for order, kappa in ((1, 0.0), (2, -2.0)):
        cv = velocity_coeffs(p, order, kappa)
        cp = pressure_coeffs(p, order, kappa)
        assert cv.beta == pytest.approx(scale * cp.beta)
        assert cv.alpha == pytest.approx(cp.alpha)


def test_alpha_tends_to_one_as_eta_vanishes():
    vals = [pressure_coeffs(MaterialParams(omega=5.0, eta=e), 2, 0.0).alpha
            for e in (1e-2, 1e-4, 1e-8)]
    assert abs(vals[-1] - 1.0) < 1e-6
    assert abs(vals[0] - 1.0) > abs(vals[1] - 1.0) > abs(vals[2] - 1.0)


@pytest.mark.parametrize("eta", [1e-2, 1e-4, 1e-7])
@pytest.mark.parametrize("kappa", [0.0, 2.0, -4.0])
def test_wall_form_dissipation_sign(eta, kappa):
    # the assembled wall bilinear coefficient must be strictly damping
    p = MaterialParams(omega=15.0, eta=eta)
    for order in (1, 2):
        if order == 1 and kappa != 0.0:
            continue
        cp = pressure_coeffs(p, order, kappa)
        assert np.imag(cp.wentzell_form_coeff) < 0
        cv = velocity_coeffs(p, order, kappa)
        assert np.imag(cv.wentzell_form_coeff) < 0
