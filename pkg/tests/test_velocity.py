import numpy as np
import pytest

from oracles import dense_velocity_mode
from viscoustics.fem1d import build_graded_mesh
from viscoustics.geometry import Annulus, StripTorus
from viscoustics.params import MaterialParams
from viscoustics.pressure import build_pressure_problem, solve_pressure_mode
from viscoustics.sources import (GaussianGradient, ModalManufactured,
                                 project_to_modes)
from viscoustics.velocity import (multiplier_consistency, solve_velocity_mode,
                                  wall_condition_residual)

STRIP = StripTorus(1.0, 1.0)
MESH = build_graded_mesh((0, 1), 8, 0.5, 5)


def _manufactured(k=2):
    return ModalManufactured(
        k,
        f_tan=lambda y: np.cos(1.3 * y) + 0.4j * y**2,
        f_nrm=lambda y: np.sin(0.7 * y) - 0.2j * y,
        f_tan_dy=lambda y: -1.3 * np.sin(1.3 * y) + 0.8j * y,
        f_tan_dyy=lambda y: -1.69 * np.cos(1.3 * y) + 0.8j * np.ones_like(y),
        f_nrm_dy=lambda y: 0.7 * np.cos(0.7 * y) - 0.2j * np.ones_like(y),
    )


def test_order0_normal_trace_vanishes_exactly():
    p = MaterialParams(omega=4.3, eta=2e-3)
    ms = project_to_modes(_manufactured(2), STRIP, 2)[2]
    sol = solve_velocity_mode(p, STRIP, 0, ms, MESH, 9)
    # wall dofs are eliminated; only bubble roundoff (~1e-31) remains
    assert np.abs(sol.coef_n[[0, -1]]).max() == 0.0
    _, vn = sol.velocity(np.array([0.0, 1.0]))
    vt, _ = sol.velocity(np.linspace(0, 1, 11))
    assert np.abs(vn).max() <= 1e-16 * np.abs(vt).max()


def test_k0_order1_reduces_to_order0():
    p = MaterialParams(omega=4.3, eta=2e-3)
    spec = ModalManufactured(0, f_tan=lambda y: np.cos(y),
                             f_nrm=lambda y: np.exp(-((y - 0.6) ** 2) * 6.0))
    ms = project_to_modes(spec, STRIP, 0)[0]
    s0 = solve_velocity_mode(p, STRIP, 0, ms, MESH, 9)
    s1 = solve_velocity_mode(p, STRIP, 1, ms, MESH, 9)
    y = np.linspace(0, 1, 41)
    for a, b in zip(s0.velocity(y), s1.velocity(y)):
        assert np.abs(a - b).max() <= 1e-13 * max(np.abs(a).max(), 1e-30)


FINE_MESH = build_graded_mesh((0, 1), 24, 0.5, 4)


@pytest.mark.parametrize("order", [0, 1, 2])
def test_gradient_source_curl_free_solution(order):
    # the interior mesh must resolve the sharp gaussian for the discrete
    # curl to reach the property tolerance
    p = MaterialParams(omega=15.0, eta=1.6e-3)
    ss = project_to_modes(GaussianGradient((0.75, 0.5), 0.005), STRIP, 16)
    ms = ss[4]
    sol = solve_velocity_mode(p, STRIP, order, ms, FINE_MESH, 12)
    y = np.linspace(0.02, 0.98, 101)
    vt, vn = sol.velocity(y)
    scale = max(np.abs(vt).max(), np.abs(vn).max())
    assert np.abs(sol.curl(y)).max() <= 1e-8 * scale * (p.omega / p.c)


def test_curl_determined_by_source_curl():
    # curl v = c^2/w^2 curl g for each order; identical across orders 1, 2
    # once the order-2 curlcurl contribution is accounted for
    p = MaterialParams(omega=4.3, eta=2e-3)
    ms = project_to_modes(_manufactured(2), STRIP, 2)[2]
    y = np.linspace(0.05, 0.95, 61)
    pref = p.c**2 / p.omega**2 * (1j * p.omega / (p.rho0 * p.c**2))
    curl_f = ms.curl(y)
    s1 = solve_velocity_mode(p, STRIP, 1, ms, MESH, 11)
    assert np.abs(s1.curl(y) - pref * curl_f).max() <= 1e-8 * np.abs(curl_f).max()
    s2 = solve_velocity_mode(p, STRIP, 2, ms, MESH, 11)
    # order-2 volumic data adds eta/(rho0^2 c^2) curlcurl f to g
    xi = STRIP.vol_tangential_symbol(2, y)
    cc_t, cc_n = ms.curlcurl(y)
    curl_cc = xi * cc_n - _d_dy(ms, y)
    extra = p.c**2 / p.omega**2 * p.eta / (p.rho0**2 * p.c**2) * curl_cc
    assert np.abs(s2.curl(y) - pref * curl_f - extra).max() \
        <= 1e-7 * np.abs(curl_f).max()


def _d_dy(ms, y, h=1e-6):
    cc_t_p, _ = ms.curlcurl(y + h)
    cc_t_m, _ = ms.curlcurl(y - h)
    return (cc_t_p - cc_t_m) / (2 * h)


def test_curl_identical_across_orders_for_gradient_source():
    p = MaterialParams(omega=15.0, eta=1.6e-3)
    ss = project_to_modes(GaussianGradient((0.75, 0.5), 0.005), STRIP, 16)
    ms = ss[4]
    y = np.linspace(0.05, 0.95, 61)
    curls = []
    for order in (1, 2):
        sol = solve_velocity_mode(p, STRIP, order, ms, FINE_MESH, 12)
        curls.append(sol.curl(y))
    assert np.abs(curls[0] - curls[1]).max() <= 1e-10


@pytest.mark.parametrize("geom,omega", [(STRIP, 4.3), (Annulus(0.5, 1.25), 7.5)])
@pytest.mark.parametrize("order", [0, 1, 2])
def test_orders_match_dense_oracle(geom, omega, order):
    p = MaterialParams(omega=omega, eta=2e-3, eta_prime=1e-3)
    ms = project_to_modes(_manufactured(2), geom, 2)[2]
    mesh = build_graded_mesh(geom.wall_interval, 8, 0.5, 5)
    sol = solve_velocity_mode(p, geom, order, ms, mesh, 10)
    gm, vto, vno = dense_velocity_mode(p, geom, order, ms, n=1500)
    vt_mid, _ = sol.velocity(gm.mids)
    _, vn_nod = sol.velocity(gm.nodes)
    scale = max(np.abs(vto).max(), np.abs(vno).max())
    err = max(np.abs(vt_mid - vto).max(), np.abs(vn_nod - vno).max())
    assert err <= 1e-5 * scale


@pytest.mark.parametrize("order", [1, 2])
def test_multiplier_consistency(order):
    for geom, omega in ((STRIP, 4.3), (Annulus(0.5, 1.25), 7.5)):
        p = MaterialParams(omega=omega, eta=2e-3)
        ms = project_to_modes(_manufactured(2), geom, 2)[2]
        mesh = build_graded_mesh(geom.wall_interval, 8, 0.5, 5)
        sol = solve_velocity_mode(p, geom, order, ms, mesh, 11)
        assert max(multiplier_consistency(sol).values()) <= 1e-8


@pytest.mark.parametrize("order", [1, 2])
def test_strong_wall_condition(order):
    p = MaterialParams(omega=4.3, eta=2e-3)
    ms = project_to_modes(_manufactured(2), STRIP, 2)[2]
    sol = solve_velocity_mode(p, STRIP, order, ms, MESH, 11)
    assert max(wall_condition_residual(sol, ms).values()) <= 1e-8


@pytest.mark.parametrize("geom,omega", [(STRIP, 4.3), (Annulus(0.5, 1.25), 7.5)])
@pytest.mark.parametrize("order", [0, 1, 2])
def test_equivalence_with_pressure_route(geom, omega, order):
    # The two model routes are algebraically equivalent: velocities and
    # pressures agree far below discretization level.
    p = MaterialParams(omega=omega, eta=2e-3, eta_prime=1e-3)
    ms = project_to_modes(_manufactured(2), geom, 2)[2]
    mesh = build_graded_mesh(geom.wall_interval, 8, 0.5, 6)
    vs = solve_velocity_mode(p, geom, order, ms, mesh, 11)
    ps = solve_pressure_mode(build_pressure_problem(p, geom, order, ms), mesh, 11)
    lo, hi = geom.wall_interval
    y = np.linspace(lo + 0.02 * (hi - lo), hi - 0.02 * (hi - lo), 41)
    vt_p, vn_p = ps.velocity(y)
    vt_v, vn_v = vs.velocity(y)
    sv = max(np.abs(vt_v).max(), np.abs(vn_v).max())
    assert max(np.abs(vt_p - vt_v).max(), np.abs(vn_p - vn_v).max()) <= 1e-8 * sv
    pp, pv = ps.pressure(y), vs.pressure(y)
    assert np.abs(pp - pv).max() <= 1e-8 * np.abs(pp).max()


def test_pressure_roundtrip_order2():
    # N = 2: velocity rebuilt from the a-posteriori pressure returns the
    # original velocity (closure of the two identities)
    p = MaterialParams(omega=4.3, eta=2e-3, eta_prime=1e-3)
    ms = project_to_modes(_manufactured(2), STRIP, 2)[2]
    vs = solve_velocity_mode(p, STRIP, 2, ms, MESH, 11)
    y = np.linspace(0.03, 0.97, 41)
    alpha = vs.alpha
    # v = i/(rho0 w) (f - alpha grad p) + eta/(rho0 w)^2 curlcurl f
    s = STRIP.vol_tangential_symbol(2, y)
    gp_t = s * vs.pressure(y)
    gp_n = vs.pressure_dy(y)
    pref = 1j / (p.rho0 * p.omega)
    cc_t, cc_n = ms.curlcurl(y)
    s2 = p.eta / (p.rho0**2 * p.omega**2)
    vt_re = pref * (np.asarray(ms.f_tan(y), dtype=complex) - alpha * gp_t) + s2 * cc_t
    vn_re = pref * (np.asarray(ms.f_nrm(y), dtype=complex) - alpha * gp_n) + s2 * cc_n
    vt, vn = vs.velocity(y)
    sv = max(np.abs(vt).max(), np.abs(vn).max())
    assert max(np.abs(vt - vt_re).max(), np.abs(vn - vn_re).max()) <= 1e-8 * sv


def test_divergence_free_velocity_gives_zero_pressure():
    # a k = 0 field with vanishing normal component is divergence-free on
    # the strip, so the a-posteriori pressure is identically zero
    from viscoustics.fem1d import get_line
    from viscoustics.solutions import MixedModalSolution

    p = MaterialParams(omega=4.3, eta=2e-3)
    line = get_line(MESH, 6)
    rng = np.random.default_rng(1)
    coef_t = rng.standard_normal(line.n_dofs) + 1j * rng.standard_normal(line.n_dofs)
    coef_n = np.zeros(line.n_dofs, dtype=complex)
    sol = MixedModalSolution(0, 1, STRIP, p, line, coef_t, coef_n, None)
    y = np.linspace(0, 1, 51)
    assert np.abs(sol.pressure(y)).max() <= 1e-14 * np.abs(coef_t).max()
