import numpy as np
import pytest
import sympy as sp

from viscoustics.geometry import Annulus, StripTorus
from viscoustics.params import MaterialParams
from viscoustics.sources import (GaussianGradient, ModalManufactured,
                                 boundary_traces, curlcurl_iterate,
                                 project_to_modes, reconstruct_2d)

STRIP = StripTorus(1.0, 1.0)


class UniformInX:
    """Tangentially constant source for the orthogonality check."""

    def cartesian(self, x, y):
        g = np.exp(-((y - 0.5) ** 2) / 0.01)
        return 0.3 * g, 1.0 * g


class SingleHarmonic:
    def cartesian(self, x, y):
        g = np.exp(-((y - 0.5) ** 2) / 0.01)
        return np.cos(2 * np.pi * 3 * x) * g, np.sin(2 * np.pi * 3 * x) * g


def _mode_energy(ss):
    return {k: ss.energies[k] for k in ss.ks}


def test_constant_source_only_k0():
    ss = project_to_modes(UniformInX(), STRIP, 6)
    en = _mode_energy(ss)
    tot = sum(en.values())
    for k in ss.ks:
        if k != 0:
            assert en[k] <= 1e-25 * tot


def test_single_harmonic_only_k3():
    ss = project_to_modes(SingleHarmonic(), STRIP, 6)
    en = _mode_energy(ss)
    tot = sum(en.values())
    for k in ss.ks:
        if abs(k) != 3:
            assert en[k] <= 1e-25 * tot
    assert en[3] > 0.1 * tot


def test_gaussian_spectrum_decay_and_closed_form():
    spec = GaussianGradient((0.75, 0.5), 0.005)
    ss = project_to_modes(spec, STRIP, 64)
    en = _mode_energy(ss)
    tot = sum(en.values())
    # measured spectral cutoff: energies fall below 1e-10 of the total past
    # |k| = 16 and are numerically zero near |k| = 40
    assert all(en[k] <= 1e-10 * tot for k in ss.ks if abs(k) > 16)
    assert all(en[k] <= 1e-28 * tot for k in ss.ks if abs(k) >= 40)

    # closed-form modal coefficient of the gaussian gradient (un-periodized
    # integral; images at width 0.005 are below 1e-30)
    w = 0.005
    x0, y0 = 0.75, 0.5
    y = np.linspace(0.2, 0.8, 7)
    for k in (0, 3, 11):
        xi = 2 * np.pi * k
        gk = (np.sqrt(np.pi * w) * np.exp(-1j * xi * x0)
              * np.exp(-(xi**2) * w / 4) * np.exp(-((y - y0) ** 2) / w))
        ms = ss[k]
        assert np.allclose(ms.f_tan(y), 1j * xi * gk, rtol=1e-12, atol=1e-13)
        assert np.allclose(ms.f_nrm(y), -2 * (y - y0) / w * gk, rtol=1e-12, atol=1e-13)


def test_parseval_reconstruction_at_random_points():
    spec = GaussianGradient((0.75, 0.5), 0.005)
    ss = project_to_modes(spec, STRIP, 48)
    rng = np.random.default_rng(5)
    xs = rng.uniform(0, 1, 12)
    ys = rng.uniform(0.3, 0.7, 12)
    ks = ss.ks
    scale = 2 / spec.width * np.sqrt(spec.width)  # source magnitude scale
    for x, y in zip(xs, ys):
        profs = [complex(ss[k].f_tan(np.array([y]))[0]) for k in ks]
        val = reconstruct_2d(profs, STRIP, ks, np.array([x]), np.array([y]))[0]
        ref = sum(spec.cartesian(x + j, y)[0] for j in (-1, 0, 1))
        assert abs(val - ref) <= 1e-8 * scale

    # Parseval: modal energies match the 2D source energy
    uq, wq = np.polynomial.legendre.leggauss(200)
    yq = 0.5 + 0.5 * uq
    xq = np.linspace(0, 1, 400, endpoint=False)
    X, Y = np.meshgrid(xq, yq, indexing="ij")
    fx = sum(spec.cartesian(X + j, Y)[0] for j in (-1, 0, 1))
    fy = sum(spec.cartesian(X + j, Y)[1] for j in (-1, 0, 1))
    e2d = np.sum((np.abs(fx) ** 2 + np.abs(fy) ** 2) * (0.5 * wq)[None, :]) / 400
    emod = sum(ss.energies.values())
    assert emod == pytest.approx(e2d, rel=1e-8)


def test_aliasing_warning():
    spec = GaussianGradient((0.75, 0.5), 0.005)
    with pytest.warns(UserWarning):
        project_to_modes(spec, STRIP, 6, n_samples=64)


def test_curlcurl_iterate_gradient_source_vanishes():
    spec = GaussianGradient((0.75, 0.5), 0.005)
    ss = project_to_modes(spec, STRIP, 16)
    p = MaterialParams(omega=15.0, eta=1e-3)
    y = np.linspace(0.1, 0.9, 33)
    scale = max(np.abs(ss[3].f_tan(y)).max(), np.abs(ss[3].f_nrm(y)).max())
    m2t, m2n = curlcurl_iterate(ss[3], 2, p)
    assert np.abs(m2t(y)).max() <= 1e-9 * scale
    assert np.abs(m2n(y)).max() <= 1e-9 * scale
    assert np.abs(ss[3].curl(y)).max() <= 1e-9 * scale


def test_curlcurl_iterate_scaling_and_odd_rejection():
    p = MaterialParams(omega=3.0, rho0=2.0, c=1.5, eta=1e-3)
    spec = ModalManufactured(2, f_tan=lambda y: np.sin(y), f_nrm=lambda y: y**2)
    ms = project_to_modes(spec, STRIP, 4)[2]
    y = np.linspace(0.1, 0.9, 9)
    m0t, m0n = curlcurl_iterate(ms, 0, p)
    pref = 1j * p.omega / (p.rho0 * p.c**2)
    assert np.allclose(m0t(y), pref * np.sin(y))
    assert np.allclose(m0n(y), pref * y**2)
    with pytest.raises(ValueError):
        curlcurl_iterate(ms, 1, p)
    with pytest.raises(ValueError):
        curlcurl_iterate(ms, 4, p)


def test_curlcurl_against_symbolic_oracle():
    # f = (sin(2 pi x) h(y), 0): compare curlcurl f with sympy
    yy = sp.symbols("y", real=True)
    h = sp.exp(-yy) * sp.sin(2 * yy)
    k = 1  # sin(2 pi x) carries modes +-1; test the k=+1 part, coeff 1/(2i)
    hf = sp.lambdify(yy, h, "numpy")
    dh = sp.lambdify(yy, sp.diff(h, yy), "numpy")
    d2h = sp.lambdify(yy, sp.diff(h, yy, 2), "numpy")
    spec = ModalManufactured(
        k,
        f_tan=lambda y: hf(y) / 2j,
        f_nrm=lambda y: 0.0 * y,
        f_tan_dy=lambda y: dh(y) / 2j,
        f_tan_dyy=lambda y: d2h(y) / 2j,
        f_nrm_dy=lambda y: 0.0 * y,
    )
    ms = project_to_modes(spec, STRIP, 2)[k]
    xi = 2 * np.pi * k
    x, ysym = sp.symbols("x y", real=True)
    fx = sp.sin(2 * sp.pi * x) * h.subs(yy, ysym)
    curl = -sp.diff(fx, ysym)          # curl f = dx f_y - dy f_x
    ccx = sp.diff(curl, ysym)          # curl2d scalar: (dy, -dx)
    ccy = -sp.diff(curl, x)
    ccx_f = sp.lambdify((x, ysym), ccx, "numpy")
    ccy_f = sp.lambdify((x, ysym), ccy, "numpy")
    ypts = np.linspace(0.2, 0.8, 5)
    cc_t, cc_n = ms.curlcurl(ypts)
    for xpt in (0.13, 0.77):
        harm = np.exp(1j * xi * xpt)
        # mode k=+1 of sin(2 pi x) g(x,y): the -1 mode is the conjugate pair
        ref_t = ccx_f(xpt, ypts)
        ref_n = ccy_f(xpt, ypts)
        got_t = 2 * np.real(cc_t * harm)
        got_n = 2 * np.real(cc_n * harm)
        assert np.allclose(got_t, ref_t, atol=1e-8, rtol=1e-8)
        assert np.allclose(got_n, ref_n, atol=1e-8, rtol=1e-8)


def test_boundary_traces_gaussian_negligible():
    spec = GaussianGradient((0.75, 0.5), 0.005)
    ss = project_to_modes(spec, STRIP, 24)
    scale = np.sqrt(sum(ss.energies.values()))
    for k in (-7, 0, 4):
        for b in STRIP.boundary_components():
            tr = boundary_traces(ss[k], b)
            for key, v in tr.items():
                assert abs(v) <= 1e-8 * scale, (k, b.name, key)


def test_boundary_traces_signs():
    # f = (e^{2 pi i x}, 0): zero normal trace; tangential-derivative trace
    # carries the locked orientation (-2 pi i at the bottom wall)
    spec = ModalManufactured(1, f_tan=lambda y: np.ones_like(y),
                             f_nrm=lambda y: np.zeros_like(y))
    ms = project_to_modes(spec, STRIP, 2)[1]
    bot = STRIP.component("bottom")
    top = STRIP.component("top")
    trb = boundary_traces(ms, bot)
    trt = boundary_traces(ms, top)
    assert trb["f_n"] == 0
    assert trb["f_nperp"] == pytest.approx(1.0)         # n_perp = +x at bottom
    assert trt["f_nperp"] == pytest.approx(-1.0)        # n_perp = -x at top
    assert trb["dG_f_nperp"] == pytest.approx(-2j * np.pi)
    assert trt["dG_f_nperp"] == pytest.approx(-2j * np.pi)


def test_trace_normal_component_orientation():
    spec = ModalManufactured(0, f_tan=lambda y: np.zeros_like(y),
                             f_nrm=lambda y: 1.0 + y)
    ms = project_to_modes(spec, STRIP, 0)[0]
    assert boundary_traces(ms, STRIP.component("bottom"))["f_n"] == pytest.approx(-1.0)
    assert boundary_traces(ms, STRIP.component("top"))["f_n"] == pytest.approx(2.0)


def test_annulus_projection_polar_components():
    ann = Annulus(0.5, 1.25)
    spec = GaussianGradient((0.875, 0.0), 0.01)
    ss = project_to_modes(spec, ann, 96)
    # reconstruct f at a probe point and compare with the cartesian spec
    th, r = 0.3, 0.9
    x, y = r * np.cos(th), r * np.sin(th)
    fx, fy = spec.cartesian(x, y)
    f_r = fx * np.cos(th) + fy * np.sin(th)
    f_th = -fx * np.sin(th) + fy * np.cos(th)
    ks = ss.ks
    got_t = sum(complex(ss[k].f_tan(np.array([r]))[0]) * np.exp(1j * k * th) for k in ks)
    got_n = sum(complex(ss[k].f_nrm(np.array([r]))[0]) * np.exp(1j * k * th) for k in ks)
    scale = 2 / spec.width * np.sqrt(spec.width)
    assert abs(got_t - f_th) < 1e-8 * scale
    assert abs(got_n - f_r) < 1e-8 * scale
