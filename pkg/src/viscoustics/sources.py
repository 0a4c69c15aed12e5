"""Volumic sources, their tangential Fourier modes and boundary traces.

A source is described in Cartesian coordinates and projected onto the
tangential modes of the geometry by equispaced sampling and FFT (spectrally
exact for smooth periodic data).  Per mode the result is a pair of
wall-normal profiles (tangential/normal vector components in the canonical
basis: x/y on the strip, theta/r on the annulus), plus curl and curl-curl
profiles for the order-2 data and the wall trace record.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .geometry import oriented_symbol


@dataclass(frozen=True)
class GaussianGradient:
    """Gradient of amplitude * exp(-|x - x0|^2 / width); curl-free."""

    center: tuple
    width: float = 0.005
    amplitude: float = 1.0

    def __post_init__(self):
        if self.width <= 0:
            raise ValueError("width must be positive")

    def gaussian(self, x, y):
        x0, y0 = self.center
        return self.amplitude * np.exp(-((x - x0) ** 2 + (y - y0) ** 2) / self.width)

    def cartesian(self, x, y):
        """(f_x, f_y) with nearest-periodic-image summation left to caller."""
        g = self.gaussian(x, y)
        x0, y0 = self.center
        return -2.0 / self.width * (x - x0) * g, -2.0 / self.width * (y - y0) * g

    def floor_at_walls(self, geom):
        lo, hi = geom.wall_interval
        x0, y0 = self.center
        if geom.kind == "strip":
            d = min(abs(y0 - lo), abs(hi - y0))
        else:
            r0 = float(np.hypot(*self.center))
            d = min(abs(r0 - lo), abs(hi - r0))
        return float(np.exp(-(d**2) / self.width))


@dataclass(frozen=True)
class ModalManufactured:
    """A single tangential mode with prescribed wall-normal profiles.

    Profiles are vectorized callables of the wall-normal coordinate.  The
    derivative callables feed the curl-curl data exactly; when omitted they
    are replaced by spline differentiation on a dense grid.
    """

    k: int
    f_tan: callable
    f_nrm: callable
    f_tan_dy: callable = None
    f_tan_dyy: callable = None
    f_nrm_dy: callable = None


class ModalSource:
    """One tangential mode of the source on a given geometry."""

    def __init__(self, geom, k, f_tan, f_nrm, curl=None, curl_dy=None):
        self.geom = geom
        self.k = int(k)
        self.f_tan = f_tan
        self.f_nrm = f_nrm
        self._curl = curl
        self._curl_dy = curl_dy

    @property
    def is_curl_free(self):
        return self._curl is None

    def curl(self, y):
        """Modal scalar curl of the source."""
        y = np.asarray(y, dtype=float)
        if self._curl is None:
            return np.zeros_like(y, dtype=complex)
        return self._curl(y)

    def curlcurl(self, y):
        """Modal vector curl-curl of the source, (tangential, normal)."""
        y = np.asarray(y, dtype=float)
        if self._curl is None:
            z = np.zeros_like(y, dtype=complex)
            return z, z.copy()
        c = self._curl(y)
        dc = self._curl_dy(y)
        if self.geom.kind == "strip":
            xi = self.geom.vol_tangential_symbol(self.k, y)
            return dc, -xi * c
        # curl2d of a scalar in polar: ((ik/r) psi, -psi')
        return -dc, (1j * self.k / y) * c

    def traces(self, component):
        return boundary_traces(self, component)


def boundary_traces(ms, component):
    """Wall trace record of one modal source on one boundary component.

    Tangential derivatives are taken in the locked wall orientation
    (``oriented_symbol``), matching the wall-condition data formulas.
    """
    y = np.array([component.coord])
    ft = complex(np.asarray(ms.f_tan(y)).ravel()[0])
    fn = complex(np.asarray(ms.f_nrm(y)).ravel()[0])
    cc_t, cc_n = ms.curlcurl(y)
    sig = oriented_symbol(ms.geom, component, ms.k)
    fperp = component.nperp_sign * ft
    return {
        "f_n": component.normal_sign * fn,
        "f_nperp": fperp,
        "dG_f_nperp": sig * fperp,
        "dG_kappa_f_nperp": sig * component.kappa * fperp,
        "curlcurl_f_n": component.normal_sign * complex(np.asarray(cc_n).ravel()[0]),
    }


def curlcurl_iterate(ms, j, params):
    """Modal profiles of M_j(f) = (i w / rho0 c^2) (-i/2 curlcurl)^(j/2) f.

    Only j = 0 and j = 2 are supported (M_j vanishes for odd j, and the
    closed forms stop at the order-2 models).
    """
    if j % 2 != 0:
        raise ValueError("M_j vanishes for odd j")
    if j not in (0, 2):
        raise ValueError("only j in {0, 2} is available")
    scale = 1j * params.omega / (params.rho0 * params.c**2)

    if j == 0:
        return (lambda y: scale * np.asarray(ms.f_tan(y), dtype=complex),
                lambda y: scale * np.asarray(ms.f_nrm(y), dtype=complex))

    def m2_t(y):
        cc_t, _ = ms.curlcurl(y)
        return scale * (-0.5j) * cc_t

    def m2_n(y):
        _, cc_n = ms.curlcurl(y)
        return scale * (-0.5j) * cc_n

    return m2_t, m2_n


class ModalSourceSet:
    """Container of modal sources for |k| <= K with shared sampling cache."""

    def __init__(self, geom, modes, energies, truncation):
        self.geom = geom
        self._modes = modes
        self.energies = energies
        self.truncation = truncation

    def __iter__(self):
        return iter(self._modes.values())

    def __getitem__(self, k):
        return self._modes[k]

    @property
    def ks(self):
        return sorted(self._modes.keys())

    def significant_ks(self, floor=1e-14):
        """Modes carrying at least ``floor`` of the total modal energy."""
        tot = sum(self.energies.values())
        if tot == 0:
            return self.ks
        return [k for k in self.ks if self.energies[k] >= floor * tot]


def _sample_cartesian(spec, geom, tgrid, y):
    """Sample (f_tan, f_nrm) on tangential grid x wall-normal points."""
    T, Y = np.meshgrid(tgrid, y, indexing="ij")
    if geom.kind == "strip":
        fx = np.zeros_like(T)
        fy = np.zeros_like(T)
        # nearest three periodic images; further ones are below 1e-30
        for j in (-1, 0, 1):
            gx, gy = spec.cartesian(T + j * geom.period, Y)
            fx += gx
            fy += gy
        return fx, fy
    X = Y * np.cos(T)
    Xs = Y * np.sin(T)
    fx, fy = spec.cartesian(X, Xs)
    f_r = fx * np.cos(T) + fy * np.sin(T)
    f_th = -fx * np.sin(T) + fy * np.cos(T)
    return f_th, f_r


def project_to_modes(spec, geom, K, n_samples=None, aliasing_tol=1e-8):
    """Project a source onto tangential Fourier modes for |k| <= K.

    Modal coefficients come from equispaced tangential sampling (at least
    4K + 4 points) and FFT; a Parseval check against the sampled 2D energy
    guards the truncation and an aliasing warning fires when the top
    retained mode still carries more than ``aliasing_tol`` of the energy.
    """
    if K < 0:
        raise ValueError("truncation must be nonnegative")

    if isinstance(spec, ModalManufactured):
        return _manufactured_set(spec, geom)

    nt = int(n_samples or max(4 * K + 4, 64))
    if geom.kind == "strip":
        tgrid = np.linspace(0.0, geom.period, nt, endpoint=False)
    else:
        tgrid = np.linspace(0.0, 2 * np.pi, nt, endpoint=False)

    # wall-normal evaluation is lazy; cache FFT tables per requested grid
    cache = {}

    def table(y):
        key = y.tobytes()
        hit = cache.get(key)
        if hit is None:
            ft, fn = _sample_cartesian(spec, geom, tgrid, y)
            hit = (np.fft.fft(ft, axis=0) / nt, np.fft.fft(fn, axis=0) / nt)
            cache[key] = hit
        return hit

    def profile(which, k):
        def f(y):
            scalar = np.isscalar(y) or np.ndim(y) == 0
            yy = np.atleast_1d(np.asarray(y, dtype=float))
            tab = table(yy.ravel())[which][k % nt]
            if scalar:
                return tab[0]
            return tab.reshape(yy.shape)
        return f

    # energy bookkeeping on a fixed probe grid
    lo, hi = geom.wall_interval
    uq, wq = np.polynomial.legendre.leggauss(160)
    yprobe = 0.5 * (lo + hi) + 0.5 * (hi - lo) * uq
    wprobe = 0.5 * (hi - lo) * wq * geom.mu(yprobe)
    ft_hat, fn_hat = table(yprobe)
    dens = (np.abs(ft_hat) ** 2 + np.abs(fn_hat) ** 2) @ wprobe
    total_2d = float(dens.sum())  # discrete Parseval over all nt bins

    energies = {}
    modes = {}
    is_gradient = isinstance(spec, GaussianGradient)
    for k in range(-K, K + 1):
        energies[k] = float(dens[k % nt])
        if is_gradient:
            ms = ModalSource(geom, k, profile(0, k), profile(1, k))
        else:
            ms = ModalSource(geom, k, profile(0, k), profile(1, k),
                             curl=_sampled_curl(geom, k, profile(0, k), profile(1, k)),
                             curl_dy=None)
            ms._curl_dy = _spline_derivative(geom, ms._curl)
        modes[k] = ms

    kept = sum(energies.values())
    if total_2d > 0:
        if K > 0 and max(energies[K], energies[-K]) > aliasing_tol * total_2d:
            warnings.warn("top retained tangential mode still carries energy; "
                          "increase the truncation K", stacklevel=2)
        if (total_2d - kept) > 1e-8 * total_2d:
            warnings.warn("source energy beyond the retained modes exceeds the "
                          "Parseval tolerance", stacklevel=2)
    return ModalSourceSet(geom, modes, energies, K)


def _manufactured_set(spec, geom):
    k = spec.k
    f_tan = _as_complex(spec.f_tan)
    f_nrm = _as_complex(spec.f_nrm)
    dft = _as_complex(spec.f_tan_dy) if spec.f_tan_dy else _spline_derivative(geom, f_tan)
    if geom.kind == "strip":
        def curl(y):
            xi = geom.vol_tangential_symbol(k, y)
            return xi * f_nrm(y) - dft(y)
    else:
        def curl(y):
            y = np.asarray(y, dtype=float)
            return f_tan(y) / y + dft(y) - (1j * k / y) * f_nrm(y)
    curl_dy = _spline_derivative(geom, curl)
    if spec.f_tan_dyy and spec.f_nrm_dy:
        dftt = _as_complex(spec.f_tan_dyy)
        dfn = _as_complex(spec.f_nrm_dy)
        if geom.kind == "strip":
            def curl_dy(y):  # noqa: F811 - exact derivative when available
                xi = geom.vol_tangential_symbol(k, y)
                return xi * dfn(y) - dftt(y)
        else:
            def curl_dy(y):  # noqa: F811
                y = np.asarray(y, dtype=float)
                return (dft(y) / y - f_tan(y) / y**2 + dftt(y)
                        - (1j * k / y) * dfn(y) + (1j * k / y**2) * f_nrm(y))
    ms = ModalSource(geom, k, f_tan, f_nrm, curl=curl, curl_dy=curl_dy)
    lo, hi = geom.wall_interval
    uq, wq = np.polynomial.legendre.leggauss(160)
    yprobe = 0.5 * (lo + hi) + 0.5 * (hi - lo) * uq
    wprobe = 0.5 * (hi - lo) * wq * geom.mu(yprobe)
    energy = float(((np.abs(f_tan(yprobe)) ** 2 + np.abs(f_nrm(yprobe)) ** 2) * wprobe).sum())
    return ModalSourceSet(geom, {k: ms}, {k: energy}, abs(k))


def _as_complex(fn):
    return lambda y: np.asarray(fn(np.asarray(y, dtype=float)), dtype=complex)


def _sampled_curl(geom, k, f_tan, f_nrm):
    dft = _spline_derivative(geom, f_tan)
    if geom.kind == "strip":
        def curl(y):
            xi = geom.vol_tangential_symbol(k, y)
            return xi * f_nrm(y) - dft(y)
    else:
        def curl(y):
            y = np.asarray(y, dtype=float)
            return f_tan(y) / y + dft(y) - (1j * k / y) * f_nrm(y)
    return curl


def _spline_derivative(geom, fn, n=2001):
    lo, hi = geom.wall_interval
    grid = np.linspace(lo, hi, n)
    spl = CubicSpline(grid, np.asarray(fn(grid), dtype=complex))
    der = spl.derivative()
    return lambda y: der(np.asarray(y, dtype=float))


def load_profile_csv(path):
    """Profile callable from a CSV with columns y, Re, Im."""
    data = np.loadtxt(path, delimiter=",", comments="#")
    spl = CubicSpline(data[:, 0], data[:, 1] + 1j * data[:, 2])
    return lambda y: spl(np.asarray(y, dtype=float))


def reconstruct_2d(modal_profiles, geom, k_values, t, y):
    """Sum modal profiles times tangential harmonics at points (t, y)."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros(np.broadcast(t, y).shape, dtype=complex)
    for k, prof in zip(k_values, modal_profiles):
        if geom.kind == "strip":
            harm = np.exp(2j * np.pi * k * t / geom.period)
        else:
            harm = np.exp(1j * k * t)
        out = out + np.asarray(prof) * harm
    return out
