"""Modelling-error measurement, slope fits and sweep orchestration.

Errors are measured on an interior region a fixed distance away from the
walls, where the exponentially decaying near fields are negligible, as

    |p - p_N|_H1 / |p|_H1  +  |v - v_N|_Hdiv / |v|_Hdiv,

summed over tangential modes (Parseval).  Sweeps over eta reproduce the
modelling-error convergence in sqrt(eta); sweeps over omega show the
resonance behaviour of the three model orders.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import fem1d
from .exact import solve_exact_mode
from .fem1d import NearSingularError
from .pressure import build_pressure_problem, solve_pressure_mode
from .sources import project_to_modes


@dataclass(frozen=True)
class AnalysisRegion:
    """Interior subdomain: wall standoff delta on both sides."""

    delta: float

    def interval(self, geom):
        lo, hi = geom.wall_interval
        if not 0 < self.delta < 0.5 * (hi - lo):
            raise ValueError("empty analysis region")
        return (lo + self.delta, hi - self.delta)

    def quadrature(self, geom, panels=48, points=6):
        lo, hi = self.interval(geom)
        edges = np.linspace(lo, hi, panels + 1)
        u, w = np.polynomial.legendre.leggauss(points)
        mid = 0.5 * (edges[:-1] + edges[1:])[:, None]
        half = 0.5 * np.diff(edges)[:, None]
        y = (mid + half * u[None, :]).ravel()
        wq = (half * w[None, :]).ravel() * geom.mu(y)
        return y, wq


def mode_h1_sq(sol, geom, k, y, wq):
    s2 = np.abs(geom.vol_tangential_symbol(k, y)) ** 2
    p = sol.pressure(y)
    dp = sol.pressure_dy(y)
    return float(np.sum(wq * (np.abs(p) ** 2 * (1.0 + s2) + np.abs(dp) ** 2)))


def mode_h1_diff_sq(a, b, geom, k, y, wq):
    s2 = np.abs(geom.vol_tangential_symbol(k, y)) ** 2
    dp = a.pressure(y) - b.pressure(y)
    dd = a.pressure_dy(y) - b.pressure_dy(y)
    return float(np.sum(wq * (np.abs(dp) ** 2 * (1.0 + s2) + np.abs(dd) ** 2)))


def mode_hdiv_sq(sol, geom, k, y, wq):
    vt, vn = sol.velocity(y)
    d = sol.div(y)
    return float(np.sum(wq * (np.abs(vt) ** 2 + np.abs(vn) ** 2 + np.abs(d) ** 2)))


def mode_hdiv_diff_sq(a, b, geom, k, y, wq):
    at, an = a.velocity(y)
    bt, bn = b.velocity(y)
    d = a.div(y) - b.div(y)
    return float(np.sum(wq * (np.abs(at - bt) ** 2 + np.abs(an - bn) ** 2 + np.abs(d) ** 2)))


def modelling_error(exact_by_k, appr_by_k, region, geom):
    """Relative H1 pressure and Hdiv velocity errors over the region."""
    if set(exact_by_k) != set(appr_by_k):
        raise ValueError("mode sets of the two solutions differ")
    if not exact_by_k:
        raise ValueError("no modes to compare")
    y, wq = region.quadrature(geom)
    num_p = den_p = num_v = den_v = 0.0
    for k in exact_by_k:
        ex, ap = exact_by_k[k], appr_by_k[k]
        num_p += mode_h1_diff_sq(ex, ap, geom, k, y, wq)
        den_p += mode_h1_sq(ex, geom, k, y, wq)
        num_v += mode_hdiv_diff_sq(ex, ap, geom, k, y, wq)
        den_v += mode_hdiv_sq(ex, geom, k, y, wq)
    m = geom.mode_measure
    abs_p, abs_v = math.sqrt(m * num_p), math.sqrt(m * num_v)
    err_p = abs_p / math.sqrt(m * den_p)
    err_v = abs_v / math.sqrt(m * den_v)
    return {"err_p_h1": err_p, "err_v_hdiv": err_v, "err_total": err_p + err_v,
            "abs_p_h1": abs_p, "abs_v_hdiv": abs_v}


def fit_slope(samples, window=None):
    """Least-squares slope of log(error) vs log(sqrt(eta)) over a window."""
    pts = list(samples)
    if window is not None:
        pts = pts[window[0]:window[1]]
    if len(pts) < 3:
        raise ValueError("need at least 3 samples in the fit window")
    x = np.array([s[0] for s in pts], dtype=float)
    e = np.array([s[1] for s in pts], dtype=float)
    if np.any(e <= 0):
        raise ValueError("non-positive error in the fit window")
    return float(np.polyfit(np.log(x), np.log(e), 1)[0])


def auto_window(samples, rel_tol=0.15):
    """Fit window excluding floor and pre-asymptotic samples.

    Samples are (sqrt(eta), error), ascending.  The smallest-eta pairs with
    collapsed local slope (discretization floor) are trimmed, then the
    window grows from the most asymptotic end while the local slope stays
    within +-15% of the running median; this mimics a variance-weighted
    regression that down-weights outlier samples.
    """
    pts = list(samples)
    n = len(pts)
    if n < 3 or any(e <= 0 or not np.isfinite(e) for _, e in pts):
        return (0, n)
    logx = np.log([p[0] for p in pts])
    loge = np.log([p[1] for p in pts])
    local = np.diff(loge) / np.diff(logx)
    lo = 0
    med = np.median(local)
    while n - lo > 3 and local[lo] < 0.8 * med:
        lo += 1
    hi = lo + 2  # anchor at the most asymptotic non-floor pair
    accepted = [local[lo]]
    while hi < n:
        mid = np.median(accepted)
        if abs(local[hi - 1] - mid) > rel_tol * max(abs(mid), 0.2):
            break
        accepted.append(local[hi - 1])
        hi += 1
    if hi - lo < 3:
        return (0, n)
    return (lo, hi)


def eigenfrequency(k, m):
    """Neumann eigenfrequency pi*sqrt(k^2 + 4 m^2) of the unit strip torus."""
    if k < 1 or int(k) != k:
        raise ValueError("k must be a positive integer")
    if m < 0 or int(m) != m:
        raise ValueError("m must be a nonnegative integer")
    return math.pi * math.sqrt(k**2 + 4 * m**2)


def eigenfrequencies_in(lo, hi):
    """Sorted eigenfrequencies of the unit strip torus inside [lo, hi]."""
    out = set()
    kmax = int(hi / math.pi) + 1
    for k in range(1, kmax + 1):
        m = 0
        while True:
            w = eigenfrequency(k, m)
            if w > hi:
                break
            if w >= lo:
                out.add(round(w, 12))
            m += 1
    return sorted(out)


@dataclass
class SweepSample:
    eta: float
    omega: float
    order: int
    status: str
    err_p_h1: float = math.nan
    err_v_hdiv: float = math.nan
    err_total: float = math.nan
    abs_p_h1: float = math.nan
    abs_v_hdiv: float = math.nan


@dataclass
class ErrorReport:
    kind: str
    samples: list = field(default_factory=list)
    slopes: dict = field(default_factory=dict)
    windows: dict = field(default_factory=dict)

    def series(self, order, key="err_total"):
        rows = [s for s in self.samples if s.order == order]
        rows.sort(key=lambda s: (s.eta, s.omega))
        return rows


@dataclass
class Discretization:
    """Wall-normal discretization knobs shared by all solvers of one run."""

    degree: int = 12
    n_interior: int = 8
    grading_ratio: float = 0.5
    layers: int = -1          # -1: auto from the smallest layer scale
    truncation: int = 64
    mode_energy_floor: float = 1e-14

    def mesh_for(self, geom, min_eps):
        iv = geom.wall_interval
        lay = self.layers
        if lay < 0:
            lay = fem1d.layers_for_scale(iv, self.n_interior, self.grading_ratio, min_eps)
        return fem1d.build_graded_mesh(iv, self.n_interior, self.grading_ratio, lay)


def solve_all_orders(params, geom, modes, mesh, disc, orders=(0, 1, 2)):
    """Exact plus order-N pressure-route solutions for the given modes."""
    exact = {}
    appr = {n: {} for n in orders}
    failures = {}
    for k in modes.significant_ks(disc.mode_energy_floor):
        ms = modes[k]
        exact[k] = solve_exact_mode(params, geom, ms, mesh, disc.degree)
        for n in orders:
            if n in failures:
                continue
            try:
                prob = build_pressure_problem(params, geom, n, ms)
                appr[n][k] = solve_pressure_mode(prob, mesh, disc.degree)
            except NearSingularError as exc:
                failures[n] = f"near-singular mode {k}: {exc}"
    for n in list(failures):
        appr.pop(n, None)
    return exact, appr, failures


def run_sweep(kind, values, params, geom, source_spec, disc, region,
              orders=(0, 1, 2), jobs=1):
    """Run an eta or omega sweep and collect the error report.

    Solver failures (resonant order-0 samples) are recorded per sample and
    the sweep continues.  Deterministic for a fixed configuration.
    """
    if kind not in ("eta", "omega"):
        raise ValueError("sweep kind must be 'eta' or 'omega'")
    values = list(values)
    modes = project_to_modes(source_spec, geom, disc.truncation)
    min_eps = min(
        (params.with_eta(v) if kind == "eta" else params.with_omega(v)).epsilon
        for v in values)
    mesh = disc.mesh_for(geom, min_eps)

    def one(value):
        p = params.with_eta(value) if kind == "eta" else params.with_omega(value)
        exact, appr, failures = solve_all_orders(p, geom, modes, mesh, disc, orders)
        out = []
        for n in orders:
            if n in failures:
                out.append(SweepSample(p.eta, p.omega, n, "failed: " + failures[n]))
                continue
            err = modelling_error(exact, appr[n], region, geom)
            out.append(SweepSample(p.eta, p.omega, n, "ok",
                                   err["err_p_h1"], err["err_v_hdiv"],
                                   err["err_total"], err["abs_p_h1"],
                                   err["abs_v_hdiv"]))
        return out

    report = ErrorReport(kind)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(one, values))
    else:
        chunks = [one(v) for v in values]
    for chunk in chunks:
        report.samples.extend(chunk)

    if kind == "eta":
        for n in orders:
            pts = [(math.sqrt(s.eta), s.err_total) for s in report.series(n)
                   if s.status == "ok"]
            if len(pts) >= 3:
                win = auto_window(pts)
                report.windows[n] = win
                report.slopes[n] = fit_slope(pts, win)
    return report
