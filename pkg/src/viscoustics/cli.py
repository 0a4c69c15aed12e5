"""Command-line front end: solve, converge, sweep-omega, nearfield.

Runs are driven by a TOML config (see ``demos/configs``).  Every CSV starts
with comment lines carrying the artifact version, a hash of the resolved
configuration and a timestamp; the body is deterministic for a fixed
config.  Exit codes: 0 success, 1 validation error, 2 solver failure.
"""

import argparse
import hashlib
import json
import math
import os
import sys
from datetime import datetime, timezone

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # python 3.10
    import tomli as tomllib

from . import __version__
from . import nearfield as nf
from .analysis import (AnalysisRegion, Discretization, eigenfrequencies_in,
                       run_sweep, solve_all_orders)
from .exact import solve_exact_mode
from .fem1d import NearSingularError
from .geometry import Annulus, CutoffSpec, StripTorus
from .params import MaterialParams
from .pressure import build_pressure_problem, solve_pressure_mode
from .sources import GaussianGradient, ModalManufactured, load_profile_csv, \
    project_to_modes


class ConfigError(ValueError):
    pass


def _need(table, key, where):
    if key not in table:
        raise ConfigError(f"missing config field [{where}] {key}")
    return table[key]


def load_config(path):
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    return raw


def resolve(raw):
    """Validate the raw config and build the run objects."""
    g = _need(raw, "geometry", "")
    kind = _need(g, "kind", "geometry")
    if kind == "strip":
        geom = StripTorus(float(g.get("period", 1.0)), float(g.get("height", 1.0)))
    elif kind == "annulus":
        geom = Annulus(float(_need(g, "r_inner", "geometry")),
                       float(_need(g, "r_outer", "geometry")))
    else:
        raise ConfigError(f"unknown geometry kind {kind!r}")

    m = _need(raw, "material", "")
    params = MaterialParams(
        omega=float(_need(m, "omega", "material")),
        c=float(m.get("c", 1.0)),
        rho0=float(m.get("rho0", 1.0)),
        eta=float(_need(m, "eta", "material")),
        eta_prime=float(m.get("eta_prime", 0.0)),
    )

    s = _need(raw, "source", "")
    skind = _need(s, "kind", "source")
    if skind == "gaussian_gradient":
        spec = GaussianGradient(tuple(_need(s, "center", "source")),
                                float(s.get("width", 0.005)),
                                float(s.get("amplitude", 1.0)))
        if spec.floor_at_walls(geom) > float(s.get("wall_floor", 1e-10)):
            raise ConfigError("source kind gaussian_gradient reaches the walls; "
                              "tighten width or move the center")
    elif skind == "modal_manufactured":
        spec = ModalManufactured(
            int(_need(s, "k", "source")),
            load_profile_csv(_need(s, "tangential_csv", "source")),
            load_profile_csv(_need(s, "normal_csv", "source")),
        )
    else:
        raise ConfigError(f"unknown source kind {skind!r}")

    d = raw.get("discretization", {})
    disc = Discretization(
        degree=int(d.get("degree", 11)),
        n_interior=int(d.get("n_interior", 8)),
        grading_ratio=float(d.get("grading_ratio", 0.5)),
        layers=int(d.get("layers", -1)),
        truncation=int(d.get("truncation", 64)),
        mode_energy_floor=float(d.get("mode_energy_floor", 1e-14)),
    )
    region = AnalysisRegion(float(raw.get("analysis", {}).get("delta", 0.2)))
    return geom, params, spec, disc, region


def config_hash(raw):
    return hashlib.sha256(json.dumps(raw, sort_keys=True, default=str)
                          .encode()).hexdigest()[:16]


def csv_header(raw):
    return (f"# viscoustics {__version__} config={config_hash(raw)}\n"
            f"# generated={datetime.now(timezone.utc).isoformat()}\n")


def _fmt(x):
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return f"{x:.16e}"
    return str(x)


def write_csv(path, raw, columns, rows):
    with open(path, "w") as fh:
        fh.write(csv_header(raw))
        fh.write(",".join(columns) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _outdir(args, raw):
    out = args.out or os.environ.get("VISCOUSTICS_OUT") \
        or raw.get("output", {}).get("directory", "out")
    os.makedirs(out, exist_ok=True)
    return out


def _jobs(args, raw):
    if args.jobs:
        return args.jobs
    env = os.environ.get("VISCOUSTICS_JOBS")
    if env:
        return int(env)
    return int(raw.get("output", {}).get("jobs", 1))


def cmd_solve(args):
    raw = load_config(args.config)
    geom, params, spec, disc, region = resolve(raw)
    out = _outdir(args, raw)
    orders = tuple(raw.get("solve", {}).get("orders", [0, 1, 2]))
    grid_n = raw.get("solve", {}).get("field_grid", [96, 96])

    modes = project_to_modes(spec, geom, disc.truncation)
    mesh = disc.mesh_for(geom, params.epsilon)
    exact, appr, failures = solve_all_orders(params, geom, modes, mesh, disc, orders)

    lo, hi = geom.wall_interval
    tmax = geom.period if geom.kind == "strip" else 2 * math.pi
    tg = np.linspace(0.0, tmax, int(grid_n[0]), endpoint=False)
    yg = np.linspace(lo, hi, int(grid_n[1]))
    ks = sorted(exact)

    def export(name, by_k):
        field = np.zeros((tg.size, yg.size), dtype=complex)
        for k in ks:
            harm = np.exp(1j * k * tg * (2 * math.pi / geom.period
                                         if geom.kind == "strip" else 1.0))
            field += np.outer(harm, by_k[k].pressure(yg))
        rows = [(t, y, field[i, j].real, field[i, j].imag)
                for i, t in enumerate(tg) for j, y in enumerate(yg)]
        write_csv(os.path.join(out, f"fields_{name}.csv"), raw,
                  ["t", "y", "re_p", "im_p"], rows)

    export("exact", exact)
    for n in sorted(appr):
        export(f"order{n}", appr[n])

    summary = {"orders_solved": sorted(appr), "failures": failures,
               "modes": len(ks), "epsilon": params.epsilon}
    with open(os.path.join(out, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
    if failures:
        with open(os.path.join(out, "error.json"), "w") as fh:
            json.dump({"failures": failures}, fh, indent=2, sort_keys=True)
        print(f"solver failure for orders {sorted(failures)}; "
              f"other outputs written to {out}", file=sys.stderr)
        return 2
    return 0


def _sweep_rows(report):
    rows = []
    for s in sorted(report.samples, key=lambda s: (s.eta, s.omega, s.order)):
        rows.append((s.eta, math.sqrt(s.eta), s.omega, s.order, s.err_p_h1,
                     s.err_v_hdiv, s.err_total, s.abs_p_h1, s.abs_v_hdiv,
                     s.status))
    return rows


_SWEEP_COLS = ["eta", "sqrt_eta", "omega", "order", "err_p_H1", "err_v_Hdiv",
               "err_total", "abs_p_H1", "abs_v_Hdiv", "status"]


def cmd_converge(args):
    raw = load_config(args.config)
    geom, params, spec, disc, region = resolve(raw)
    out = _outdir(args, raw)
    sw = raw.get("sweep", {})
    etas = [float(v) for v in sw.get("etas",
            [1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5])]
    report = run_sweep("eta", etas, params, geom, spec, disc, region,
                       jobs=_jobs(args, raw))
    write_csv(os.path.join(out, "errors.csv"), raw, _SWEEP_COLS,
              _sweep_rows(report))
    rows = [(n, report.slopes[n], report.windows[n][0], report.windows[n][1])
            for n in sorted(report.slopes)]
    write_csv(os.path.join(out, "slopes.csv"), raw,
              ["order", "slope", "window_lo", "window_hi"], rows)
    return 0


def cmd_sweep_omega(args):
    raw = load_config(args.config)
    geom, params, spec, disc, region = resolve(raw)
    out = _outdir(args, raw)
    sw = raw.get("sweep", {})
    if "omegas" in sw:
        omegas = [float(v) for v in sw["omegas"]]
    else:
        omegas = default_omega_grid(float(sw.get("omega_min", 2.0)),
                                    float(sw.get("omega_max", 17.0)),
                                    int(sw.get("n_omega", 64)),
                                    float(sw.get("min_gap", 0.02)))
    report = run_sweep("omega", omegas, params, geom, spec, disc, region,
                       jobs=_jobs(args, raw))
    write_csv(os.path.join(out, "errors.csv"), raw, _SWEEP_COLS,
              _sweep_rows(report))
    return 0


def default_omega_grid(lo, hi, n, min_gap, margin=None):
    """Uniform grid nudged off resonances, with probes near 3 pi, sqrt(20) pi.

    Regular samples keep a ``margin`` (default 1.5 * min_gap) from every
    eigenfrequency; the mandated probes sit at 0.03 and 0.05.
    """
    ev = eigenfrequencies_in(lo - 1.0, hi + 1.0)
    margin = margin if margin is not None else 1.5 * min_gap
    grid = list(np.linspace(lo, hi, n))

    def nudge(w, gap):
        for _ in range(8):
            moved = False
            for e in ev:
                if abs(w - e) < gap:
                    w = e + math.copysign(gap * 1.0001, w - e if w != e else 1.0)
                    moved = True
            if not moved:
                return w
        return w

    out = {round(nudge(w, margin), 9) for w in grid}
    probes = [3 * math.pi - 0.03, 3 * math.pi + 0.03,
              math.sqrt(20) * math.pi - 0.05, math.sqrt(20) * math.pi + 0.05]
    out.update(round(p, 9) for p in probes if lo <= p <= hi)
    return sorted(out)


def cmd_nearfield(args):
    raw = load_config(args.config)
    geom, params, spec, disc, region = resolve(raw)
    out = _outdir(args, raw)
    nfc = raw.get("nearfield", {})
    order = int(nfc.get("order", 2))
    t0 = float(nfc.get("slice", 0.0))
    n_pts = int(nfc.get("points", 400))

    lo, hi = geom.wall_interval
    if params.epsilon > 0.25 * (hi - lo):
        print("warning: boundary layers of opposite walls overlap "
              f"(epsilon {params.epsilon:.3e})", file=sys.stderr)
    if isinstance(spec, GaussianGradient) and geom.kind == "strip":
        if abs(spec.center[0] - t0) < 3 * math.sqrt(spec.width) \
                and not nfc.get("force", False):
            raise ConfigError("nearfield slice crosses the source support; "
                              "move the slice or set nearfield.force = true")

    cut = CutoffSpec.default(geom)
    modes = project_to_modes(spec, geom, disc.truncation)
    mesh = disc.mesh_for(geom, params.epsilon)
    ks = modes.significant_ks(disc.mode_energy_floor)
    y = np.linspace(lo, hi, n_pts)

    far_p, near_p, ex_p = [], [], []
    for k in ks:
        ms = modes[k]
        ex = solve_exact_mode(params, geom, ms, mesh, disc.degree)
        ps = solve_pressure_mode(build_pressure_problem(params, geom, order, ms),
                                 mesh, disc.degree)
        # correctors of both walls; their cut-off supports are disjoint
        w_t = np.zeros(n_pts, dtype=complex)
        for b in geom.boundary_components():
            svals = np.abs(y - b.coord)
            prof = nf.build_phi(order, nf.far_trace_of(ps, b), b, geom, k,
                                params, cut)
            wt_b, _ = nf.eval_corrector(prof, svals)
            w_t = w_t + wt_b
        vt_far, _ = ps.velocity(y)
        vt_ex, _ = ex.velocity(y)
        far_p.append(vt_far)
        near_p.append(w_t)
        ex_p.append(vt_ex)

    harm = np.array([np.exp(1j * k * t0 * (2 * math.pi / geom.period
                                           if geom.kind == "strip" else 1.0))
                     for k in ks])
    far2 = harm @ np.array(far_p)
    near2 = harm @ np.array(near_p)
    ex2 = harm @ np.array(ex_p)
    rows = []
    for i in range(n_pts):
        s = ex2[i]
        rows.append((y[i], s.real, s.imag, far2[i].real, far2[i].imag,
                     near2[i].real, near2[i].imag,
                     (far2[i] + near2[i]).real, (far2[i] + near2[i]).imag))
    write_csv(os.path.join(out, "profile.csv"), raw,
              ["coord", "re_exact", "im_exact", "re_far", "im_far",
               "re_near", "im_near", "re_sum", "im_sum"], rows)
    return 0


def main(argv=None):
    ap = argparse.ArgumentParser(prog="viscoustics",
                                 description="viscous acoustics solvers")
    ap.add_argument("command", choices=["solve", "converge", "sweep-omega",
                                        "nearfield"])
    ap.add_argument("--config", required=True)
    ap.add_argument("--out", default=None)
    ap.add_argument("--jobs", type=int, default=None)
    args = ap.parse_args(argv)
    handlers = {"solve": cmd_solve, "converge": cmd_converge,
                "sweep-omega": cmd_sweep_omega, "nearfield": cmd_nearfield}
    try:
        return handlers[args.command](args)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NearSingularError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
