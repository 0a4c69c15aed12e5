/** Figure renderers for the four CSV kinds produced by the solver CLI. */

import { column, numericColumn, requireColumns, SchemaError, Table } from "./csv.js";
import { eigenfrequencies, fitLogSlope, toPrecision2 } from "./fit.js";
import { formatTick, linearScale, logScale, Scale } from "./scales.js";
import { document as svgDoc, el, polyline, SERIES_COLORS, text } from "./svg.js";

const W = 640;
const H = 460;
const M = { left: 70, right: 20, top: 24, bottom: 46 };

interface SweepRow {
  x: number;
  err: number;
  order: number;
  ok: boolean;
  omega: number;
}

function sweepRows(errors: Table, xcol: string): SweepRow[] {
  requireColumns(errors, [xcol, "order", "err_total", "status", "omega"],
    "errors.csv");
  const xs = numericColumn(errors, xcol);
  const orders = numericColumn(errors, "order");
  const errs = numericColumn(errors, "err_total");
  const omegas = numericColumn(errors, "omega");
  const status = column(errors, "status");
  return xs.map((x, i) => ({
    x,
    err: errs[i],
    order: orders[i],
    ok: status[i] === "ok" && Number.isFinite(errs[i]),
    omega: omegas[i],
  }));
}

function axes(x: Scale, y: Scale, xlabel: string, ylabel: string): string[] {
  const out: string[] = [];
  const [x0, x1] = x.range;
  const [y0, y1] = y.range;
  out.push(el("rect", {
    x: x0, y: y1, width: x1 - x0, height: y0 - y1,
    fill: "none", stroke: "#333",
  }));
  for (const t of x.ticks) {
    const px = x(t);
    out.push(el("line", { x1: px, y1: y0, x2: px, y2: y0 + 4, stroke: "#333" }));
    out.push(text(formatTick(t), {
      x: px, y: y0 + 16, "text-anchor": "middle",
    }));
  }
  for (const t of y.ticks) {
    const py = y(t);
    out.push(el("line", { x1: x0 - 4, y1: py, x2: x0, y2: py, stroke: "#333" }));
    out.push(text(formatTick(t), {
      x: x0 - 7, y: py + 3, "text-anchor": "end",
    }));
    out.push(el("line", {
      x1: x0, y1: py, x2: x1, y2: py, stroke: "#ddd", "stroke-width": 0.5,
    }));
  }
  out.push(text(xlabel, { x: (x0 + x1) / 2, y: y0 + 34, "text-anchor": "middle" }));
  out.push(text(ylabel, {
    x: 16, y: (y0 + y1) / 2, "text-anchor": "middle",
    transform: `rotate(-90 16 ${(y0 + y1) / 2})`,
  }));
  return out;
}

function legendEntry(x: number, y: number, color: string, label: string): string[] {
  return [
    el("line", { x1: x, y1: y - 3, x2: x + 22, y2: y - 3, stroke: color, "stroke-width": 2 }),
    text(label, { x: x + 28, y }),
  ];
}

/** Log-log modelling error vs sqrt(eta) with per-order slope annotations. */
export function renderConverge(errors: Table, slopes?: Table): string {
  const rows = sweepRows(errors, "sqrt_eta");
  const orders = [...new Set(rows.map((r) => r.order))].sort();
  const okRows = rows.filter((r) => r.ok);
  if (okRows.length === 0) throw new SchemaError("errors.csv: no usable samples");
  const xs = okRows.map((r) => r.x);
  const ys = okRows.map((r) => r.err);
  const x = logScale([Math.min(...xs) / 1.3, Math.max(...xs) * 1.3],
    [M.left, W - M.right]);
  const y = logScale([Math.min(...ys) / 2, Math.max(...ys) * 2],
    [H - M.bottom, M.top]);
  const body = axes(x, y, "sqrt(eta)", "relative modelling error");

  const windows = new Map<number, [number, number]>();
  if (slopes) {
    requireColumns(slopes, ["order", "slope", "window_lo", "window_hi"], "slopes.csv");
    const so = numericColumn(slopes, "order");
    const lo = numericColumn(slopes, "window_lo");
    const hi = numericColumn(slopes, "window_hi");
    so.forEach((o, i) => windows.set(o, [lo[i], hi[i]]));
  }

  let legendY = M.top + 14;
  for (const order of orders) {
    const color = SERIES_COLORS[order % SERIES_COLORS.length];
    const series = rows.filter((r) => r.order === order && r.ok)
      .sort((a, b) => a.x - b.x);
    if (series.length === 0) {
      body.push(text(`order ${order}: not represented (solver failure)`, {
        x: M.left + 10, y: legendY, fill: color,
      }));
      legendY += 16;
      continue;
    }
    const pts: Array<[number, number]> = series.map((r) => [x(r.x), y(r.err)]);
    body.push(polyline(pts, {
      stroke: color, "stroke-width": 1.6, class: `series order-${order}`,
    }));
    for (const [px, py] of pts) {
      body.push(el("circle", { cx: px, cy: py, r: 2.6, fill: color }));
    }
    const win = windows.get(order) ?? [0, series.length];
    const seg = series.slice(win[0], win[1]);
    const fitted = fitLogSlope(seg.map((r) => r.x), seg.map((r) => r.err));
    const mid = seg[Math.floor(seg.length / 2)];
    body.push(text(`slope ${toPrecision2(fitted)}`, {
      x: x(mid.x) + 8, y: y(mid.err) + 14, fill: color,
      class: `slope-annotation order-${order}`,
    }));
    // slope triangle under the fitted segment
    const a = seg[0];
    const b = seg[seg.length - 1];
    body.push(polyline(
      [[x(a.x), y(a.err) + 20], [x(b.x), y(b.err) + 20], [x(a.x), y(b.err) + 20],
       [x(a.x), y(a.err) + 20]],
      { stroke: color, "stroke-width": 0.8, class: "slope-triangle" }));
    body.push(...legendEntry(W - 170, legendY, color, `order ${order}`));
    legendY += 16;
  }
  return svgDoc(W, H, body);
}

/** Semilog error vs frequency with eigenfrequency gridlines. */
export function renderOmega(errors: Table): string {
  const rows = sweepRows(errors, "omega");
  const orders = [...new Set(rows.map((r) => r.order))].sort();
  const okRows = rows.filter((r) => r.ok);
  if (okRows.length === 0) throw new SchemaError("errors.csv: no usable samples");
  const ws = rows.map((r) => r.omega);
  const ys = okRows.map((r) => r.err);
  const x = linearScale([Math.min(...ws), Math.max(...ws)], [M.left, W - M.right]);
  const y = logScale([Math.min(...ys) / 2, Math.max(...ys) * 3], [H - M.bottom, M.top]);
  const body = axes(x, y, "omega", "modelling error");

  for (const ev of eigenfrequencies(x.domain[0], x.domain[1])) {
    body.push(el("line", {
      x1: x(ev), y1: y.range[0], x2: x(ev), y2: y.range[1],
      stroke: "#999", "stroke-dasharray": "4 3", class: "eigenfrequency",
    }));
  }
  let legendY = H - M.bottom - 12 - 16 * orders.length;
  for (const order of orders) {
    const color = SERIES_COLORS[order % SERIES_COLORS.length];
    const series = rows.filter((r) => r.order === order).sort((a, b) => a.omega - b.omega);
    // split the polyline at failed samples
    let run: Array<[number, number]> = [];
    const flush = () => {
      if (run.length > 1) {
        body.push(polyline(run, {
          stroke: color, "stroke-width": 1.4, class: `series order-${order}`,
        }));
      }
      run = [];
    };
    let plotted = 0;
    for (const r of series) {
      if (!r.ok) {
        flush();
        continue;
      }
      run.push([x(r.omega), y(r.err)]);
      plotted += 1;
    }
    flush();
    const label = plotted === 0
      ? `order ${order}: not represented (solver failure)`
      : `order ${order}`;
    body.push(...legendEntry(W - 230, legendY, color, label));
    legendY += 16;
  }
  return svgDoc(W, H, body);
}

/** Two-panel side view of the tangential velocity through the layer. */
export function renderProfile(profile: Table, field: "re" | "im" = "im"): string {
  requireColumns(profile, ["coord", `${field}_exact`, `${field}_far`,
    `${field}_near`, `${field}_sum`], "profile.csv");
  const coord = numericColumn(profile, "coord");
  const curves: Array<[string, number[], string, string]> = [
    ["exact", numericColumn(profile, `${field}_exact`), "#222", ""],
    ["far field", numericColumn(profile, `${field}_far`), "#d62728", "6 3"],
    ["near field", numericColumn(profile, `${field}_near`), "#d62728", "2 3"],
    ["far + near", numericColumn(profile, `${field}_sum`), "#1f6fb4", ""],
  ];
  const span = Math.abs(coord[coord.length - 1] - coord[0]);
  const zoomSpan = 0.15 * span;
  const panels: string[] = [];
  const panelW = (W - M.left - M.right - 30) / 2;
  [0, 1].forEach((panel) => {
    const x0 = M.left + panel * (panelW + 30);
    const inZoom = (c: number, i0: number) =>
      panel === 0 || Math.abs(c - coord[0]) <= zoomSpan;
    const idx = coord.map((c, i) => i).filter((i) => inZoom(coord[i], i));
    const vals = curves.flatMap(([, v]) => idx.map((i) => v[i]));
    const lo = Math.min(...vals);
    const hi = Math.max(...vals);
    const pad = 0.08 * (hi - lo || 1);
    const x = linearScale(
      [Math.min(...idx.map((i) => coord[i])), Math.max(...idx.map((i) => coord[i]))],
      [x0, x0 + panelW]);
    const y = linearScale([lo - pad, hi + pad], [H - M.bottom, M.top]);
    panels.push(...axes(x, y, panel === 0 ? "wall-normal coordinate" : "zoom at the wall",
      panel === 0 ? `${field}(tangential velocity)` : ""));
    curves.forEach(([label, v, color, dash], ci) => {
      const pts: Array<[number, number]> = idx.map((i) => [x(coord[i]), y(v[i])]);
      panels.push(polyline(pts, {
        stroke: color, "stroke-width": 1.4,
        ...(dash ? { "stroke-dasharray": dash } : {}),
        class: `curve-${label.replace(/[ +]+/g, "-")}`,
      }));
      if (panel === 0) {
        panels.push(...legendEntry(x0 + 12, M.top + 16 + 15 * ci, color, label));
      }
    });
  });
  return svgDoc(W, H, panels);
}

/** Heatmap panels of the 2D pressure fields with a shared color scale. */
export function renderFields(named: Array<{ name: string; table: Table }>): string {
  if (named.length === 0) throw new SchemaError("no field tables given");
  const grids = named.map(({ name, table }) => {
    requireColumns(table, ["t", "y", "re_p"], `fields csv '${name}'`);
    const t = numericColumn(table, "t");
    const yy = numericColumn(table, "y");
    const v = numericColumn(table, "re_p");
    const ts = [...new Set(t)].sort((a, b) => a - b);
    const ys = [...new Set(yy)].sort((a, b) => a - b);
    const grid = ts.map(() => ys.map(() => 0));
    const ti = new Map(ts.map((x, i) => [x, i]));
    const yi = new Map(ys.map((x, i) => [x, i]));
    t.forEach((tv, i) => {
      grid[ti.get(tv)!][yi.get(yy[i])!] = v[i];
    });
    return { name, ts, ys, grid };
  });
  const vmax = Math.max(...grids.flatMap((g) => g.grid.flat().map(Math.abs))) || 1;
  const panelW = (W - 60 - 16 * grids.length) / grids.length;
  const panelH = H - 80;
  const body: string[] = [];
  grids.forEach((g, pi) => {
    const x0 = 20 + pi * (panelW + 16);
    const nx = g.ts.length;
    const ny = g.ys.length;
    const cw = panelW / nx;
    const ch = panelH / ny;
    const cellsSvg: string[] = [];
    for (let i = 0; i < nx; i += 1) {
      for (let j = 0; j < ny; j += 1) {
        cellsSvg.push(el("rect", {
          x: x0 + i * cw,
          y: 40 + panelH - (j + 1) * ch,
          width: cw + 0.3,
          height: ch + 0.3,
          fill: diverging(g.grid[i][j] / vmax),
        }));
      }
    }
    body.push(el("g", { class: `panel-${g.name}` }, cellsSvg));
    body.push(text(g.name, {
      x: x0 + panelW / 2, y: 24, "text-anchor": "middle", "font-size": 13,
    }));
  });
  // shared color bar
  const barY = H - 26;
  for (let i = 0; i < 60; i += 1) {
    body.push(el("rect", {
      x: 120 + i * 6, y: barY, width: 6.4, height: 10,
      fill: diverging((i / 59) * 2 - 1), class: "colorbar",
    }));
  }
  body.push(text(`-${formatTick(vmax)}`, { x: 112, y: barY + 9, "text-anchor": "end" }));
  body.push(text(`+${formatTick(vmax)}`, { x: 488, y: barY + 9 }));
  return svgDoc(W, H, body);
}

function diverging(u: number): string {
  const v = Math.max(-1, Math.min(1, u));
  const t = (v + 1) / 2;
  const mix = (a: number, b: number, s: number) => Math.round(a + (b - a) * s);
  let r: number;
  let g: number;
  let b: number;
  if (t < 0.5) {
    const s = t / 0.5;
    [r, g, b] = [mix(33, 247, s), mix(102, 247, s), mix(172, 247, s)];
  } else {
    const s = (t - 0.5) / 0.5;
    [r, g, b] = [mix(247, 178, s), mix(247, 24, s), mix(247, 43, s)];
  }
  return `rgb(${r},${g},${b})`;
}
