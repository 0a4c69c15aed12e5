/** Figure fidelity on real solver outputs (the fixtures are CSVs produced
 * by the solver CLI on the convergence/near-field reference runs). */

import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { column, numericColumn, parseCsv, SchemaError } from "../src/csv.js";
import { toPrecision2 } from "../src/fit.js";
import { renderConverge, renderFields, renderOmega, renderProfile }
  from "../src/figures.js";

const FIX = join(dirname(fileURLToPath(import.meta.url)), "fixtures");

const read = (rel: string) => parseCsv(readFileSync(join(FIX, rel), "utf8"));

describe("converge figure", () => {
  const errors = read("converge/errors.csv");
  const slopes = read("converge/slopes.csv");
  const svg = renderConverge(errors, slopes);

  it("draws three series", () => {
    for (const order of [0, 1, 2]) {
      expect(svg).toContain(`series order-${order}`);
    }
    expect((svg.match(/slope-annotation/g) ?? []).length).toBe(3);
  });

  it("plots monotone series", () => {
    const xs = numericColumn(errors, "sqrt_eta");
    const errv = numericColumn(errors, "err_total");
    const orders = numericColumn(errors, "order");
    const status = column(errors, "status");
    for (const order of [0, 1, 2]) {
      const pts = xs
        .map((x, i) => ({ x, e: errv[i], ok: status[i] === "ok", o: orders[i] }))
        .filter((p) => p.o === order && p.ok)
        .sort((a, b) => a.x - b.x);
      for (let i = 1; i < pts.length; i += 1) {
        expect(pts[i].e).toBeGreaterThan(pts[i - 1].e);
      }
    }
  });

  it("annotates slopes matching the fitted values to 2 significant digits", () => {
    const so = numericColumn(slopes, "order");
    const sv = numericColumn(slopes, "slope");
    so.forEach((order, i) => {
      const expected = `slope ${toPrecision2(sv[i])}`;
      expect(svg).toContain(expected);
    });
  });

  it("is a well-formed standalone svg", () => {
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.endsWith("</svg>")).toBe(true);
    expect(svg).toContain("sqrt(eta)");
  });
});

describe("profile figure", () => {
  const profile = read("nearfield/profile.csv");
  const svg = renderProfile(profile, "im");

  it("has the four curves in both panels", () => {
    for (const cls of ["curve-exact", "curve-far-field", "curve-near-field",
      "curve-far-near"]) {
      expect((svg.match(new RegExp(cls, "g")) ?? []).length).toBeGreaterThanOrEqual(2);
    }
  });

  it("far field is flat through the layer while exact drops to no slip", () => {
    const coord = numericColumn(profile, "coord");
    const far = numericColumn(profile, "im_far");
    const exact = numericColumn(profile, "im_exact");
    const span = Math.abs(coord[coord.length - 1] - coord[0]);
    const layer = coord
      .map((c, i) => ({ s: Math.abs(c - coord[0]), i }))
      .filter((p) => p.s <= 0.02 * span);
    const farVals = layer.map((p) => far[p.i]);
    const scale = Math.max(...far.map(Math.abs));
    const farSwing = Math.max(...farVals) - Math.min(...farVals);
    expect(farSwing).toBeLessThan(0.2 * scale);          // flat through the layer
    expect(Math.abs(exact[0])).toBeLessThan(1e-6 * scale); // no-slip at the wall
    expect(Math.abs(far[0])).toBeGreaterThan(1e-3 * scale); // far field slips
  });

  it("far + near tracks the exact solution to the wall", () => {
    const exact = numericColumn(profile, "im_exact");
    const sum = numericColumn(profile, "im_sum");
    const scale = Math.max(...exact.map(Math.abs));
    const worst = Math.max(...exact.map((e, i) => Math.abs(e - sum[i])));
    expect(worst).toBeLessThan(0.01 * scale);
  });
});

describe("omega figure", () => {
  const errors = read("omega/errors.csv");
  const svg = renderOmega(errors);

  it("draws eigenfrequency gridlines", () => {
    const lines = (svg.match(/eigenfrequency/g) ?? []).length;
    expect(lines).toBeGreaterThanOrEqual(4); // 9.42, 11.33, 12.57, 12.95, 14.05
  });

  it("draws the model series", () => {
    for (const order of [1, 2]) {
      expect(svg).toContain(`series order-${order}`);
    }
  });
});

describe("fields figure", () => {
  const names = ["exact", "order0", "order1", "order2"];
  const svg = renderFields(names.map((name) => ({
    name,
    table: read(`fields/fields_${name}.csv`),
  })));

  it("renders one panel per input with a shared colorbar", () => {
    for (const name of names) {
      expect(svg).toContain(`panel-${name}`);
    }
    expect(svg).toContain("colorbar");
  });

  it("rejects schema mismatches by name", () => {
    expect(() => renderFields([{ name: "bad", table: read("converge/errors.csv") }]))
      .toThrowError(/missing column 't'/);
    expect(() => renderFields([{ name: "bad", table: read("converge/errors.csv") }]))
      .toThrowError(SchemaError);
  });
});
