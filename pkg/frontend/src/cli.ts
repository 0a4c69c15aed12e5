#!/usr/bin/env node
/** Render solver CSV outputs to SVG figures.
 *
 * Usage:
 *   plot --kind converge --in errors.csv [slopes.csv] --out fig.svg
 *   plot --kind omega    --in errors.csv --out fig.svg
 *   plot --kind profile  --in profile.csv [--field re|im] --out fig.svg
 *   plot --kind fields   --in fields_exact.csv fields_order2.csv ... --out fig.svg
 */

import { writeFileSync } from "node:fs";
import { basename } from "node:path";
import { parseArgs } from "node:util";

import { readTable, SchemaError } from "./csv.js";
import { renderConverge, renderFields, renderOmega, renderProfile } from "./figures.js";

export function run(argv: string[]): number {
  let args;
  try {
    args = parseArgs({
      args: argv,
      options: {
        kind: { type: "string" },
        in: { type: "string", multiple: true },
        out: { type: "string" },
        field: { type: "string", default: "im" },
      },
      allowPositionals: true,
    });
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
  const kind = args.values.kind;
  const inputs = [...(args.values.in ?? []), ...args.positionals];
  const out = args.values.out;
  if (!kind || !out || inputs.length === 0) {
    console.error("error: --kind, --in and --out are required");
    return 1;
  }
  try {
    let svg: string;
    switch (kind) {
      case "converge": {
        const errors = readTable(inputs[0]);
        const slopes = inputs[1] ? readTable(inputs[1]) : undefined;
        svg = renderConverge(errors, slopes);
        break;
      }
      case "omega":
        svg = renderOmega(readTable(inputs[0]));
        break;
      case "profile": {
        const field = args.values.field === "re" ? "re" : "im";
        svg = renderProfile(readTable(inputs[0]), field);
        break;
      }
      case "fields": {
        const named = inputs.map((p) => ({
          name: basename(p).replace(/^fields_/, "").replace(/\.csv$/, ""),
          table: readTable(p),
        }));
        svg = renderFields(named);
        break;
      }
      default:
        console.error(`error: unknown kind '${kind}'`);
        return 1;
    }
    writeFileSync(out, svg);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`schema mismatch: ${err.message}`);
      return 1;
    }
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

const isMain = process.argv[1] !== undefined
  && import.meta.url.endsWith(basename(process.argv[1]));
if (isMain) {
  process.exit(run(process.argv.slice(2)));
}
