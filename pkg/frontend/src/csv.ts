/** CSV tables as written by the solver CLI: `#` comment header, then a
 * column row and numeric/string cells. */

import { readFileSync } from "node:fs";

export interface Table {
  columns: string[];
  cells: string[][];
  meta: string[];
}

export class SchemaError extends Error {}

export function parseCsv(text: string): Table {
  const meta: string[] = [];
  const body: string[] = [];
  for (const line of text.split(/\r?\n/)) {
    if (line.startsWith("#")) meta.push(line);
    else if (line.trim() !== "") body.push(line);
  }
  if (body.length === 0) throw new SchemaError("empty CSV body");
  const columns = body[0].split(",").map((c) => c.trim());
  const cells = body.slice(1).map((ln) => ln.split(",").map((c) => c.trim()));
  return { columns, cells, meta };
}

export function readTable(path: string): Table {
  return parseCsv(readFileSync(path, "utf8"));
}

export function requireColumns(t: Table, needed: string[], what: string): void {
  for (const c of needed) {
    if (!t.columns.includes(c)) {
      throw new SchemaError(
        `${what}: missing column '${c}' (found: ${t.columns.join(", ")})`,
      );
    }
  }
}

export function column(t: Table, name: string): string[] {
  const i = t.columns.indexOf(name);
  if (i < 0) throw new SchemaError(`missing column '${name}'`);
  return t.cells.map((row) => row[i] ?? "");
}

export function numericColumn(t: Table, name: string): number[] {
  return column(t, name).map((v) => Number(v));
}
