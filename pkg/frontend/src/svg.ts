/** Minimal string-based SVG construction. */

export type Attrs = Record<string, string | number>;

export function el(name: string, attrs: Attrs = {}, children: string[] = []): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${String(v)}"`)
    .join("");
  if (children.length === 0) return `<${name}${a}/>`;
  return `<${name}${a}>${children.join("")}</${name}>`;
}

export function text(content: string, attrs: Attrs = {}): string {
  const a = Object.entries(attrs)
    .map(([k, v]) => ` ${k}="${String(v)}"`)
    .join("");
  return `<text${a}>${escapeXml(content)}</text>`;
}

export function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function polyline(points: Array<[number, number]>, attrs: Attrs = {}): string {
  const pts = points.map(([x, y]) => `${round(x)},${round(y)}`).join(" ");
  return el("polyline", { points: pts, fill: "none", ...attrs });
}

export function document(width: number, height: number, body: string[]): string {
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" ` +
      `viewBox="0 0 ${width} ${height}" font-family="sans-serif" font-size="11">`,
    el("rect", { x: 0, y: 0, width, height, fill: "white" }),
    ...body,
    "</svg>",
  ].join("\n");
}

function round(v: number): number {
  return Math.round(v * 100) / 100;
}

export const SERIES_COLORS = ["#1f6fb4", "#d62728", "#7a2fb8", "#2c8a4b"];
