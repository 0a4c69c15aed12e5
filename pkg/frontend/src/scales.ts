/** Linear and log axis scales with tick generation. */

export interface Scale {
  (v: number): number;
  domain: [number, number];
  range: [number, number];
  ticks: number[];
}

function mk(f: (v: number) => number, domain: [number, number],
            range: [number, number], ticks: number[]): Scale {
  const s = f as Scale;
  s.domain = domain;
  s.range = range;
  s.ticks = ticks;
  return s;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const f = (v: number) => r0 + ((v - d0) / (d1 - d0)) * (r1 - r0);
  return mk(f, domain, range, linearTicks(d0, d1));
}

export function logScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale needs positive domain");
  const [r0, r1] = range;
  const l0 = Math.log10(d0);
  const l1 = Math.log10(d1);
  const f = (v: number) => r0 + ((Math.log10(v) - l0) / (l1 - l0)) * (r1 - r0);
  return mk(f, domain, range, logTicks(d0, d1));
}

export function linearTicks(lo: number, hi: number, n = 6): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const raw = span / n;
  const mag = 10 ** Math.floor(Math.log10(raw));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((s) => span / s <= n) ?? mag * 10;
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + 1e-12 * span; v += step) out.push(Number(v.toPrecision(12)));
  return out;
}

export function logTicks(lo: number, hi: number): number[] {
  const out: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-9); 10 ** e <= hi * (1 + 1e-9); e += 1) {
    out.push(10 ** e);
  }
  return out.length >= 2 ? out : [lo, hi];
}

export function formatTick(v: number): string {
  if (v === 0) return "0";
  const e = Math.log10(Math.abs(v));
  if (e >= -3 && e < 4) return Number(v.toPrecision(4)).toString();
  const exp = Math.floor(e + 1e-9);
  const mant = v / 10 ** exp;
  return Math.abs(mant - 1) < 1e-9 ? `1e${exp}` : `${Number(mant.toPrecision(2))}e${exp}`;
}
