/** Log-log regression and the strip-torus eigenfrequency grid. */

export function fitLogSlope(x: number[], y: number[]): number {
  if (x.length < 2) throw new Error("need at least two samples to fit");
  const lx = x.map(Math.log);
  const ly = y.map(Math.log);
  const n = lx.length;
  const mx = lx.reduce((a, b) => a + b, 0) / n;
  const my = ly.reduce((a, b) => a + b, 0) / n;
  let num = 0;
  let den = 0;
  for (let i = 0; i < n; i += 1) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) ** 2;
  }
  return num / den;
}

/** Neumann eigenfrequencies pi*sqrt(k^2 + 4 m^2) of the unit strip torus. */
export function eigenfrequencies(lo: number, hi: number): number[] {
  const out = new Set<number>();
  const kmax = Math.ceil(hi / Math.PI) + 1;
  for (let k = 1; k <= kmax; k += 1) {
    for (let m = 0; ; m += 1) {
      const w = Math.PI * Math.sqrt(k * k + 4 * m * m);
      if (w > hi) break;
      if (w >= lo) out.add(Number(w.toFixed(12)));
    }
  }
  return [...out].sort((a, b) => a - b);
}

export function toPrecision2(v: number): string {
  return Number(v.toPrecision(2)).toString();
}
