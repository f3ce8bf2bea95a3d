/** Ordinary least squares for slope annotations on log-log figures. */

export interface Fit {
  slope: number;
  intercept: number;
}

export function leastSquares(xs: number[], ys: number[]): Fit {
  if (xs.length !== ys.length || xs.length < 2) {
    throw new Error(`need at least two matched points, got ${xs.length}/${ys.length}`);
  }
  const n = xs.length;
  const mx = xs.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let sxx = 0;
  let sxy = 0;
  for (let i = 0; i < n; i++) {
    const dx = xs[i]! - mx;
    sxx += dx * dx;
    sxy += dx * (ys[i]! - my);
  }
  if (sxx === 0) {
    throw new Error("degenerate fit: all x values identical");
  }
  const slope = sxy / sxx;
  return { slope, intercept: my - slope * mx };
}

export function logLogSlope(xs: number[], ys: number[]): Fit {
  if (xs.some((x) => x <= 0) || ys.some((y) => y <= 0)) {
    throw new Error("log-log fit needs strictly positive data");
  }
  return leastSquares(xs.map(Math.log), ys.map(Math.log));
}
