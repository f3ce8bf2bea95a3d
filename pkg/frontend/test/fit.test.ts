import { describe, expect, it } from "vitest";

import { leastSquares, logLogSlope } from "../src/fit.js";

describe("leastSquares", () => {
  it("recovers an exact line", () => {
    const fit = leastSquares([1, 2, 3, 4], [3, 5, 7, 9]);
    expect(fit.slope).toBeCloseTo(2, 12);
    expect(fit.intercept).toBeCloseTo(1, 12);
  });

  it("rejects degenerate inputs", () => {
    expect(() => leastSquares([1], [2])).toThrow();
    expect(() => leastSquares([2, 2], [1, 3])).toThrow();
  });
});

describe("logLogSlope", () => {
  it("finds the power-law exponent exactly on exact data", () => {
    const kappas = [4, 8, 16, 32];
    const shots = kappas.map((k) => 4096 * k ** 4);
    expect(logLogSlope(kappas, shots).slope).toBeCloseTo(4, 12);
  });

  it("rejects non-positive data", () => {
    expect(() => logLogSlope([1, 2], [0, 1])).toThrow();
  });
});
