import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { main } from "../src/cli.js";
import { render } from "../src/figures.js";
import { leastSquares } from "../src/fit.js";
import { parseCsv } from "../src/csv.js";
import { COST_GAP_HEADER, FigureSpec } from "../src/schemas.js";

const FIXTURES = join(__dirname, "..", "fixtures");

const fx = (name: string) => join(FIXTURES, name);

function extractMetadata(svg: string): any {
  const match = svg.match(/<metadata id="fit">(.*?)<\/metadata>/s);
  expect(match).not.toBeNull();
  const unescaped = match![1]!
    .replaceAll("&quot;", '"')
    .replaceAll("&lt;", "<")
    .replaceAll("&gt;", ">")
    .replaceAll("&amp;", "&");
  return JSON.parse(unescaped);
}

describe("all five figure kinds render from fixtures", () => {
  const specs: Array<[string, string[]]> = [
    ["concentration-tail", [
      fx("concentration-n256.json"), fx("concentration-n512.json"),
      fx("concentration-n1024.json"), fx("concentration-n2048.json"),
    ]],
    ["q0-vs-kappa", [
      fx("adversary-kappa10.json"), fx("adversary-kappa100.json"),
      fx("adversary-kappa1000.json"),
    ]],
    ["accept-rate", [
      fx("verify-d0.125.json"), fx("verify-d0.3.json"), fx("verify-d0.6.json"),
    ]],
    ["shots-vs-kappa", [fx("cost-gap.csv")]],
    ["gap-vs-kappa", [fx("cost-gap.csv")]],
  ];

  for (const [kind, inputs] of specs) {
    it(`renders ${kind}`, () => {
      const svg = render({ kind, inputs, out: "x.svg" } as FigureSpec);
      expect(svg).toContain("<svg");
      expect(svg).toContain("</svg>");
      expect(svg).toContain('<metadata id="fit">');
      // deterministic: no timestamps, identical on re-render
      expect(render({ kind, inputs, out: "x.svg" } as FigureSpec)).toBe(svg);
    });
  }
});

describe("shots-vs-kappa slope", () => {
  it("is 4.0 +- 0.1 on the fixture and matches an independent recomputation to 1e-9", () => {
    const svg = render({
      kind: "shots-vs-kappa",
      inputs: [fx("cost-gap.csv")],
      out: "x.svg",
    });
    const meta = extractMetadata(svg);
    expect(Math.abs(meta.slope - 4.0)).toBeLessThanOrEqual(0.1);

    // independent recomputation straight from the fixture
    const rows = parseCsv(readFileSync(fx("cost-gap.csv"), "utf-8"), COST_GAP_HEADER);
    const xs = rows.map((r) => Math.log(r[0]!));
    const ys = rows.map((r) => Math.log(r[4]!));
    const check = leastSquares(xs, ys);
    expect(Math.abs(meta.slope - check.slope)).toBeLessThanOrEqual(1e-9);
  });

  it("gap-vs-kappa slope is -2 and matches recomputation", () => {
    const svg = render({
      kind: "gap-vs-kappa",
      inputs: [fx("cost-gap.csv")],
      out: "x.svg",
    });
    const meta = extractMetadata(svg);
    expect(Math.abs(meta.slope + 2.0)).toBeLessThanOrEqual(0.1);
    const rows = parseCsv(readFileSync(fx("cost-gap.csv"), "utf-8"), COST_GAP_HEADER);
    const check = leastSquares(
      rows.map((r) => Math.log(r[0]!)),
      rows.map((r) => Math.log(r[1]!)),
    );
    expect(Math.abs(meta.slope - check.slope)).toBeLessThanOrEqual(1e-9);
  });
});

describe("validation", () => {
  it("refuses an empty CSV", () => {
    expect(() =>
      render({ kind: "shots-vs-kappa", inputs: [fx("malformed-empty.csv")], out: "x.svg" }),
    ).toThrow(/header mismatch|no data rows/);
  });

  it("refuses a wrong-header CSV", () => {
    expect(() =>
      render({ kind: "shots-vs-kappa", inputs: [fx("malformed-header.csv")], out: "x.svg" }),
    ).toThrow(/header mismatch/);
  });

  it("refuses a JSON report failing the schema", () => {
    expect(() =>
      render({ kind: "concentration-tail", inputs: [fx("malformed-report.json")], out: "x.svg" }),
    ).toThrow(/schema validation/);
  });

  it("refuses a missing input file", () => {
    expect(() =>
      render({ kind: "q0-vs-kappa", inputs: [fx("nope.json")], out: "x.svg" }),
    ).toThrow(/cannot read/);
  });
});

describe("cli", () => {
  it("renders a figure from a spec file and exits 0", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const out = join(dir, "shots.svg");
    const spec = { kind: "shots-vs-kappa", inputs: [fx("cost-gap.csv")], out };
    const specPath = join(dir, "spec.json");
    writeFileSync(specPath, JSON.stringify(spec));
    expect(main(["render", "--spec", specPath])).toBe(0);
    expect(readFileSync(out, "utf-8")).toContain("fitted slope");
  });

  it("exits 2 on a malformed fixture", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const spec = {
      kind: "shots-vs-kappa",
      inputs: [fx("malformed-empty.csv")],
      out: join(dir, "x.svg"),
    };
    const specPath = join(dir, "spec.json");
    writeFileSync(specPath, JSON.stringify(spec));
    expect(main(["render", "--spec", specPath])).toBe(2);
  });

  it("exits 2 on an unsupported kind or bad usage", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const specPath = join(dir, "spec.json");
    writeFileSync(
      specPath,
      JSON.stringify({ kind: "pie-chart", inputs: [fx("cost-gap.csv")], out: join(dir, "x.svg") }),
    );
    expect(main(["render", "--spec", specPath])).toBe(2);
    expect(main(["frobnicate"])).toBe(2);
    expect(main(["render", "--spec", join(dir, "missing.json")])).toBe(2);
  });

  it("rejects non-svg output paths", () => {
    const dir = mkdtempSync(join(tmpdir(), "plots-"));
    const specPath = join(dir, "spec.json");
    writeFileSync(
      specPath,
      JSON.stringify({ kind: "shots-vs-kappa", inputs: [fx("cost-gap.csv")], out: join(dir, "x.png") }),
    );
    expect(main(["render", "--spec", specPath])).toBe(2);
  });
});
