/**
 * The five figure kinds rendered from experiment outputs.
 *
 * Inputs are schema-validated before drawing; scaling figures fit a
 * least-squares slope on log-log axes, annotate it, and embed it plus
 * the fitted points in an SVG <metadata> block for independent
 * recomputation.
 */

import { readFileSync } from "node:fs";

import { parseCsv, ValidationError } from "./csv.js";
import { Fit, logLogSlope } from "./fit.js";
import {
  COST_GAP_HEADER,
  CostGapRow,
  FigureSpec,
  adversaryCertificateSchema,
  concentrationReportSchema,
  verifyReportSchema,
} from "./schemas.js";
import { Figure, linearScale, logScale, plotArea } from "./svg.js";

export { ValidationError };

function loadJson(path: string): unknown {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new ValidationError(`cannot read ${path}: ${(err as Error).message}`);
  }
  try {
    return JSON.parse(text);
  } catch {
    throw new ValidationError(`${path} is not valid JSON`);
  }
}

function loadValidated<T>(path: string, schema: { safeParse(v: unknown): { success: boolean; data?: T; error?: { message: string } } }): T {
  const parsed = schema.safeParse(loadJson(path));
  if (!parsed.success) {
    throw new ValidationError(`${path} failed schema validation: ${parsed.error?.message}`);
  }
  return parsed.data as T;
}

function loadCostGapCsv(path: string): CostGapRow[] {
  let text: string;
  try {
    text = readFileSync(path, "utf-8");
  } catch (err) {
    throw new ValidationError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const rows = parseCsv(text, COST_GAP_HEADER);
  return rows.map(([kappa, gap, lambda_ss_sq, cmin, shots]) => {
    if (kappa! <= 0 || gap! <= 0 || lambda_ss_sq! <= 0 || cmin! <= 0 || shots! <= 0) {
      throw new ValidationError(`non-positive entry in ${path}`);
    }
    return { kappa: kappa!, gap: gap!, lambda_ss_sq: lambda_ss_sq!, cmin: cmin!, shots: shots! };
  });
}

function byAscending<T>(items: T[], key: (item: T) => number): T[] {
  return [...items].sort((a, b) => key(a) - key(b));
}

export function renderConcentrationTail(inputs: string[]): string {
  const reports = byAscending(
    inputs.map((p) => loadValidated(p, concentrationReportSchema)),
    (r) => r.n / r.kappa,
  );
  const ratios = reports.map((r) => r.n / r.kappa);
  const area = plotArea();
  const x = logScale(Math.min(...ratios) / 1.3, Math.max(...ratios) * 1.3, area.x0, area.x1);
  const boundTop = Math.max(...reports.map((r) => r.bound_value));
  const y = linearScale(0, boundTop * 1.1, area.y0, area.y1);

  const fig = new Figure("Solution-norm tail probability vs N/kappa");
  fig.axes(x, y, "N / kappa (log)", "tail probability");
  const boundCurve: Array<[number, number]> = [];
  const lo = Math.min(...ratios) / 1.3;
  const hi = Math.max(...ratios) * 1.3;
  for (let i = 0; i <= 100; i++) {
    const ratio = lo * (hi / lo) ** (i / 100);
    boundCurve.push([x(ratio), y(Math.min(4 * Math.exp(-0.013 * ratio), boundTop * 1.1))]);
  }
  fig.polyline(boundCurve, "#c0392b", true);
  fig.dots(reports.map((r, i) => [x(ratios[i]!), y(r.empirical_tail)]), "#2c3e50");
  fig.legend([
    ["4 exp(-0.013 N/kappa)", "#c0392b"],
    ["empirical tail", "#2c3e50"],
  ]);
  fig.metadata({
    kind: "concentration-tail",
    points: reports.map((r, i) => [ratios[i], r.empirical_tail]),
    bounds: reports.map((r) => r.bound_value),
  });
  return fig.render();
}

export function renderQ0VsKappa(inputs: string[]): string {
  const certs = byAscending(
    inputs.map((p) => loadValidated(p, adversaryCertificateSchema)),
    (c) => c.kappa,
  );
  if (certs.some((c) => !c.bounds_ok)) {
    throw new ValidationError("certificate with bounds_ok=false refused");
  }
  const kappas = certs.map((c) => c.kappa);
  const q0s = certs.map((c) => Math.max(c.q0_exact, 1));
  const floors = certs.map((c) => Math.max(c.q0_floor13, 1));
  const area = plotArea();
  const x = logScale(Math.min(...kappas) / 1.3, Math.max(...kappas) * 1.3, area.x0, area.x1);
  const y = logScale(
    Math.min(...q0s, ...floors) / 1.5,
    Math.max(...q0s, ...floors) * 1.5,
    area.y0,
    area.y1,
  );
  const fit = logLogSlope(kappas, q0s);

  const fig = new Figure("Preparation-unitary floor vs condition number");
  fig.axes(x, y, "kappa (log)", "query floor (log)");
  fig.polyline(kappas.map((k, i) => [x(k), y(q0s[i]!)]), "#2c3e50");
  fig.dots(kappas.map((k, i) => [x(k), y(q0s[i]!)]), "#2c3e50");
  fig.polyline(kappas.map((k, i) => [x(k), y(floors[i]!)]), "#7f8c8d", true);
  fig.legend([
    ["q0 exact", "#2c3e50"],
    ["floor(kappa/13r)", "#7f8c8d"],
  ]);
  fig.label(area.x0 + 10, area.y1 + 14, `fitted slope ${fit.slope.toFixed(3)}`);
  fig.metadata({ kind: "q0-vs-kappa", slope: fit.slope, points: kappas.map((k, i) => [k, q0s[i]]) });
  return fig.render();
}

export function renderAcceptRate(inputs: string[]): string {
  const reports = byAscending(
    inputs.map((p) => loadValidated(p, verifyReportSchema)),
    (r) => r.d,
  );
  const area = plotArea();
  const x = linearScale(0, Math.max(...reports.map((r) => r.d)) * 1.15, area.x0, area.x1);
  const y = linearScale(0, 1, area.y0, area.y1);

  const fig = new Figure("Verifier accept rate vs candidate distance");
  fig.axes(x, y, "trace distance from solution", "accept rate");
  fig.polyline([[area.x0, y(2 / 3)], [area.x1, y(2 / 3)]], "#27ae60", true);
  fig.polyline([[area.x0, y(1 / 3)], [area.x1, y(1 / 3)]], "#c0392b", true);
  fig.dots(reports.map((r) => [x(r.d), y(r.accept_rate)]), "#2c3e50");
  fig.dots(reports.map((r) => [x(r.d), y(r.p_r1_exact)]), "#8e44ad", 2);
  fig.legend([
    ["accept threshold 2/3", "#27ae60"],
    ["reject threshold 1/3", "#c0392b"],
    ["empirical rate", "#2c3e50"],
    ["exact probability", "#8e44ad"],
  ]);
  fig.metadata({
    kind: "accept-rate",
    points: reports.map((r) => [r.d, r.accept_rate]),
    exact: reports.map((r) => [r.d, r.p_r1_exact]),
  });
  return fig.render();
}

function renderCostGapScaling(
  inputs: string[],
  field: "shots" | "gap",
  title: string,
  yLabel: string,
): string {
  if (inputs.length !== 1) {
    throw new ValidationError(`${field}-vs-kappa takes exactly one sweep CSV`);
  }
  const rows = byAscending(loadCostGapCsv(inputs[0]!), (r) => r.kappa);
  const kappas = rows.map((r) => r.kappa);
  const values = rows.map((r) => r[field]);
  const fit: Fit = logLogSlope(kappas, values);
  const area = plotArea();
  const x = logScale(Math.min(...kappas) / 1.3, Math.max(...kappas) * 1.3, area.x0, area.x1);
  const yLo = Math.min(...values);
  const yHi = Math.max(...values);
  const y = logScale(yLo / 2, yHi * 2, area.y0, area.y1);

  const fig = new Figure(title);
  fig.axes(x, y, "kappa (log)", yLabel);
  fig.polyline(kappas.map((k, i) => [x(k), y(values[i]!)]), "#2c3e50");
  fig.dots(kappas.map((k, i) => [x(k), y(values[i]!)]), "#2c3e50");
  if (field === "gap") {
    fig.polyline(kappas.map((k, i) => [x(k), y(rows[i]!.lambda_ss_sq)]), "#c0392b", true);
    fig.legend([
      ["gap", "#2c3e50"],
      ["lambda_ss^2 bound", "#c0392b"],
    ]);
  }
  fig.label(area.x0 + 10, area.y1 + 14, `fitted slope ${fit.slope.toFixed(3)}`);
  fig.metadata({ kind: `${field}-vs-kappa`, slope: fit.slope, points: kappas.map((k, i) => [k, values[i]]) });
  return fig.render();
}

export function render(spec: FigureSpec): string {
  switch (spec.kind) {
    case "concentration-tail":
      return renderConcentrationTail(spec.inputs);
    case "q0-vs-kappa":
      return renderQ0VsKappa(spec.inputs);
    case "accept-rate":
      return renderAcceptRate(spec.inputs);
    case "shots-vs-kappa":
      return renderCostGapScaling(
        spec.inputs,
        "shots",
        "Shots to resolve the cost threshold vs condition number",
        "shots (log)",
      );
    case "gap-vs-kappa":
      return renderCostGapScaling(
        spec.inputs,
        "gap",
        "Cost-operator gap vs condition number",
        "gap (log)",
      );
  }
}
