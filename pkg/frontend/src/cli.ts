#!/usr/bin/env node
/**
 * Figure renderer for qsvlab experiment outputs.
 *
 * Usage:
 *   qsvlab-plots render --spec spec.json
 *
 * The spec file holds {"kind": ..., "inputs": [paths], "out": "figure.svg"}.
 * Exit codes: 0 written, 2 invalid spec or input.
 */

import { mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { ValidationError, render } from "./figures.js";
import { figureSpecSchema } from "./schemas.js";

export function main(argv: string[]): number {
  if (argv.length !== 3 || argv[0] !== "render" || argv[1] !== "--spec") {
    console.error("usage: qsvlab-plots render --spec spec.json");
    return 2;
  }
  try {
    const raw = JSON.parse(readFileSync(argv[2]!, "utf-8"));
    const parsed = figureSpecSchema.safeParse(raw);
    if (!parsed.success) {
      throw new ValidationError(`invalid figure spec: ${parsed.error.message}`);
    }
    const svg = render(parsed.data);
    mkdirSync(dirname(parsed.data.out), { recursive: true });
    writeFileSync(parsed.data.out, svg, "utf-8");
    console.log(parsed.data.out);
    return 0;
  } catch (err) {
    const missing = (err as NodeJS.ErrnoException).code === "ENOENT";
    if (err instanceof ValidationError || err instanceof SyntaxError || missing) {
      console.error(`error: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
