/**
 * Validators for the experiment outputs this tool consumes.
 *
 * These mirror the producing package's published JSON schemas; a file
 * that fails validation is refused before any drawing happens.
 */

import { z } from "zod";

export const concentrationReportSchema = z
  .object({
    n: z.number().int().min(2),
    kappa: z.number().gt(1),
    trials: z.number().int().min(1),
    values: z.array(z.number().min(0)).min(1),
    tail_count: z.number().int().min(0),
    empirical_tail: z.number().min(0).max(1),
    bound_value: z.number().positive(),
    seed: z.number().int(),
  })
  .strict();

export const adversaryCertificateSchema = z
  .object({
    kappa: z.number().min(1),
    inverse_norm: z.number().min(0),
    v: z.number().min(0),
    theta: z.number().min(0),
    dist_bb: z.number().min(0),
    dist_xx: z.number().min(0).max(1),
    sin_theta: z.number().min(0).max(1),
    q0_exact: z.number().int().min(0),
    q0_floor13: z.number().int().min(0),
    bounds_ok: z.boolean(),
  })
  .strict();

export const verifyReportSchema = z
  .object({
    kappa: z.number().min(1),
    n: z.number().int().min(2),
    d: z.number().min(0).max(1),
    kind: z.enum(["pure", "mixed-orthogonal"]),
    eps_solver: z.number().min(0).max(0.01),
    trials: z.number().int().min(1),
    seed: z.number().int(),
    accept_count: z.number().int().min(0),
    accept_rate: z.number().min(0).max(1),
    p_r1_exact: z.number().min(0).max(1),
    binomial_sigma: z.number().min(0),
    within_3_sigma: z.boolean(),
  })
  .strict();

export interface CostGapRow {
  kappa: number;
  gap: number;
  lambda_ss_sq: number;
  cmin: number;
  shots: number;
}

export const COST_GAP_HEADER = ["kappa", "gap", "lambda_ss_sq", "cmin", "shots"];

export type ConcentrationReport = z.infer<typeof concentrationReportSchema>;
export type AdversaryCertificate = z.infer<typeof adversaryCertificateSchema>;
export type VerifyReport = z.infer<typeof verifyReportSchema>;

export const figureSpecSchema = z
  .object({
    kind: z.enum([
      "concentration-tail",
      "q0-vs-kappa",
      "accept-rate",
      "shots-vs-kappa",
      "gap-vs-kappa",
    ]),
    inputs: z.array(z.string()).min(1),
    out: z.string().endsWith(".svg", "only SVG output is supported"),
  })
  .strict();

export type FigureSpec = z.infer<typeof figureSpecSchema>;
