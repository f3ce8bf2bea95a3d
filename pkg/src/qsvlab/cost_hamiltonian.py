"""Cost operator whose unique zero-energy state is the solution.

H applies the system matrix, projects out the right-hand side, and
applies the matrix again. It is positive semidefinite, annihilates the
solution state, and its spectral gap is bounded by the square of the
second-smallest eigenvalue magnitude. A cost measurement resolving the
gap-scaled threshold certifies closeness to the solution; the shot count
needed against unit-variance sampling noise scales as the inverse square
of that threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instances import QLSPInstance, Spectrum, solve
from .linalg import DensityState, basis_state

DENSE_DIM_LIMIT = 2048
ZERO_THRESHOLD = 1e-10
NEAR_DEGENERATE_LO = 1e-12
NEAR_DEGENERATE_HI = 1e-8
# Cost threshold certifying distance <= 1/8: gap * (1/8)^2.
DISTANCE_TARGET = 1.0 / 8.0


@dataclass(frozen=True)
class GapReport:
    """Spectral summary of the cost operator for one instance."""

    gap: float
    lambda_ss: float
    bound: float               # lambda_ss**2
    ground_energy: float
    ground_overlap_with_x: float
    near_degenerate: bool      # an eigenvalue fell in (1e-12, 1e-8)


def gap_probe_instance(kappa: float, n: int = 8) -> QLSPInstance:
    """Instance with a doubly attained minimal eigenvalue, so gap == 1/kappa^2.

    The spectrum carries 1 and two copies of 1/kappa (remaining slots
    filled evenly strictly inside (1/kappa, 1)); b sits on the unit
    eigenvalue, making the cost operator diagonal with gap exactly
    lambda_ss^2 = 1/kappa^2. Used for scaling sweeps.
    """
    if n < 3:
        raise ValueError(f"need n >= 3 for a double minimum, got {n}")
    if kappa <= 1.0:
        raise ValueError(f"need kappa > 1, got {kappa}")
    fill = np.linspace(1.0 / kappa, 1.0, n - 1)[1:-1]
    eigvals = np.concatenate(([1.0, 1.0 / kappa, 1.0 / kappa], fill))
    return QLSPInstance(Spectrum(eigvals, kappa), basis_state(n, 0))


def apply_cost_operator(inst: QLSPInstance, vec: np.ndarray) -> np.ndarray:
    """Matrix-free application: A (Av - b <b|Av>). Accepts unnormalized input."""
    v = np.asarray(vec, dtype=np.complex128)
    if v.shape != (inst.dim,):
        raise ValueError(f"dimension mismatch: {v.shape} vs ({inst.dim},)")
    lam = inst.spectrum.eigvals
    b = inst.b.amps
    av = lam * v
    av = av - b * np.vdot(b, av)
    return lam * av


def cost(inst: QLSPInstance, rho: DensityState) -> float:
    """Ensemble cost sum_i w_i <psi_i|H|psi_i>, computed as projected norms (>= 0)."""
    if rho.dim != inst.dim:
        raise ValueError(f"dimension mismatch: {rho.dim} vs {inst.dim}")
    lam = inst.spectrum.eigvals
    b = inst.b.amps
    total = 0.0
    for w, psi in rho.ensemble:
        av = lam * psi.amps
        av = av - b * np.vdot(b, av)
        total += w * float(np.real(np.vdot(av, av)))
    return total


def dense_cost_matrix(inst: QLSPInstance) -> np.ndarray:
    """Materialized operator diag(lam^2) - u u^dagger with u = lam * b."""
    if inst.dim > DENSE_DIM_LIMIT:
        raise ValueError(f"dimension {inst.dim} exceeds dense budget {DENSE_DIM_LIMIT}")
    lam = inst.spectrum.eigvals
    u = lam * inst.b.amps
    return np.diag(lam.astype(np.complex128) ** 2) - np.outer(u, u.conj())


def spectral_gap(inst: QLSPInstance) -> GapReport:
    """Full spectrum of the cost operator and its certified gap bound."""
    h = dense_cost_matrix(inst)
    eig, vecs = np.linalg.eigh(h)
    ground_energy = float(eig[0])
    nonzero = eig[eig > ZERO_THRESHOLD]
    if nonzero.size == 0:
        raise ValueError("no nonzero eigenvalue above threshold; cannot define a gap")
    gap = float(nonzero[0])
    near = bool(np.any((eig > NEAR_DEGENERATE_LO) & (eig < NEAR_DEGENERATE_HI)))
    x = solve(inst)
    overlap = float(abs(np.vdot(x.amps, vecs[:, 0])) ** 2)
    mags = np.sort(np.abs(inst.spectrum.eigvals))
    lambda_ss = float(mags[1])
    if not -ZERO_THRESHOLD <= ground_energy <= ZERO_THRESHOLD:
        raise AssertionError(f"ground energy {ground_energy} not at zero")
    if int(np.sum(eig <= ZERO_THRESHOLD)) != 1:
        raise AssertionError("zero eigenvalue is not unique")
    if overlap < 1.0 - 1e-8:
        raise AssertionError(f"ground state overlaps solution only {overlap}")
    if gap > lambda_ss**2 + ZERO_THRESHOLD:
        raise AssertionError(f"gap {gap} exceeds bound {lambda_ss**2}")
    return GapReport(
        gap=gap,
        lambda_ss=lambda_ss,
        bound=lambda_ss**2,
        ground_energy=ground_energy,
        ground_overlap_with_x=overlap,
        near_degenerate=near,
    )


def cmin_estimate(inst: QLSPInstance, report: GapReport | None = None) -> float:
    """Cost threshold gap/64 below which the state is within 1/8 of the solution."""
    if report is None:
        report = spectral_gap(inst)
    if report.gap <= ZERO_THRESHOLD:
        raise ValueError(f"gap {report.gap} below zero threshold")
    return report.gap * DISTANCE_TARGET**2


def shots_to_resolve(
    inst: QLSPInstance, confidence_z: float, report: GapReport | None = None
) -> int:
    """ceil(z^2 / cmin^2) with worst-case unit single-shot variance."""
    if confidence_z <= 0.0:
        raise ValueError(f"need confidence_z > 0, got {confidence_z}")
    cmin = cmin_estimate(inst, report)
    return int(math.ceil(confidence_z**2 / cmin**2))


def gap_report_json_dict(report: GapReport) -> dict:
    return {
        "gap": report.gap,
        "lambda_ss": report.lambda_ss,
        "bound": report.bound,
        "ground_energy": report.ground_energy,
        "ground_overlap_with_x": report.ground_overlap_with_x,
        "near_degenerate": report.near_degenerate,
    }
