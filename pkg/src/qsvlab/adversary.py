"""Adversarial companion instances and certified query lower bounds.

For any instance (spectrum, b) whose spectrum attains |lambda| = 1/kappa,
a companion right-hand side b' is constructed so that the two solutions
are provably far apart (trace distance > 5/8) while b and b' are close
(||b - b'|| = O(inverse_norm / kappa)). The rotation angle between b and
b' then certifies a floor lower bound on the number of state-preparation
unitaries any verifier must use. Every inequality in the chain is checked
numerically at build time and the pair is rejected if any fails.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instances import QUERY_BOUND_DIVISOR, QLSPInstance, StateVector, inverse_norm, solve
from .linalg import pure_trace_distance
from .tolerances import TOL

# ||b - b'|| <= BB_BOUND_COEFF * inverse_norm / kappa.
BB_BOUND_COEFF = 2.0 * math.sqrt(26.0) / 5.0
# Trace distance between the two solutions exceeds this for every pair.
MIN_SOLUTION_DISTANCE = 5.0 / 8.0
# Perturbation direction: -1 on the minimal eigenvector, +1/5 orthogonal to it.
PERP_FRACTION = 1.0 / 5.0
# q0 = floor(1 / (6 sin theta)).
Q0_DIVISOR = 6.0


@dataclass(frozen=True)
class AdversarialPair:
    """Companion instance plus every certified metric of the construction."""

    base: QLSPInstance
    b_prime: StateVector
    x_prime: StateVector
    v: float
    v_perp: float
    theta: float
    dist_bb: float
    dist_xx: float
    sin_theta: float
    q0_exact: int
    q0_floor13: int
    min_eig_sign: int

    @property
    def companion(self) -> QLSPInstance:
        return QLSPInstance(self.base.spectrum, self.b_prime, self.base.epsilon)


def _minimal_eigvector_index(inst: QLSPInstance) -> int:
    spec = inst.spectrum
    j = spec.min_index()
    if abs(abs(spec.eigvals[j]) - 1.0 / spec.kappa) > TOL.norm:
        raise ValueError(
            "spectrum has no eigenvalue of magnitude 1/kappa "
            f"(closest magnitude {abs(spec.eigvals[j])})"
        )
    return j


def decompose_b(
    inst: QLSPInstance,
) -> tuple[float, float, StateVector, StateVector]:
    """Split b into its minimal-eigenvector component and the rest.

    Returns (v, v_perp, comp_min, comp_perp) with b = v*comp_min +
    v_perp*comp_perp, v >= 0 and v_perp >= 0. comp_min is the minimal
    eigenvector carrying b's phase on that index (so v is real
    nonnegative); comp_perp is unit and orthogonal to comp_min. When
    v = 1 the orthogonal direction is a deterministic fill: the
    lowest-index basis vector orthogonal to comp_min, Gram-Schmidt
    corrected.
    """
    j = _minimal_eigvector_index(inst)
    n = inst.dim
    amp = inst.b.amps[j]
    v = float(abs(amp))
    phase = amp / abs(amp) if v > 0.0 else 1.0 + 0.0j
    comp_min_amps = np.zeros(n, dtype=np.complex128)
    comp_min_amps[j] = phase
    residual = inst.b.amps - v * comp_min_amps
    v_perp = float(np.linalg.norm(residual))
    if v_perp > TOL.norm:
        comp_perp = StateVector(residual / v_perp)
    else:
        v_perp = 0.0
        i = 0 if j != 0 else 1
        fill = np.zeros(n, dtype=np.complex128)
        fill[i] = 1.0
        fill -= comp_min_amps * np.vdot(comp_min_amps, fill)
        comp_perp = StateVector(fill)
    comp_min = StateVector(comp_min_amps)
    recon = v * comp_min.amps + v_perp * comp_perp.amps
    if np.linalg.norm(recon - inst.b.amps) > TOL.norm:
        raise AssertionError("decomposition does not reconstruct b")
    return v, v_perp, comp_min, comp_perp


def rotation_angle(b: StateVector, b_prime: StateVector) -> float:
    """Angle theta = arccos(<b'|b>) of the planar rotation taking b to b'.

    The construction guarantees a real overlap in [0, 1]; a residual
    imaginary part above 1e-8 signals a pair built outside build_pair.
    """
    ov = np.vdot(b_prime.amps, b.amps)
    if abs(ov.imag) > 1e-8:
        raise ValueError(f"overlap has imaginary part {ov.imag}; not a constructed pair")
    return float(math.acos(min(1.0, max(-1.0, ov.real))))


def controlled_unitary_distance(theta: float) -> float:
    """Distinguishability of the two controlled preparation unitaries: sin theta.

    Closed form for the controlled planar rotation by theta; the best
    distinguishing input meets it exactly, so values derived from it
    are certified lower bounds.
    """
    if not 0.0 <= theta <= math.pi / 2 + TOL.norm:
        raise ValueError(f"theta must lie in [0, pi/2], got {theta}")
    return math.sin(theta)


def q0_from_angle(theta: float) -> int | None:
    """floor(1 / (6 sin theta)); None (unbounded) for theta == 0."""
    s = controlled_unitary_distance(theta)
    if s <= 0.0:
        return None
    return int(math.floor(1.0 / (Q0_DIVISOR * s)))


def q0_exact(pair: AdversarialPair) -> int:
    """Query floor certified by the pair's rotation angle."""
    q0 = q0_from_angle(pair.theta)
    if q0 is None:
        raise ValueError("identical instances: query count unbounded")
    return q0


def build_pair(inst: QLSPInstance) -> AdversarialPair:
    """Construct and certify the companion instance for inst.

    The shifted right-hand side is
        b~ = b + (inverse_norm/kappa) * (-comp_min + (1/5) comp_perp),
    where comp_min is the minimal-|eigenvalue| eigenvector (either sign:
    applying the inverse matrix flips the sign of both this perturbation
    component and the solution's own minimal component, so one formula
    covers both). All pair invariants are verified before returning.
    """
    v, v_perp, comp_min, comp_perp = decompose_b(inst)
    kappa = inst.kappa
    r = inverse_norm(inst)
    delta = r / kappa
    shifted = inst.b.amps + delta * (-comp_min.amps + PERP_FRACTION * comp_perp.amps)
    norm_shifted = float(np.linalg.norm(shifted))
    if norm_shifted <= TOL.norm:
        raise AssertionError("shifted right-hand side vanished")
    b_prime = StateVector(shifted)
    companion = QLSPInstance(inst.spectrum, b_prime, inst.epsilon)
    x_prime = solve(companion)

    theta = rotation_angle(inst.b, b_prime)
    sin_theta = controlled_unitary_distance(theta)
    dist_bb = float(np.linalg.norm(inst.b.amps - b_prime.amps))
    dist_xx = pure_trace_distance(solve(inst), x_prime)
    q0 = q0_from_angle(theta)
    if q0 is None:
        raise AssertionError("constructed pair has theta == 0")
    j = _minimal_eigvector_index(inst)
    pair = AdversarialPair(
        base=inst,
        b_prime=b_prime,
        x_prime=x_prime,
        v=v,
        v_perp=v_perp,
        theta=theta,
        dist_bb=dist_bb,
        dist_xx=dist_xx,
        sin_theta=sin_theta,
        q0_exact=q0,
        q0_floor13=int(math.floor(kappa / (QUERY_BOUND_DIVISOR * r))),
        min_eig_sign=int(np.sign(inst.spectrum.eigvals[j])),
    )
    _certify(pair)
    return pair


def _certify(pair: AdversarialPair) -> None:
    """Re-verify the full bound chain; raise on any violation."""
    checks = certification_checks(pair)
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise AssertionError(f"pair certification failed: {failed}")


def certification_checks(pair: AdversarialPair) -> dict[str, bool]:
    """Individual certified inequalities of the construction, by name."""
    r = inverse_norm(pair.base)
    kappa = pair.base.kappa
    tol = TOL.equal
    return {
        "weights_unit": abs(pair.v**2 + pair.v_perp**2 - 1.0) <= TOL.norm * 10,
        "theta_range": -TOL.norm <= pair.theta <= math.pi / 2 + TOL.norm,
        "solution_distance": pair.dist_xx > MIN_SOLUTION_DISTANCE,
        "solution_distance_extremal": pair.dist_xx >= math.sqrt(25.0 / 61.0) - tol,
        "sin_le_dist_bb": pair.sin_theta <= pair.dist_bb + tol,
        "dist_bb_bound": pair.dist_bb <= BB_BOUND_COEFF * r / kappa + tol,
        "q0_dominates_floor13": pair.q0_exact >= pair.q0_floor13,
        "floor_correct": (
            pair.q0_exact * Q0_DIVISOR * pair.sin_theta <= 1.0 + tol
            and 1.0 < (pair.q0_exact + 1) * Q0_DIVISOR * pair.sin_theta + tol
        ),
    }


def certificate(pair: AdversarialPair) -> dict:
    """JSON-serializable certificate of the pair and its bound chain."""
    checks = certification_checks(pair)
    return {
        "kappa": pair.base.kappa,
        "inverse_norm": inverse_norm(pair.base),
        "v": pair.v,
        "theta": pair.theta,
        "dist_bb": pair.dist_bb,
        "dist_xx": pair.dist_xx,
        "sin_theta": pair.sin_theta,
        "q0_exact": pair.q0_exact,
        "q0_floor13": pair.q0_floor13,
        "bounds_ok": all(checks.values()),
    }
