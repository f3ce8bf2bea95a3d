"""Copy-count lower bounds for prepare-and-measure verification.

When the verifier only consumes copies of the right-hand-side state, the
distinguishing resource is the trace distance between q-fold product
states, sqrt(1 - |<b|b'>|^(2q)). The resulting copy floor is
q0 = floor(1 / (36 (1 - |<b|b'>|^2))), which dominates
floor(susceptibility^2 / 150) for every constructed companion pair.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .adversary import AdversarialPair
from .instances import QLSPInstance, susceptibility
from .tolerances import TOL

PM_BOUND_DIVISOR = 150.0
PM_Q0_DIVISOR = 36.0
# distance_at_q0 never exceeds sqrt(q0 * 36^-1 ... ) = 1/6.
PM_DISTANCE_CAP = 1.0 / 6.0


@dataclass(frozen=True)
class PMCertificate:
    """Copy-bound certificate for one companion pair."""

    overlap: float
    q0_pm_exact: int | None       # None means unbounded (identical instances)
    q0_pm_floor150: int
    distance_at_q0: float | None


def tensor_power_distance(overlap: float, q: int) -> float:
    """Trace distance between q-fold products of states with given |overlap|."""
    if not 0.0 <= overlap <= 1.0 + TOL.norm:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    if q < 0:
        raise ValueError(f"need q >= 0, got {q}")
    return math.sqrt(max(0.0, 1.0 - min(1.0, overlap) ** (2 * q)))


def pm_q0(overlap: float) -> int | None:
    """floor(1 / (36 (1 - overlap^2))); None (unbounded) when overlap == 1."""
    if not 0.0 <= overlap <= 1.0 + TOL.norm:
        raise ValueError(f"overlap must lie in [0, 1], got {overlap}")
    gap = 1.0 - min(1.0, overlap) ** 2
    if gap <= TOL.degenerate:
        return None
    return int(math.floor(1.0 / (PM_Q0_DIVISOR * gap)))


def pm_lower_bound(inst: QLSPInstance) -> int:
    """floor(susceptibility^2 / 150): copy floor from the instance alone."""
    return int(math.floor(susceptibility(inst) ** 2 / PM_BOUND_DIVISOR))


def pm_certificate(pair: AdversarialPair) -> PMCertificate:
    """Assemble and verify the copy-bound certificate for a companion pair."""
    overlap = min(1.0, abs(math.cos(pair.theta)))
    q0 = pm_q0(overlap)
    floor150 = pm_lower_bound(pair.base)
    distance = None if q0 is None else tensor_power_distance(overlap, q0)
    if q0 is not None:
        if q0 < floor150:
            raise AssertionError(f"copy floor {q0} below instance floor {floor150}")
        if distance is not None and distance > PM_DISTANCE_CAP + TOL.norm:
            raise AssertionError(f"distance at q0 is {distance} > 1/6")
    return PMCertificate(
        overlap=overlap,
        q0_pm_exact=q0,
        q0_pm_floor150=floor150,
        distance_at_q0=distance,
    )


def certificate_json_dict(cert: PMCertificate) -> dict:
    return {
        "overlap": cert.overlap,
        "q0_pm_exact": "unbounded" if cert.q0_pm_exact is None else cert.q0_pm_exact,
        "q0_pm_floor150": cert.q0_pm_floor150,
        "distance_at_q0": cert.distance_at_q0,
    }
