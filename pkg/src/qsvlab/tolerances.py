"""Global numerical tolerance constants, fixed in one place."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    norm: float = 1e-12       # unit-norm / weight-sum validation
    equal: float = 1e-10      # equality assertions and certified inequalities
    degenerate: float = 1e-14 # sentinel cutoffs (e.g. overlap == 1)


TOL = Tolerances()
