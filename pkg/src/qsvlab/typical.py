"""Random instances and concentration of the solution norm.

Eigenvalues are sampled uniformly from [-1, -1/kappa] u [1/kappa, 1] and
squared right-hand-side amplitudes from the exponential law with rate N
(the distribution of squared amplitudes of random-circuit states). For
N >> kappa the solution norm concentrates in [sqrt(kappa/2),
sqrt(3 kappa/2)]; the tail probability is bounded by 4 exp(-0.013 N/kappa),
assembled from four explicit moment-generating-function bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import _kernels
from ._rng import stream
from .instances import Spectrum, StateVector

# Concentration window for inverse_norm**2 is [kappa/2, 3*kappa/2].
WINDOW_LO = 0.5
WINDOW_HI = 1.5
# Tail bound 4*exp(-RATE*N/kappa) and its four constituent exponents.
TAIL_COEFF = 4.0
TAIL_RATE = 0.013
RATE_NORM_HI = 0.087   # Pr(||b~||^2 >= 3/2)    <= exp(-0.087 N)
RATE_NORM_LO = 0.014   # Pr(||b~||^2 <= 5/6)    <= exp(-0.014 N)
RATE_INV_HI = 0.013    # Pr(||inv b~||^2 >= 5k/4) <= exp(-0.013 N/k)
RATE_INV_LO = 0.017    # Pr(||inv b~||^2 <= 3k/4) <= exp(-0.017 N/k)


def porter_thomas_weights(n: int, rng: np.random.Generator) -> np.ndarray:
    """Unnormalized squared amplitudes: i.i.d. exponential with mean 1/n."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    return rng.exponential(scale=1.0 / n, size=n)


def sample_porter_thomas_state(n: int, rng: np.random.Generator) -> StateVector:
    """Random state with exponentially distributed weights and uniform phases.

    Phases never enter any norm computed here; they are included so the
    sampled object is a full state vector.
    """
    weights = porter_thomas_weights(n, rng)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return StateVector(np.sqrt(weights) * np.exp(1j * phases))


def sample_uniform_spectrum(n: int, kappa: float, rng: np.random.Generator) -> Spectrum:
    """Eigenvalues uniform on [-1,-1/kappa] u [1/kappa,1]: fair sign, uniform magnitude."""
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if kappa <= 1.0:
        raise ValueError(f"need kappa > 1, got {kappa}")
    mags = rng.uniform(1.0 / kappa, 1.0, size=n)
    signs = np.where(rng.random(size=n) < 0.5, -1.0, 1.0)
    return Spectrum(mags * signs, kappa, strict=False)


@dataclass(frozen=True)
class ConcentrationReport:
    """Result of one concentration experiment."""

    n: int
    kappa: float
    trials: int
    values: list[float] = field(repr=False)
    tail_count: int = 0
    empirical_tail: float = 0.0
    bound_value: float = 0.0
    seed: int = 0

    def in_window(self, value: float) -> bool:
        k = self.kappa
        return math.sqrt(WINDOW_LO * k) <= value <= math.sqrt(WINDOW_HI * k)


def _trial_draws(n: int, kappa: float, seed: int, t: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-trial eigenvalue magnitudes and weights from the trial's own stream.

    Draws sample_uniform_spectrum followed by porter_thomas_weights, so
    the reported values can be reproduced instance-by-instance from the
    same (seed, trial) stream. Signs and phases never enter the norm, so
    amplitude phases are left undrawn.
    """
    rng = stream(seed, t)
    spec = sample_uniform_spectrum(n, kappa, rng)
    weights = porter_thomas_weights(n, rng)
    return np.abs(spec.eigvals), weights


def concentration_trials(
    n: int, kappa: float, trials: int, seed: int, trial_range: range | None = None
) -> np.ndarray:
    """inverse_norm samples for (a slice of) the experiment's trials.

    Each trial draws from its own (seed, trial) stream, so any partition
    of the trial range across workers reproduces the same values.
    """
    if trial_range is None:
        trial_range = range(trials)
    count = len(trial_range)
    mags = np.empty((count, n))
    weights = np.empty((count, n))
    for i, t in enumerate(trial_range):
        mags[i], weights[i] = _trial_draws(n, kappa, seed, t)
    out = np.empty(count)
    _kernels.invnorm_sq_batch(weights, 1.0 / mags**2, out)
    return np.sqrt(out)


def report_from_values(
    n: int, kappa: float, trials: int, seed: int, values: np.ndarray
) -> ConcentrationReport:
    """Assemble the report (tail count, bound) from precomputed samples."""
    lo = math.sqrt(WINDOW_LO * kappa)
    hi = math.sqrt(WINDOW_HI * kappa)
    tail = int(np.sum((values < lo) | (values > hi)))
    return ConcentrationReport(
        n=n,
        kappa=float(kappa),
        trials=trials,
        values=[float(x) for x in values],
        tail_count=tail,
        empirical_tail=tail / trials,
        bound_value=TAIL_COEFF * math.exp(-TAIL_RATE * n / kappa),
        seed=seed,
    )


def concentration_experiment(
    n: int, kappa: float, trials: int, seed: int = 0
) -> ConcentrationReport:
    """Sample inverse_norm over random instances and count window escapes."""
    if trials < 1:
        raise ValueError(f"need at least one trial, got {trials}")
    values = concentration_trials(n, kappa, trials, seed)
    return report_from_values(n, kappa, trials, seed, values)


@dataclass(frozen=True)
class ChernoffBounds:
    """The four explicit tail bounds and their combination."""

    norm_hi: float      # exp(-0.087 N)
    norm_lo: float      # exp(-0.014 N)
    inv_hi: float       # exp(-0.013 N/kappa)
    inv_lo: float       # exp(-0.017 N/kappa)
    total: float
    simplified: float   # 4 exp(-0.013 N/kappa)
    degenerate: bool    # N == 0: all bounds collapse to 1


def chernoff_bounds(n: int, kappa: float) -> ChernoffBounds:
    """Evaluate the four tail exponents; their sum never exceeds the simplified bound."""
    if n < 0:
        raise ValueError(f"need n >= 0, got {n}")
    if kappa < 1.0:
        raise ValueError(f"need kappa >= 1, got {kappa}")
    norm_hi = math.exp(-RATE_NORM_HI * n)
    norm_lo = math.exp(-RATE_NORM_LO * n)
    inv_hi = math.exp(-RATE_INV_HI * n / kappa)
    inv_lo = math.exp(-RATE_INV_LO * n / kappa)
    total = norm_hi + norm_lo + inv_hi + inv_lo
    simplified = TAIL_COEFF * math.exp(-TAIL_RATE * n / kappa)
    if total > simplified * (1.0 + 1e-15):
        raise AssertionError("combined bound exceeded its simplified form")
    return ChernoffBounds(
        norm_hi=norm_hi,
        norm_lo=norm_lo,
        inv_hi=inv_hi,
        inv_lo=inv_lo,
        total=total,
        simplified=simplified,
        degenerate=(n == 0),
    )


def mgf_lambda_integral(kappa: float, t: float, sign: int) -> float:
    """Average of 1/(1 -+ t/lambda^2) over uniform |lambda| in [1/kappa, 1].

    This is the moment generating function of the weighted inverse-square
    eigenvalue contribution, evaluated by adaptive quadrature to 1e-10
    relative accuracy. The plus sign requires t * kappa^2 < 1 (otherwise
    the integrand is singular inside the domain).
    """
    if kappa <= 1.0:
        raise ValueError(f"need kappa > 1, got {kappa}")
    if t < 0.0:
        raise ValueError(f"need t >= 0, got {t}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if sign == 1 and t * kappa**2 >= 1.0:
        raise ValueError(f"singular integrand: t*kappa^2 = {t * kappa**2} >= 1")
    if t == 0.0:
        return 1.0
    lo = 1.0 / kappa

    def integrand(lam: float) -> float:
        return 1.0 / (1.0 - sign * t / lam**2)

    value, _ = quad(integrand, lo, 1.0, epsabs=0.0, epsrel=1e-12, limit=200)
    return value / (1.0 - lo)
