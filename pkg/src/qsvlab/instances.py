"""Linear-system instances in the eigenbasis of the system matrix.

An instance is a real spectrum (the matrix is Hermitian with unit
spectral norm and condition number kappa) together with a unit
right-hand-side state. Solving is componentwise division by the
eigenvalues followed by renormalization.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .linalg import StateVector, basis_state, pure_trace_distance
from .tolerances import TOL

# Divisor in the floor bound on state-preparation queries for verification.
QUERY_BOUND_DIVISOR = 13


class Spectrum:
    """Eigenvalues of the system matrix plus its condition number.

    Every |eigenvalue| lies in [1/kappa, 1]. In strict mode (explicit
    constructions) the extremes are attained: max |lam| = 1 and
    min |lam| = 1/kappa. Sampled spectra satisfy the extremes only in
    distribution and are built with strict=False.
    """

    __slots__ = ("eigvals", "kappa", "strict")

    def __init__(self, eigvals, kappa: float, *, strict: bool = True) -> None:
        lam = np.array(eigvals, dtype=np.float64)
        kappa = float(kappa)
        if lam.ndim != 1 or lam.size < 2:
            raise ValueError("need at least two eigenvalues")
        if kappa < 1.0:
            raise ValueError(f"condition number must be >= 1, got {kappa}")
        mags = np.abs(lam)
        if np.any(mags > 1.0 + TOL.norm) or np.any(mags < 1.0 / kappa - TOL.norm):
            raise ValueError("eigenvalue magnitudes must lie in [1/kappa, 1]")
        if strict:
            if abs(mags.max() - 1.0) > TOL.norm:
                raise ValueError("strict spectrum must attain |lambda| = 1")
            if abs(mags.min() - 1.0 / kappa) > TOL.norm:
                raise ValueError("strict spectrum must attain |lambda| = 1/kappa")
        lam.setflags(write=False)
        object.__setattr__(self, "eigvals", lam)
        object.__setattr__(self, "kappa", kappa)
        object.__setattr__(self, "strict", bool(strict))

    def __setattr__(self, name, value):
        raise AttributeError("Spectrum is immutable")

    @property
    def dim(self) -> int:
        return self.eigvals.size

    def min_index(self) -> int:
        """Lowest index attaining the smallest |eigenvalue| (deterministic tie-break)."""
        mags = np.abs(self.eigvals)
        return int(np.argmin(mags))

    def __repr__(self) -> str:
        return f"Spectrum(dim={self.dim}, kappa={self.kappa})"


class QLSPInstance:
    """Spectrum + right-hand-side state + target precision."""

    __slots__ = ("spectrum", "b", "epsilon", "_inverse_norm")

    def __init__(self, spectrum: Spectrum, b: StateVector, epsilon: float = 1e-2) -> None:
        if spectrum.dim != b.dim:
            raise ValueError(
                f"dimension mismatch: spectrum {spectrum.dim}, state {b.dim}"
            )
        epsilon = float(epsilon)
        if epsilon <= 0.0:
            raise ValueError(f"target precision must be positive, got {epsilon}")
        inv = float(np.sqrt(np.sum(np.abs(b.amps) ** 2 / spectrum.eigvals**2)))
        object.__setattr__(self, "spectrum", spectrum)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "epsilon", epsilon)
        object.__setattr__(self, "_inverse_norm", inv)

    def __setattr__(self, name, value):
        raise AttributeError("QLSPInstance is immutable")

    @property
    def dim(self) -> int:
        return self.b.dim

    @property
    def kappa(self) -> float:
        return self.spectrum.kappa

    def __repr__(self) -> str:
        return f"QLSPInstance(dim={self.dim}, kappa={self.kappa})"


def solve(inst: QLSPInstance) -> StateVector:
    """Normalized solution state: amplitudes b_j / lambda_j, renormalized."""
    return StateVector(inst.b.amps / inst.spectrum.eigvals)


def inverse_norm(inst: QLSPInstance) -> float:
    """Norm of the unnormalized solution, sqrt(sum |b_j|^2 / lambda_j^2); in [1, kappa]."""
    return inst._inverse_norm


def susceptibility(inst: QLSPInstance) -> float:
    """kappa / inverse_norm: how strongly small right-hand-side changes move the solution."""
    return inst.kappa / inst._inverse_norm


def q0_general_bound(inst: QLSPInstance) -> int:
    """floor(susceptibility / 13): certified lower bound on preparation-unitary uses."""
    return int(math.floor(susceptibility(inst) / QUERY_BOUND_DIVISOR))


def worst_case_instance(kappa: float, n: int, epsilon: float = 1e-2) -> QLSPInstance:
    """Maximal-susceptibility instance: b sits on the unit eigenvalue.

    The spectrum carries eigenvalues 1 and 1/kappa; any remaining slots
    are filled evenly across [1/kappa, 1] (a reproducible convention,
    the filling does not affect the solution). inverse_norm == 1.
    """
    kappa = float(kappa)
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if kappa < 1.0:
        raise ValueError(f"condition number must be >= 1, got {kappa}")
    fill = np.linspace(1.0 / kappa, 1.0, n)[1:-1] if n > 2 else np.empty(0)
    eigvals = np.concatenate(([1.0, 1.0 / kappa], fill))
    spectrum = Spectrum(eigvals, kappa)
    return QLSPInstance(spectrum, basis_state(n, 0), epsilon)


def worst_case_perturbed_pair(kappa: float) -> tuple[QLSPInstance, QLSPInstance]:
    """Two-dimensional instance pair whose solutions sit at trace distance sqrt(1/2).

    The base has b on the unit eigenvalue; the companion shifts b by
    (1/kappa) onto the 1/kappa eigenvector, which drags the solution to
    the equal superposition. ||b - b'|| = O(1/kappa) while the solution
    distance stays sqrt(1/2) for every kappa > 1.
    """
    kappa = float(kappa)
    if kappa <= 1.0:
        raise ValueError(f"need kappa > 1, got {kappa}")
    base = worst_case_instance(kappa, 2)
    b_shift = np.array([1.0, 1.0 / kappa], dtype=np.complex128)
    perturbed = QLSPInstance(base.spectrum, StateVector(b_shift), base.epsilon)
    dist = pure_trace_distance(solve(base), solve(perturbed))
    if abs(dist - math.sqrt(0.5)) > TOL.equal:
        raise AssertionError(f"constructed pair distance {dist} != sqrt(1/2)")
    return base, perturbed


def random_strict_instance(
    n: int,
    kappa: float,
    rng: np.random.Generator,
    *,
    min_sign: int = 1,
    b_mode: str = "random",
    epsilon: float = 1e-2,
) -> QLSPInstance:
    """Random instance whose spectrum attains both extremes exactly.

    min_sign selects the sign of the minimal eigenvalue (+-1/kappa).
    b_mode controls the right-hand side's support on the minimal
    eigenvector: "random" (generic complex Gaussian), "zero-min"
    (orthogonal to it), or "pure-min" (equal to it).
    """
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    if kappa <= 1.0:
        raise ValueError(f"need kappa > 1, got {kappa}")
    if min_sign not in (1, -1):
        raise ValueError(f"min_sign must be +1 or -1, got {min_sign}")
    mags = np.concatenate(([1.0, 1.0 / kappa], rng.uniform(1.0 / kappa, 1.0, n - 2)))
    signs = np.concatenate(
        ([rng.choice([-1.0, 1.0]), float(min_sign)], rng.choice([-1.0, 1.0], n - 2))
    )
    eigvals = (mags * signs)[rng.permutation(n)]
    spectrum = Spectrum(eigvals, kappa)
    j = spectrum.min_index()
    if b_mode == "pure-min":
        b = basis_state(n, j)
    else:
        amps = rng.normal(size=n) + 1j * rng.normal(size=n)
        if b_mode == "zero-min":
            amps[j] = 0.0
        elif b_mode != "random":
            raise ValueError(f"unknown b_mode {b_mode!r}")
        b = StateVector(amps)
    return QLSPInstance(spectrum, b, epsilon)


def to_json_dict(inst: QLSPInstance) -> dict:
    """JSON-serializable form; float lists round-trip bit-exactly."""
    return {
        "eigvals": [float(x) for x in inst.spectrum.eigvals],
        "kappa": inst.kappa,
        "b_re": [float(x) for x in inst.b.amps.real],
        "b_im": [float(x) for x in inst.b.amps.imag],
        "epsilon": inst.epsilon,
    }


def from_json_dict(data: dict, *, strict: bool = True) -> QLSPInstance:
    spectrum = Spectrum(data["eigvals"], data["kappa"], strict=strict)
    amps = np.asarray(data["b_re"], dtype=np.float64) + 1j * np.asarray(
        data["b_im"], dtype=np.float64
    )
    return QLSPInstance(spectrum, StateVector(amps), data["epsilon"])


def dumps(inst: QLSPInstance) -> str:
    return json.dumps(to_json_dict(inst), indent=2, sort_keys=True) + "\n"


def loads(text: str, *, strict: bool = True) -> QLSPInstance:
    return from_json_dict(json.loads(text), strict=strict)
