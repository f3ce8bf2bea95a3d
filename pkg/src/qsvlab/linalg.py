"""Complex state vectors, finite ensembles, overlaps, and trace distances.

States live in the diagonalizing basis of the system matrix as plain
complex amplitude vectors. Mixed states are finite ensembles
{(w_i, |psi_i>)} rather than dense N x N matrices: every mixed state in
the experiments is low-rank, and the ensemble form scales to N = 2**14.
"""

from __future__ import annotations

import numpy as np

from .tolerances import TOL


class StateVector:
    """Unit complex vector of amplitudes, dimension >= 2.

    The constructor normalizes the input when its Euclidean norm is off
    by more than the norm tolerance, and keeps the amplitudes bit-exact
    otherwise (that keeps serialization round-trips exact). Instances
    are immutable; the amplitude array is marked read-only.
    """

    __slots__ = ("amps",)

    def __init__(self, amps) -> None:
        a = np.array(amps, dtype=np.complex128)
        if a.ndim != 1:
            raise ValueError(f"amplitudes must be a 1-d vector, got shape {a.shape}")
        if a.size < 2:
            raise ValueError(f"dimension must be >= 2, got {a.size}")
        norm = float(np.linalg.norm(a))
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        if abs(norm - 1.0) > TOL.norm:
            a = a / norm
        a.setflags(write=False)
        object.__setattr__(self, "amps", a)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        return self.amps.size

    def normalize(self) -> "StateVector":
        """Return a freshly normalized copy (idempotent on unit input)."""
        return StateVector(self.amps)

    def __repr__(self) -> str:
        return f"StateVector(dim={self.dim})"


def basis_state(n: int, j: int) -> StateVector:
    """Computational basis vector e_j in dimension n."""
    if not 0 <= j < n:
        raise ValueError(f"basis index {j} out of range for dimension {n}")
    a = np.zeros(n, dtype=np.complex128)
    a[j] = 1.0
    return StateVector(a)


class DensityState:
    """Finite ensemble {(weight, StateVector)} representing a mixed state.

    Weights are nonnegative and sum to 1 within the norm tolerance; all
    member states share one dimension.
    """

    __slots__ = ("ensemble",)

    def __init__(self, ensemble) -> None:
        members = tuple((float(w), s) for w, s in ensemble)
        if not members:
            raise ValueError("ensemble must be non-empty")
        dims = {s.dim for _, s in members}
        if len(dims) != 1:
            raise ValueError(f"ensemble members disagree on dimension: {sorted(dims)}")
        for w, _ in members:
            if w < -TOL.norm:
                raise ValueError(f"negative ensemble weight {w}")
        total = sum(w for w, _ in members)
        if abs(total - 1.0) > TOL.norm:
            raise ValueError(f"ensemble weights sum to {total}, expected 1")
        object.__setattr__(self, "ensemble", members)

    def __setattr__(self, name, value):
        raise AttributeError("DensityState is immutable")

    @classmethod
    def pure(cls, state: StateVector) -> "DensityState":
        return cls([(1.0, state)])

    @property
    def dim(self) -> int:
        return self.ensemble[0][1].dim

    @property
    def rank_bound(self) -> int:
        return len(self.ensemble)

    def __repr__(self) -> str:
        return f"DensityState(dim={self.dim}, members={len(self.ensemble)})"


def _check_dims(u: StateVector, v: StateVector) -> None:
    if u.dim != v.dim:
        raise ValueError(f"dimension mismatch: {u.dim} vs {v.dim}")


def inner(u: StateVector, v: StateVector) -> complex:
    """Hermitian inner product <u|v> (u conjugated)."""
    _check_dims(u, v)
    return complex(np.vdot(u.amps, v.amps))


def pure_trace_distance(u: StateVector, v: StateVector) -> float:
    """Trace distance between pure states: sqrt(1 - |<u|v>|^2).

    Symmetric, in [0, 1], zero iff the states agree up to a global
    phase, and invariant under global phases of either argument.
    Evaluated as the norm of v projected orthogonal to u, which is the
    same quantity without the catastrophic cancellation of
    1 - |<u|v>|^2 near coincident states.
    """
    _check_dims(u, v)
    residual = v.amps - u.amps * np.vdot(u.amps, v.amps)
    return float(min(1.0, np.linalg.norm(residual)))


MAX_ENSEMBLE_MEMBERS = 64


def mixed_trace_distance(r: DensityState, s: DensityState) -> float:
    """Trace distance (1/2)||r - s||_tr between finite ensembles.

    The difference operator is diagonalized in an orthonormal basis of
    the joint span of all member vectors, so the cost depends on the
    total ensemble rank, not on the ambient dimension. The joint rank
    is capped at MAX_ENSEMBLE_MEMBERS members.
    """
    if r.dim != s.dim:
        raise ValueError(f"dimension mismatch: {r.dim} vs {s.dim}")
    members = len(r.ensemble) + len(s.ensemble)
    if members > MAX_ENSEMBLE_MEMBERS:
        raise ValueError(
            f"joint ensemble has {members} members, exceeds {MAX_ENSEMBLE_MEMBERS}"
        )
    vecs = [st.amps for _, st in r.ensemble] + [st.amps for _, st in s.ensemble]
    weights = [w for w, _ in r.ensemble] + [-w for w, _ in s.ensemble]
    # Orthonormal basis of the joint span via SVD (robust to dependent members).
    m = np.stack(vecs, axis=1)
    q, sv, _ = np.linalg.svd(m, full_matrices=False)
    q = q[:, sv > 1e-12]
    # Difference operator in the span basis: sum_i w_i c_i c_i^dagger.
    coeffs = q.conj().T @ m  # (rank, members)
    delta = (coeffs * np.asarray(weights)) @ coeffs.conj().T
    eig = np.linalg.eigvalsh((delta + delta.conj().T) / 2)
    return float(0.5 * np.sum(np.abs(eig)))
