"""Hot Monte Carlo kernels, JIT-compiled when numba is enabled.

The kernels are written as plain loops over float64 arrays. With the
default backend they are wrapped in numba's @njit (no fastmath, so IEEE
evaluation order is preserved); setting QSVLAB_BACKEND=numpy skips the
wrapping and runs the identical loop bodies in the interpreter. Both
paths therefore produce bit-identical results — the env flag trades
speed only. PY_FUNCS keeps the unwrapped functions for tests and for
benchmarks/bench_kernels.py.
"""

from __future__ import annotations

import os

import numpy as np

_choice = os.environ.get("QSVLAB_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise ValueError(f"QSVLAB_BACKEND must be auto|numba|numpy, got {_choice!r}")

if _choice == "numpy":
    BACKEND = "numpy"
else:
    try:
        import numba

        BACKEND = "numba"
    except ImportError:
        if _choice == "numba":
            raise
        BACKEND = "numpy"


def _jit(fn):
    if BACKEND == "numba":
        return numba.njit(cache=True)(fn)
    return fn


def _invnorm_sq_batch(weights, inv_eig_sq, out):
    """Per-trial (sum w/lam^2)/(sum w) for stacked weight/eigenvalue draws.

    weights, inv_eig_sq: (trials, N); out: (trials,).
    """
    trials = weights.shape[0]
    n = weights.shape[1]
    for t in range(trials):
        num = 0.0
        den = 0.0
        for j in range(n):
            w = weights[t, j]
            num += w * inv_eig_sq[t, j]
            den += w
        out[t] = num / den
    return out


def _hamming_accept_batch(uniforms, probs, threshold, hamming, accept):
    """Threshold Bernoulli shot strings drawn as uniforms < prob.

    uniforms: (runs, shots); probs: (runs,); hamming/accept: (runs,) outputs.
    """
    runs = uniforms.shape[0]
    shots = uniforms.shape[1]
    for r in range(runs):
        h = 0
        for s in range(shots):
            if uniforms[r, s] < probs[r]:
                h += 1
        hamming[r] = h
        accept[r] = 1 if h >= threshold else 0
    return hamming


PY_FUNCS = {
    "invnorm_sq_batch": _invnorm_sq_batch,
    "hamming_accept_batch": _hamming_accept_batch,
}

invnorm_sq_batch = _jit(_invnorm_sq_batch)
hamming_accept_batch = _jit(_hamming_accept_batch)
