"""Benchmark the JIT kernels against their pure-Python fallbacks.

Run from the repository root:

    python3 benchmarks/bench_kernels.py

The compiled and fallback paths execute the same loop bodies and produce
bit-identical outputs (asserted below); this script measures the speed
difference on the two workloads that dominate experiment runtime.
"""

import time

import numpy as np

from qsvlab import _kernels

if _kernels.BACKEND != "numba":
    raise SystemExit(
        "numba backend not active (QSVLAB_BACKEND forces the fallback); "
        "nothing to compare"
    )


def timeit(fn, *args, repeat=5):
    fn(*args)  # warm-up / JIT compile outside the timed region
    best = np.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_invnorm(trials=1000, n=4096):
    rng = np.random.default_rng(0)
    weights = rng.exponential(scale=1.0 / n, size=(trials, n))
    inv_eig_sq = 1.0 / rng.uniform(1 / 16, 1.0, size=(trials, n)) ** 2
    out_jit = np.empty(trials)
    out_py = np.empty(trials)
    t_jit = timeit(_kernels.invnorm_sq_batch, weights, inv_eig_sq, out_jit)
    t_py = timeit(_kernels.PY_FUNCS["invnorm_sq_batch"], weights, inv_eig_sq, out_py, repeat=1)
    assert out_jit.tobytes() == out_py.tobytes()
    return "invnorm_sq_batch", f"{trials}x{n}", t_jit, t_py


def bench_hamming(runs=200_000, shots=64):
    rng = np.random.default_rng(1)
    uniforms = rng.random(size=(runs, shots))
    probs = rng.uniform(0.5, 1.0, size=runs)
    ham_jit = np.zeros(runs, dtype=np.int64)
    acc_jit = np.zeros(runs, dtype=np.int64)
    ham_py = np.zeros(runs, dtype=np.int64)
    acc_py = np.zeros(runs, dtype=np.int64)
    t_jit = timeit(_kernels.hamming_accept_batch, uniforms, probs, 59, ham_jit, acc_jit)
    t_py = timeit(
        _kernels.PY_FUNCS["hamming_accept_batch"], uniforms, probs, 59, ham_py, acc_py,
        repeat=1,
    )
    assert ham_jit.tobytes() == ham_py.tobytes()
    assert acc_jit.tobytes() == acc_py.tobytes()
    return "hamming_accept_batch", f"{runs}x{shots}", t_jit, t_py


def main():
    print(f"backend: {_kernels.BACKEND}")
    print(f"{'kernel':<22} {'size':>12} {'numba':>12} {'python':>12} {'speedup':>9}")
    for row in (bench_invnorm(), bench_hamming()):
        name, size, t_jit, t_py = row
        print(f"{name:<22} {size:>12} {t_jit * 1e3:>10.2f}ms {t_py * 1e3:>10.2f}ms "
              f"{t_py / t_jit:>8.1f}x")


if __name__ == "__main__":
    main()
