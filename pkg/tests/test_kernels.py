import os
import subprocess
import sys

import numpy as np

from qsvlab import _kernels


def test_backend_selected():
    assert _kernels.BACKEND in ("numba", "numpy")


def test_invnorm_kernel_matches_pure_python_bitwise():
    rng = np.random.default_rng(0)
    w = rng.exponential(size=(20, 257))
    il2 = 1.0 / rng.uniform(0.1, 1.0, size=(20, 257)) ** 2
    out_a = np.empty(20)
    out_b = np.empty(20)
    _kernels.invnorm_sq_batch(w, il2, out_a)
    _kernels.PY_FUNCS["invnorm_sq_batch"](w, il2, out_b)
    assert out_a.tobytes() == out_b.tobytes()


def test_hamming_kernel_matches_pure_python_bitwise():
    rng = np.random.default_rng(1)
    u = rng.random(size=(50, 64))
    p = rng.random(size=50)
    ham_a = np.zeros(50, dtype=np.int64)
    acc_a = np.zeros(50, dtype=np.int64)
    ham_b = np.zeros(50, dtype=np.int64)
    acc_b = np.zeros(50, dtype=np.int64)
    _kernels.hamming_accept_batch(u, p, 59, ham_a, acc_a)
    _kernels.PY_FUNCS["hamming_accept_batch"](u, p, 59, ham_b, acc_b)
    assert ham_a.tobytes() == ham_b.tobytes()
    assert acc_a.tobytes() == acc_b.tobytes()
    assert np.array_equal(acc_a, (ham_a >= 59).astype(np.int64))


def test_numpy_backend_env_flag(tmp_path):
    """Forcing the fallback backend must not change experiment bytes."""
    script = (
        "import qsvlab, qsvlab.typical as t, json, sys\n"
        "rep = t.concentration_experiment(64, 4.0, 10, seed=3)\n"
        "print(qsvlab.BACKEND)\n"
        "print(json.dumps(rep.values))\n"
    )
    env_numba = dict(os.environ, QSVLAB_BACKEND="auto")
    env_numpy = dict(os.environ, QSVLAB_BACKEND="numpy")
    out_a = subprocess.run(
        [sys.executable, "-c", script], capture_output=True, text=True, env=env_numba
    )
    out_b = subprocess.run(
        [sys.executable, "-c", script], capture_output=True, text=True, env=env_numpy
    )
    assert out_a.returncode == 0, out_a.stderr
    assert out_b.returncode == 0, out_b.stderr
    assert out_b.stdout.splitlines()[0] == "numpy"
    assert out_a.stdout.splitlines()[1] == out_b.stdout.splitlines()[1]


def test_bad_backend_rejected():
    env = dict(os.environ, QSVLAB_BACKEND="cuda")
    out = subprocess.run(
        [sys.executable, "-c", "import qsvlab"],
        capture_output=True,
        text=True,
        env=env,
    )
    assert out.returncode != 0
