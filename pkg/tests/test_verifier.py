import math
from fractions import Fraction

import numpy as np
import pytest

from qsvlab.instances import (
    QLSPInstance,
    Spectrum,
    basis_state,
    solve,
    worst_case_instance,
)
from qsvlab.linalg import DensityState, mixed_trace_distance, pure_trace_distance
from qsvlab.verifier import (
    SHOTS,
    accept_rate,
    amplify64,
    amplify64_noisy_thresholds,
    expected_rounds,
    make_test_state,
    p_success,
    run_trials,
    run_verifier,
    swap_test_prob,
)


def amplify64_oracle(p: float) -> float:
    """Exact rational binomial tail, evaluated without floating-point loss."""
    pf = Fraction(p)
    total = sum(
        Fraction(math.comb(64, k)) * (1 - pf) ** k * pf ** (64 - k) for k in range(6)
    )
    return float(total)


class TestMakeTestState:
    def test_zero_distance(self):
        x = basis_state(4, 0)
        ts = make_test_state(x, 0.0, "mixed-orthogonal")
        assert mixed_trace_distance(ts.rho, DensityState.pure(x)) <= 1e-12

    def test_full_distance_pure(self):
        x = basis_state(4, 0)
        ts = make_test_state(x, 1.0, "pure")
        psi = ts.rho.ensemble[0][1]
        assert abs(np.vdot(x.amps, psi.amps)) <= 1e-12

    def test_pure_overlap_at_eighth(self):
        x = basis_state(4, 1)
        ts = make_test_state(x, 0.125, "pure")
        psi = ts.rho.ensemble[0][1]
        assert abs(np.vdot(x.amps, psi.amps)) ** 2 == pytest.approx(
            1 - 1 / 64, abs=1e-12
        )

    def test_exact_distance_both_kinds(self):
        x = solve(worst_case_instance(7.0, 5))
        for kind in ("pure", "mixed-orthogonal"):
            for d in (0.0, 0.125, 0.6, 1.0):
                ts = make_test_state(x, d, kind)
                got = mixed_trace_distance(ts.rho, DensityState.pure(x))
                assert got == pytest.approx(d, abs=1e-10)

    def test_rejects_bad_distance(self):
        x = basis_state(2, 0)
        with pytest.raises(ValueError):
            make_test_state(x, 1.5)
        with pytest.raises(ValueError):
            make_test_state(x, 0.5, "bogus")


class TestSwapTestProb:
    def test_identical_pure(self):
        rho = DensityState.pure(basis_state(2, 0))
        assert swap_test_prob(rho, rho) == pytest.approx(1.0)

    def test_orthogonal_pure(self):
        a = DensityState.pure(basis_state(2, 0))
        b = DensityState.pure(basis_state(2, 1))
        assert swap_test_prob(a, b) == pytest.approx(0.5)

    def test_mixed_at_eighth(self):
        x = basis_state(4, 0)
        ts = make_test_state(x, 0.125, "mixed-orthogonal")
        assert swap_test_prob(ts.rho, DensityState.pure(x)) == pytest.approx(15 / 16)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            swap_test_prob(
                DensityState.pure(basis_state(2, 0)),
                DensityState.pure(basis_state(3, 0)),
            )


class TestAmplify64:
    def test_endpoints(self):
        assert amplify64(1.0) == pytest.approx(1.0)
        assert amplify64(0.0) == pytest.approx(0.0)

    def test_reference_thresholds(self):
        assert amplify64(15 / 16) == pytest.approx(0.7903099239060819, abs=1e-12)
        assert amplify64(7 / 8) == pytest.approx(0.17314523966315823, abs=1e-12)
        assert amplify64(15 / 16) >= 0.79
        assert amplify64(7 / 8) < 0.18

    def test_noisy_thresholds(self):
        accept, reject = amplify64_noisy_thresholds()
        assert accept == pytest.approx(0.68132468877689967, abs=1e-12)
        assert reject == pytest.approx(0.2406387263331049, abs=1e-12)
        assert accept >= 0.68 > 2 / 3 - 0.02
        assert reject < 0.25 < 1 / 3

    def test_matches_exact_rational_oracle(self):
        for p in (0.0, 0.1, 0.5, 7 / 8, 15 / 16, 0.99, 1.0):
            assert amplify64(p) == pytest.approx(amplify64_oracle(p), abs=1e-12)

    def test_monotone_on_grid(self):
        grid = np.linspace(0.0, 1.0, 1000)
        vals = [amplify64(p) for p in grid]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            amplify64(1.2)


class TestPSuccess:
    def test_extremes(self):
        spec = Spectrum([1.0, 0.1], kappa=10.0)
        assert p_success(QLSPInstance(spec, basis_state(2, 1))) == pytest.approx(1.0)
        assert p_success(QLSPInstance(spec, basis_state(2, 0))) == pytest.approx(0.01)

    def test_rounds_scaling(self):
        for kappa in (100.0, 1000.0, 10000.0):
            a = expected_rounds(worst_case_instance(kappa, 2))
            b = expected_rounds(worst_case_instance(2 * kappa, 2))
            assert b == 2 * a


class TestRunVerifier:
    def test_deterministic(self):
        inst = worst_case_instance(10.0, 4)
        ts = make_test_state(solve(inst), 0.125, "pure")
        a = run_verifier(inst, ts.rho, 0.01, seed=42)
        b = run_verifier(inst, ts.rho, 0.01, seed=42)
        assert a == b

    def test_query_accounting(self):
        inst = worst_case_instance(100.0, 2)
        ts = make_test_state(solve(inst), 0.0, "pure")
        out = run_verifier(inst, ts.rho, 0.0, seed=0)
        assert out.rounds == 100
        assert out.q_uses == SHOTS * 100
        assert out.hamming == sum(out.shots)
        assert out.r == int(out.hamming >= 59)

    def test_rejects_large_solver_error(self):
        inst = worst_case_instance(10.0, 2)
        ts = make_test_state(solve(inst), 0.125, "pure")
        with pytest.raises(ValueError):
            run_verifier(inst, ts.rho, 0.02, seed=0)

    def test_noisy_p_success_recorded(self):
        inst = worst_case_instance(10.0, 4)
        ts = make_test_state(solve(inst), 0.125, "pure")
        out = run_verifier(inst, ts.rho, 0.01, seed=1)
        assert abs(out.p_success_noisy - out.p_success) <= 0.01 * out.p_success

    def test_outcome_json_matches_schema(self):
        from qsvlab.output import validate
        from qsvlab.verifier import outcome_json_dict

        inst = worst_case_instance(10.0, 4)
        ts = make_test_state(solve(inst), 0.125, "pure")
        out = run_verifier(inst, ts.rho, 0.0, seed=5)
        validate(outcome_json_dict(out), "verifier_outcome")


class TestAcceptRateContract:
    def test_accept_branch_mixed(self):
        inst = worst_case_instance(10.0, 4)
        ts = make_test_state(solve(inst), 0.125, "mixed-orthogonal")
        trials = 1500
        rate, _, _ = accept_rate(inst, ts.rho, 0.0, trials, seed=8)
        exact = amplify64(15 / 16)
        sigma = math.sqrt(exact * (1 - exact) / trials)
        assert abs(rate - exact) <= 3 * sigma
        assert rate >= 2 / 3

    def test_reject_branch_pure(self):
        inst = worst_case_instance(10.0, 4)
        ts = make_test_state(solve(inst), 0.6, "pure")
        rate, _, _ = accept_rate(inst, ts.rho, 0.0, 1500, seed=9)
        assert rate <= 1 / 3

    def test_contract_with_solver_noise(self):
        inst = worst_case_instance(10.0, 4)
        accept_ts = make_test_state(solve(inst), 0.125, "mixed-orthogonal")
        reject_ts = make_test_state(solve(inst), 0.6, "mixed-orthogonal")
        rate_acc, _, _ = accept_rate(inst, accept_ts.rho, 0.01, 1500, seed=10)
        rate_rej, _, _ = accept_rate(inst, reject_ts.rho, 0.01, 1500, seed=11)
        assert rate_acc >= 2 / 3
        assert rate_rej <= 1 / 3

    def test_chunked_equals_full(self):
        inst = worst_case_instance(10.0, 4)
        ts = make_test_state(solve(inst), 0.3, "pure")
        full = run_trials(inst, ts.rho, 0.01, 3, range(50))
        parts = [run_trials(inst, ts.rho, 0.01, 3, range(lo, lo + 10)) for lo in range(0, 50, 10)]
        for idx in range(3):
            merged = np.concatenate([p[idx] for p in parts])
            assert merged.tobytes() == full[idx].tobytes()
