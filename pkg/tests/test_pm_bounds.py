import math

import numpy as np
import pytest

from qsvlab.adversary import build_pair
from qsvlab.instances import (
    QLSPInstance,
    Spectrum,
    StateVector,
    basis_state,
    random_strict_instance,
    worst_case_instance,
)
from qsvlab.linalg import pure_trace_distance
from qsvlab.pm_bounds import (
    certificate_json_dict,
    pm_certificate,
    pm_lower_bound,
    pm_q0,
    tensor_power_distance,
)
from qsvlab._rng import stream


def product_state_distance(overlap: float, q: int) -> float:
    """Brute force: build the q-fold product vectors and use the pure formula."""
    if q == 0:
        return 0.0  # empty products are the same trivial state
    a = StateVector([1.0, 0.0])
    b = StateVector([overlap, math.sqrt(1 - overlap**2)])
    pa, pb = np.ones(1, dtype=np.complex128), np.ones(1, dtype=np.complex128)
    for _ in range(q):
        pa = np.kron(pa, a.amps)
        pb = np.kron(pb, b.amps)
    return pure_trace_distance(StateVector(pa), StateVector(pb))


class TestTensorPowerDistance:
    def test_endpoints(self):
        assert tensor_power_distance(0.7, 0) == 0.0
        assert tensor_power_distance(0.0, 1) == pytest.approx(1.0)

    def test_closed_form_point(self):
        ov = math.sqrt(0.5)
        assert tensor_power_distance(ov, 2) == pytest.approx(math.sqrt(3) / 2, abs=1e-12)

    def test_brute_force_products(self):
        for overlap in (0.0, 0.3, 0.7071067811865476, 0.95, 1.0):
            for q in range(1, 9):
                got = tensor_power_distance(overlap, q)
                assert got == pytest.approx(product_state_distance(overlap, q), abs=1e-10)

    def test_monotone_in_q(self):
        prev = -1.0
        for q in range(0, 30):
            val = tensor_power_distance(0.9, q)
            assert val >= prev
            prev = val

    def test_subadditivity_bound(self):
        for ov in np.linspace(0.0, 0.999, 25):
            for q in (0, 1, 2, 5, 20):
                assert tensor_power_distance(ov, q) <= math.sqrt(q * (1 - ov**2)) + 1e-12

    def test_validation(self):
        with pytest.raises(ValueError):
            tensor_power_distance(1.2, 1)
        with pytest.raises(ValueError):
            tensor_power_distance(0.5, -1)


class TestPmQ0:
    def test_floor_boundary(self):
        # gap safely inside (1/72, 1/36] maps to exactly one copy
        assert pm_q0(math.sqrt(1 - 1 / 40)) == 1
        # the exact boundary in rational arithmetic: gap = 1/36 -> 1
        assert math.floor(1 / (36 * (1 / 36))) == 1

    def test_unbounded(self):
        assert pm_q0(1.0) is None

    def test_small_gap(self):
        assert pm_q0(math.sqrt(1 - 1e-4)) == 277

    def test_orthogonal(self):
        assert pm_q0(0.0) == 0


class TestPmLowerBound:
    def test_below_threshold(self):
        assert pm_lower_bound(worst_case_instance(12.0, 2)) == 0

    def test_kappa_300(self):
        assert pm_lower_bound(worst_case_instance(300.0, 2)) == 600

    def test_typical_scaling(self):
        # susceptibility ~ sqrt(kappa) makes the bound ~ kappa/150
        kappa = 10000.0
        spec = Spectrum([1.0, 1 / kappa], kappa)
        b = StateVector([math.sqrt(1 - 1 / kappa), math.sqrt(1 / kappa)])
        inst = QLSPInstance(spec, b)  # inverse_norm ~ sqrt(kappa)
        got = pm_lower_bound(inst)
        assert got == pytest.approx(kappa / 150, rel=0.05)


class TestPmCertificate:
    def test_worst_case_kappa300(self):
        pair = build_pair(worst_case_instance(300.0, 8))
        cert = pm_certificate(pair)
        assert cert.q0_pm_floor150 == 600
        assert cert.q0_pm_exact >= 600
        assert cert.distance_at_q0 <= 1 / 6 + 1e-12

    def test_orthogonal_pair_zero_copies(self):
        # b on the minimal eigenvector: companion is exactly orthogonal
        spec = Spectrum([1.0, 0.1], kappa=10.0)
        pair = build_pair(QLSPInstance(spec, basis_state(2, 1)))
        assert pair.theta == pytest.approx(math.pi / 2, abs=1e-12)
        cert = pm_certificate(pair)
        assert cert.q0_pm_exact == 0
        assert cert.distance_at_q0 == 0.0

    def test_distance_cap_random_sweep(self):
        rng = stream(31)
        for i in range(60):
            n = int(rng.integers(2, 128))
            kappa = float(rng.choice([10.0, 100.0, 1000.0]))
            inst = random_strict_instance(n, kappa, rng, min_sign=1 if i % 2 else -1)
            cert = pm_certificate(build_pair(inst))
            assert cert.distance_at_q0 <= 1 / 6 + 1e-12
            assert cert.q0_pm_exact >= cert.q0_pm_floor150

    def test_json_round_numbers(self):
        spec = Spectrum([1.0, 0.1], kappa=10.0)
        pair = build_pair(QLSPInstance(spec, basis_state(2, 1)))
        data = certificate_json_dict(pm_certificate(pair))
        assert data["q0_pm_exact"] == 0

    def test_unbounded_sentinel_serialization(self):
        from qsvlab.pm_bounds import PMCertificate

        cert = PMCertificate(overlap=1.0, q0_pm_exact=None, q0_pm_floor150=0,
                             distance_at_q0=None)
        data = certificate_json_dict(cert)
        assert data["q0_pm_exact"] == "unbounded"
        assert data["distance_at_q0"] is None
