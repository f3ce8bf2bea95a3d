"""Numerical laboratory for verification-cost bounds in linear-system solvers."""

from ._kernels import BACKEND
from .adversary import AdversarialPair, build_pair, certificate, decompose_b
from .instances import (
    QLSPInstance,
    Spectrum,
    inverse_norm,
    q0_general_bound,
    random_strict_instance,
    solve,
    susceptibility,
    worst_case_instance,
    worst_case_perturbed_pair,
)
from .linalg import (
    DensityState,
    StateVector,
    basis_state,
    inner,
    mixed_trace_distance,
    pure_trace_distance,
)
from .pm_bounds import pm_certificate, pm_lower_bound, pm_q0, tensor_power_distance
from .typical import (
    ConcentrationReport,
    chernoff_bounds,
    concentration_experiment,
    mgf_lambda_integral,
    sample_porter_thomas_state,
    sample_uniform_spectrum,
)
from .verifier import (
    TestState,
    VerifierOutcome,
    amplify64,
    amplify64_noisy_thresholds,
    make_test_state,
    p_success,
    run_verifier,
    swap_test_prob,
)
from .cost_hamiltonian import (
    GapReport,
    apply_cost_operator,
    cmin_estimate,
    cost,
    shots_to_resolve,
    spectral_gap,
)

__version__ = "0.1.0"

__all__ = [
    "AdversarialPair",
    "BACKEND",
    "ConcentrationReport",
    "DensityState",
    "GapReport",
    "QLSPInstance",
    "Spectrum",
    "StateVector",
    "TestState",
    "VerifierOutcome",
    "amplify64",
    "amplify64_noisy_thresholds",
    "apply_cost_operator",
    "basis_state",
    "build_pair",
    "certificate",
    "chernoff_bounds",
    "cmin_estimate",
    "concentration_experiment",
    "cost",
    "decompose_b",
    "inner",
    "inverse_norm",
    "make_test_state",
    "mgf_lambda_integral",
    "mixed_trace_distance",
    "p_success",
    "pm_certificate",
    "pm_lower_bound",
    "pm_q0",
    "pure_trace_distance",
    "q0_general_bound",
    "random_strict_instance",
    "run_verifier",
    "sample_porter_thomas_state",
    "sample_uniform_spectrum",
    "shots_to_resolve",
    "solve",
    "spectral_gap",
    "susceptibility",
    "swap_test_prob",
    "tensor_power_distance",
    "worst_case_instance",
    "worst_case_perturbed_pair",
]
