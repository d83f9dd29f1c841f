"""gatecert: certify noisy multi-qubit gates from two classical fidelities.

Simulate a noisy implementation of a target unitary as a Kraus channel,
measure how faithfully it maps two complementary product bases, and turn
those two numbers into rigorous bounds on the process fidelity, a lower
bound on the entanglement capability, and (for the 3-qubit entangling
chain) a certified violation of the local-realistic correlation ceiling.
"""

from .channel import (
    Channel,
    ChannelValidation,
    ChiMatrix,
    apply_channel,
    error_probabilities,
    kraus_to_chi,
    process_fidelity,
    validate_channel,
)
from .certify import (
    BASES,
    CAPABILITY_THRESHOLD,
    CLASSICAL_CORRELATION_CEILING,
    VIOLATION_THRESHOLD,
    FidelityReport,
    TransferTable,
    capability_bound,
    certify,
    classical_fidelity,
    entangling_input,
    fidelity_bounds,
    ghz_chain_gate,
    ghz_correlation,
    ghz_floor,
    ghz_summary,
    ideal_outputs,
    verify_diagonal_identity,
    violation_verdict,
)
from .core import (
    CapacityError,
    ConsistencyError,
    DensityMatrix,
    ErrorBasis,
    ErrorIndex,
    GateSpec,
    Ket,
    Operator,
    build_error_basis,
    complementary_ket,
    computational_ket,
    error_operator,
    single_qubit_error_factor,
)
from .noise import NOISE_KINDS, NoiseSpec, make_noise, noisy_gate, random_cptp
from .sampler import FidelityEstimate, ShotPlan, basis_subseed, sample_transfer, sampled_report
from .tolerances import MAX_QUBITS, TOL, Tolerances

__version__ = "0.1.0"

__all__ = [
    "BASES",
    "CAPABILITY_THRESHOLD",
    "CLASSICAL_CORRELATION_CEILING",
    "CapacityError",
    "Channel",
    "ChannelValidation",
    "ChiMatrix",
    "ConsistencyError",
    "DensityMatrix",
    "ErrorBasis",
    "ErrorIndex",
    "FidelityEstimate",
    "FidelityReport",
    "GateSpec",
    "Ket",
    "MAX_QUBITS",
    "NOISE_KINDS",
    "NoiseSpec",
    "Operator",
    "ShotPlan",
    "TOL",
    "Tolerances",
    "TransferTable",
    "VIOLATION_THRESHOLD",
    "apply_channel",
    "basis_subseed",
    "build_error_basis",
    "capability_bound",
    "certify",
    "classical_fidelity",
    "complementary_ket",
    "computational_ket",
    "entangling_input",
    "error_operator",
    "error_probabilities",
    "fidelity_bounds",
    "ghz_chain_gate",
    "ghz_correlation",
    "ghz_floor",
    "ghz_summary",
    "ideal_outputs",
    "kraus_to_chi",
    "make_noise",
    "noisy_gate",
    "process_fidelity",
    "random_cptp",
    "sample_transfer",
    "sampled_report",
    "single_qubit_error_factor",
    "validate_channel",
    "verify_diagonal_identity",
    "violation_verdict",
]
