"""Numerical tolerances and capacity limits, collected in one place.

Every validation threshold used by the package lives here so that the
individual modules never hard-code their own magic numbers.  The defaults
reflect what double-precision arithmetic comfortably achieves for systems
of up to ``MAX_QUBITS`` qubits.
"""

from dataclasses import dataclass

__all__ = ["Tolerances", "TOL", "MAX_QUBITS"]


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances for the package's validation checks."""

    state_norm: float = 1e-10
    hermiticity: float = 1e-10
    trace_one: float = 1e-10
    psd_floor: float = -1e-9
    unitarity: float = 1e-10
    orthogonality: float = 1e-10
    completeness: float = 1e-10
    complementarity: float = 1e-12
    kraus_trace_preserving: float = 1e-9
    chi_hermiticity: float = 1e-9
    chi_diagonal: float = 1e-9
    chi_trace: float = 1e-9
    chi_psd_floor: float = -1e-8
    reconstruction: float = 1e-9
    imaginary_leak: float = 1e-10
    diagonal_identity: float = 1e-8
    probability_slack: float = 1e-10
    bound_slack: float = 1e-9
    # Pure phase noise makes the lower fidelity bound analytically tight, so
    # the two sides of the comparison are independently rounded copies of the
    # same real number; bound_dust absorbs that last-ulp disagreement.
    bound_dust: float = 1e-12
    commutation: float = 1e-10


TOL = Tolerances()

# The error basis for N qubits holds 4**N dense operators of size 2**N, so
# memory grows as 16**N.  Six qubits (4096 operators of size 64 x 64) is the
# largest configuration that stays desk-friendly.
MAX_QUBITS = 6
