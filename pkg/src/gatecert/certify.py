"""Two-basis classical fidelities and what they certify about a noisy gate.

The certification rests on three facts about a channel E with target
unitary u00, stated over the gate-relative process matrix chi:

* The computational-basis transfer fidelity equals the chi-diagonal sum over
  phase-only errors, and the complementary-basis transfer fidelity equals
  the sum over bit-only errors.  Each is measurable with product inputs and
  local projective readout.
* Their combination sandwiches the process fidelity:
  fz + fx - 1 <= chi_00 <= min(fz, fx).
* For entangling chain gates the sandwich converts into operational
  statements: a lower bound of 2(fz + fx) - 3 on the entanglement
  capability (certified when (fz + fx)/2 > 3/4), and for three qubits a
  floor of 8 chi_00 - 4 on a four-term three-party correlation whose
  classical ceiling is 2 (violation certified when (fz + fx)/2 > 7/8).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .channel import Channel, ChiMatrix, apply_channel, kraus_to_chi, process_fidelity
from .core import (
    ConsistencyError,
    DensityMatrix,
    GateSpec,
    Ket,
    Operator,
    PAULI_X,
    PAULI_Y,
    complementary_ket,
    computational_ket,
)
from .tolerances import TOL

__all__ = [
    "BASES",
    "CAPABILITY_THRESHOLD",
    "VIOLATION_THRESHOLD",
    "CLASSICAL_CORRELATION_CEILING",
    "TransferTable",
    "FidelityReport",
    "ideal_outputs",
    "classical_fidelity",
    "verify_diagonal_identity",
    "fidelity_bounds",
    "ghz_chain_gate",
    "entangling_input",
    "capability_bound",
    "violation_verdict",
    "ghz_correlation",
    "ghz_floor",
    "ghz_summary",
    "certify",
]

BASES = ("z", "x")

# Certification thresholds on (fz + fx)/2, both strict.
CAPABILITY_THRESHOLD = 3.0 / 4.0
VIOLATION_THRESHOLD = 7.0 / 8.0

# Any local-realistic model keeps the four-term correlation within +/- 2.
CLASSICAL_CORRELATION_CEILING = 2.0


def _kron_all(*matrices: np.ndarray) -> np.ndarray:
    return reduce(np.kron, matrices)


# XXX - XYY - YXY - YYX, the three-qubit correlation combination whose
# quantum extremes are +/- 4.
_CORRELATION_OP = (
    _kron_all(PAULI_X, PAULI_X, PAULI_X)
    - _kron_all(PAULI_X, PAULI_Y, PAULI_Y)
    - _kron_all(PAULI_Y, PAULI_X, PAULI_Y)
    - _kron_all(PAULI_Y, PAULI_Y, PAULI_X)
)


@dataclass(frozen=True)
class TransferTable:
    """Per-input success probabilities for one measurement basis.

    Entry n is the probability that the channel output for basis state n
    lands in the ideal image of that state.
    """

    basis: str
    probabilities: np.ndarray

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}, got {self.basis!r}")
        probs = np.array(self.probabilities, dtype=float)
        count = probs.shape[0] if probs.ndim == 1 else 0
        if probs.ndim != 1 or count < 2 or count & (count - 1):
            raise ValueError(f"expected a power-of-two probability vector, got shape {probs.shape}")
        low = float(np.min(probs))
        high = float(np.max(probs))
        if low < -TOL.probability_slack or high > 1.0 + TOL.probability_slack:
            raise ValueError(f"probabilities outside [0, 1]: min {low!r}, max {high!r}")
        # Values a few ulps outside [0, 1] are rounding artifacts of exact
        # probabilities; store them clipped so downstream means and shot draws
        # never see an out-of-range number.
        probs = np.clip(probs, 0.0, 1.0)
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)


@dataclass(frozen=True)
class FidelityReport:
    """Everything the two transfer fidelities certify about one channel.

    ``f_process_exact`` always comes from the process-matrix decomposition
    (simulator ground truth); ``fz``/``fx`` are exact transfer fidelities or
    finite-shot estimates depending on ``provenance``.  The three-party
    correlation fields are populated only for the 3-qubit entangling chain.
    """

    fz: float
    fx: float
    f_process_exact: float
    lower_bound: float
    upper_bound: float
    capability_bound: float
    capability_certified: bool
    violation_certified: bool
    ghz_expectation: float | None = None
    ghz_floor: float | None = None
    provenance: str = "exact"
    fz_std_error: float | None = None
    fx_std_error: float | None = None
    counts: dict | None = None

    def __post_init__(self):
        if self.provenance not in ("exact", "sampled"):
            raise ValueError(f"provenance must be 'exact' or 'sampled', got {self.provenance!r}")
        if (self.ghz_expectation is None) != (self.ghz_floor is None):
            raise ValueError("correlation expectation and floor must be reported together")
        expected_cap = 2.0 * self.fz + 2.0 * self.fx - 3.0
        if abs(self.capability_bound - expected_cap) > 1e-12:
            raise ConsistencyError(
                f"capability bound {self.capability_bound!r} disagrees with 2(fz + fx) - 3"
            )
        if self.provenance == "exact":
            if not (
                self.lower_bound - TOL.bound_dust
                <= self.f_process_exact
                <= self.upper_bound + TOL.bound_slack
            ):
                raise ConsistencyError(
                    "process fidelity escaped its bounds: "
                    f"{self.lower_bound!r} <= {self.f_process_exact!r} "
                    f"<= {self.upper_bound!r} failed"
                )


def _input_ket(index: int, n_qubits: int, basis: str) -> Ket:
    if basis == "z":
        return computational_ket(index, n_qubits)
    return complementary_ket(index, n_qubits)


def ideal_outputs(gate: GateSpec, basis: str) -> list[Ket]:
    """Images of the chosen product basis under the ideal gate, in index order."""
    if basis not in BASES:
        raise ValueError(f"basis must be one of {BASES}, got {basis!r}")
    u = gate.u00.elements
    return [
        Ket(gate.n_qubits, u @ _input_ket(n, gate.n_qubits, basis).amplitudes)
        for n in range(1 << gate.n_qubits)
    ]


def classical_fidelity(channel: Channel, gate: GateSpec, basis: str) -> tuple[TransferTable, float]:
    """Mean probability that channel outputs land in the ideal gate images.

    Feeds every state of the chosen product basis through the channel and
    projects onto the corresponding ideal output.  The mean over the 2**n
    inputs is the transfer fidelity for that basis.
    """
    if channel.n_qubits != gate.n_qubits:
        raise ValueError(
            f"channel acts on {channel.n_qubits} qubit(s) but the gate has {gate.n_qubits}"
        )
    targets = ideal_outputs(gate, basis)
    probs = np.empty(1 << gate.n_qubits)
    for n, target in enumerate(targets):
        rho_out = apply_channel(channel, _input_ket(n, gate.n_qubits, basis).density())
        probs[n] = float(np.vdot(target.amplitudes, rho_out.elements @ target.amplitudes).real)
    table = TransferTable(basis, probs)
    return table, float(np.mean(table.probabilities))


def _chi_diagonal_sums(chi: ChiMatrix) -> tuple[float, float]:
    """(sum over phase-only errors, sum over bit-only errors) of the chi diagonal."""
    d = 1 << chi.gate.n_qubits
    diag = np.diagonal(chi.entries).real
    return float(np.sum(diag[::d])), float(np.sum(diag[:d]))


def _require_diagonal_identity(fz: float, fx: float, chi: ChiMatrix) -> tuple[float, float]:
    phase_sum, bit_sum = _chi_diagonal_sums(chi)
    residual_z = abs(fz - phase_sum)
    residual_x = abs(fx - bit_sum)
    if residual_z > TOL.diagonal_identity or residual_x > TOL.diagonal_identity:
        raise ConsistencyError(
            "transfer fidelities disagree with the process-matrix diagonal sums: "
            f"|fz - sum| = {residual_z:.3e}, |fx - sum| = {residual_x:.3e}"
        )
    return residual_z, residual_x


def verify_diagonal_identity(channel: Channel, gate: GateSpec) -> tuple[float, float]:
    """Cross-check the two independent fidelity computations; return the residuals.

    The transfer fidelities are simulated state by state, then compared with
    the phase-only and bit-only diagonal sums of the process matrix.  The two
    code paths share no intermediate results, so agreement is a strong check
    on both; disagreement raises ConsistencyError.
    """
    _, fz = classical_fidelity(channel, gate, "z")
    _, fx = classical_fidelity(channel, gate, "x")
    chi = kraus_to_chi(channel, gate)
    return _require_diagonal_identity(fz, fx, chi)


def _check_unit_interval(**named: float) -> None:
    for label, value in named.items():
        if not -TOL.probability_slack <= value <= 1.0 + TOL.probability_slack:
            raise ValueError(f"{label} must lie in [0, 1], got {value!r}")


def fidelity_bounds(fz: float, fx: float) -> tuple[float, float]:
    """Sandwich on the process fidelity: (fz + fx - 1, min(fz, fx)).

    The lower bound is returned unclamped, so it goes negative when the two
    fidelities are jointly poor; that keeps the bound arithmetic transparent.
    """
    _check_unit_interval(fz=fz, fx=fx)
    return fz + fx - 1.0, min(fz, fx)


def ghz_chain_gate(n_qubits: int) -> GateSpec:
    """Entangling chain on n qubits: flip every target iff the first qubit is 1.

    The unitary is |0><0| (x) I + |1><1| (x) X...X with qubit 0 as control.
    It maps the product input |0_x, 0_z, ..., 0_z> to the maximally
    entangled (|0...0> + |1...1>)/sqrt(2) state.
    """
    if n_qubits < 2:
        raise ValueError(f"the entangling chain needs at least 2 qubits, got {n_qubits!r}")
    half = 1 << (n_qubits - 1)
    u = np.zeros((2 * half, 2 * half), dtype=np.complex128)
    u[:half, :half] = np.eye(half)
    u[half:, half:] = np.fliplr(np.eye(half))
    return GateSpec(n_qubits, Operator(n_qubits, u, unitary=True), name="ghz-chain")


def entangling_input(n_qubits: int) -> Ket:
    """|0_x, 0_z, ..., 0_z>: the product state the chain gate turns maximally entangled."""
    if n_qubits < 2:
        raise ValueError(f"need at least 2 qubits, got {n_qubits!r}")
    amp = np.zeros(1 << n_qubits, dtype=np.complex128)
    amp[0] = amp[1 << (n_qubits - 1)] = 1.0 / np.sqrt(2.0)
    return Ket(n_qubits, amp)


def capability_bound(fz: float, fx: float) -> tuple[float, bool]:
    """Lower bound 2(fz + fx) - 3 on the entanglement capability, plus the verdict.

    The verdict is True exactly when (fz + fx)/2 > 3/4 strictly, i.e. when
    the bound certifies that some product input is mapped to an entangled
    output.
    """
    _check_unit_interval(fz=fz, fx=fx)
    bound = 2.0 * fz + 2.0 * fx - 3.0
    return bound, (fz + fx) / 2.0 > CAPABILITY_THRESHOLD


def violation_verdict(fz: float, fx: float) -> bool:
    """True exactly when (fz + fx)/2 > 7/8 strictly.

    Above that line the correlation floor exceeds the local-realistic
    ceiling of 2, so the two transfer fidelities alone certify a violation.
    """
    _check_unit_interval(fz=fz, fx=fx)
    return (fz + fx) / 2.0 > VIOLATION_THRESHOLD


def ghz_correlation(rho: DensityMatrix) -> float:
    """Expectation of XXX - XYY - YXY - YYX in a three-qubit state.

    Quantum mechanics allows values up to +/- 4; any local-realistic
    assignment of the four products stays within +/- 2.
    """
    if rho.n_qubits != 3:
        raise ValueError(f"the correlation is defined for 3 qubits, got {rho.n_qubits}")
    value = complex(np.trace(_CORRELATION_OP @ rho.elements))
    if abs(value.imag) > TOL.imaginary_leak:
        raise ConsistencyError(f"correlation has imaginary part {value.imag:.3e}")
    if abs(value.real) > 4.0 + TOL.bound_slack:
        raise ConsistencyError(f"correlation {value.real!r} exceeds the quantum ceiling of 4")
    return float(value.real)


def ghz_floor(f_process: float) -> float:
    """Guaranteed correlation magnitude 8 f - 4 implied by process fidelity f."""
    _check_unit_interval(f_process=f_process)
    return 8.0 * f_process - 4.0


def _is_ghz_chain_3(gate: GateSpec) -> bool:
    if gate.n_qubits != 3:
        return False
    reference = ghz_chain_gate(3).u00.elements
    return bool(np.allclose(gate.u00.elements, reference, rtol=0.0, atol=1e-12))


def ghz_summary(channel: Channel, gate: GateSpec, f_process: float) -> tuple[float | None, float | None]:
    """Measured three-party correlation and its floor, or (None, None).

    Populated only when the target is the 3-qubit entangling chain: the
    channel output for the entangling product input is scored against the
    correlation operator, and the floor follows from the process fidelity.
    """
    if not _is_ghz_chain_3(gate):
        return None, None
    rho_out = apply_channel(channel, entangling_input(3).density())
    return ghz_correlation(rho_out), ghz_floor(f_process)


def certify(channel: Channel, gate: GateSpec) -> FidelityReport:
    """Run the full two-basis certification of a channel against its target gate.

    Decomposes the channel into its process matrix, simulates both transfer
    fidelities (cross-checking the diagonal identities on the way), and
    assembles the bounds and verdicts into a report.  For the 3-qubit
    entangling chain the report also carries the measured three-party
    correlation and its fidelity floor.  The decomposition runs first so an
    over-capacity gate fails fast instead of after the basis-state sweeps.
    """
    chi = kraus_to_chi(channel, gate)
    f_process = process_fidelity(chi)
    _, fz = classical_fidelity(channel, gate, "z")
    _, fx = classical_fidelity(channel, gate, "x")
    _require_diagonal_identity(fz, fx, chi)
    lower, upper = fidelity_bounds(fz, fx)
    cap_bound, cap_ok = capability_bound(fz, fx)
    expectation, floor = ghz_summary(channel, gate, f_process)
    return FidelityReport(
        fz=fz,
        fx=fx,
        f_process_exact=f_process,
        lower_bound=lower,
        upper_bound=upper,
        capability_bound=cap_bound,
        capability_certified=cap_ok,
        violation_certified=violation_verdict(fz, fx),
        ghz_expectation=expectation,
        ghz_floor=floor,
    )
