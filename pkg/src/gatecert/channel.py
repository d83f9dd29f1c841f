"""Quantum channels in Kraus form and their gate-relative process matrices.

A channel E acts as E(rho) = sum_m K_m rho K_m^dag with
sum_m K_m^dag K_m = I.  Expanding each Kraus operator in the orthogonal
gate-relative error basis, K_m = sum_a c_{m,a} U_a with
c_{m,a} = Tr{U_a^dag K_m} / 2**n, gives the process matrix
chi_{a,b} = sum_m c_{m,a} c_{m,b}^*; then
E(rho) = sum_{a,b} chi_{a,b} U_a rho U_b^dag.  The entry chi_{0,0} is the
process fidelity of the channel with respect to the target gate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ConsistencyError, DensityMatrix, ErrorBasis, ErrorIndex, GateSpec, build_error_basis
from .tolerances import TOL

__all__ = [
    "Channel",
    "ChiMatrix",
    "ChannelValidation",
    "apply_channel",
    "kraus_to_chi",
    "process_fidelity",
    "error_probabilities",
    "validate_channel",
]


def _completeness_residual(kraus: np.ndarray) -> float:
    """Max-entry deviation of sum_m K_m^dag K_m from the identity."""
    total = np.einsum("mji,mjk->ik", kraus.conj(), kraus)
    return float(np.max(np.abs(total - np.eye(kraus.shape[-1]))))


@dataclass(frozen=True)
class Channel:
    """Completely positive trace-preserving map stored as a stack of Kraus operators."""

    n_qubits: int
    kraus_ops: np.ndarray

    def __post_init__(self):
        if not isinstance(self.n_qubits, (int, np.integer)) or self.n_qubits < 1:
            raise ValueError(f"n_qubits must be a positive integer, got {self.n_qubits!r}")
        n = int(self.n_qubits)
        kraus = np.array(self.kraus_ops, dtype=np.complex128)
        d = 1 << n
        if kraus.ndim != 3 or kraus.shape[1:] != (d, d):
            raise ValueError(
                f"expected a stack of {d} x {d} Kraus operators, got shape {kraus.shape}"
            )
        count = kraus.shape[0]
        if not 1 <= count <= 1 << (2 * n):
            raise ValueError(
                f"Kraus rank must lie in [1, {1 << (2 * n)}] for {n} qubit(s), got {count}"
            )
        residual = _completeness_residual(kraus)
        if residual > TOL.kraus_trace_preserving:
            raise ValueError(f"channel is not trace preserving: max residual {residual:.3e}")
        kraus.setflags(write=False)
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "kraus_ops", kraus)

    @property
    def rank(self) -> int:
        return self.kraus_ops.shape[0]


@dataclass(frozen=True)
class ChiMatrix:
    """Process matrix of a channel relative to a target gate.

    Rows and columns are addressed by the flat error index
    a = (phase_mask << n_qubits) + amp_mask.  The matrix is Hermitian,
    positive semidefinite and has unit trace; its diagonal is the error
    probability distribution.
    """

    gate: GateSpec
    entries: np.ndarray

    def __post_init__(self):
        mat = np.array(self.entries, dtype=np.complex128)
        q = 1 << (2 * self.gate.n_qubits)
        if mat.shape != (q, q):
            raise ValueError(f"expected a {q} x {q} process matrix, got shape {mat.shape}")
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > TOL.chi_hermiticity:
            raise ValueError(f"process matrix is not Hermitian: max deviation {herm:.3e}")
        diag = np.diagonal(mat)
        if float(np.max(np.abs(diag.imag))) > TOL.chi_diagonal:
            raise ValueError("process-matrix diagonal has a non-real entry")
        if float(np.min(diag.real)) < -TOL.chi_diagonal or float(np.max(diag.real)) > 1.0 + TOL.chi_diagonal:
            raise ValueError("process-matrix diagonal entries must lie in [0, 1]")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > TOL.chi_trace:
            raise ValueError(f"process matrix must have unit trace, got {trace!r}")
        smallest = float(np.min(np.linalg.eigvalsh(mat)))
        if smallest < TOL.chi_psd_floor:
            raise ValueError(
                f"process matrix is not positive semidefinite: min eigenvalue {smallest:.3e}"
            )
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)


@dataclass(frozen=True)
class ChannelValidation:
    """Diagnostic summary for a would-be Kraus decomposition."""

    completeness_residual: float
    operator_shapes: tuple
    passed: bool


def apply_channel(channel: Channel, rho: DensityMatrix) -> DensityMatrix:
    """E(rho) = sum_m K_m rho K_m^dag."""
    if channel.n_qubits != rho.n_qubits:
        raise ValueError(
            f"channel acts on {channel.n_qubits} qubit(s) but the state has {rho.n_qubits}"
        )
    out = np.einsum("mij,jk,mlk->il", channel.kraus_ops, rho.elements, channel.kraus_ops.conj())
    return DensityMatrix(channel.n_qubits, out)


def kraus_to_chi(channel: Channel, gate: GateSpec, basis: ErrorBasis | None = None) -> ChiMatrix:
    """Decompose a channel over the gate-relative error basis.

    Computes the expansion coefficients c_{m,a} = Tr{U_a^dag K_m} / 2**n and
    assembles chi = C^T C^*.  Before returning, every Kraus operator is
    reconstructed from its coefficients and compared against the original;
    a mismatch raises ConsistencyError because it can only come from a bug
    in the basis or the bookkeeping, not from user input.

    Passing a prebuilt ``basis`` for the same gate skips rebuilding it, which
    matters when decomposing many channels against one target.
    """
    if channel.n_qubits != gate.n_qubits:
        raise ValueError(
            f"channel acts on {channel.n_qubits} qubit(s) but the gate has {gate.n_qubits}"
        )
    if basis is None:
        basis = build_error_basis(gate)
    elif basis.gate is not gate and not np.array_equal(basis.gate.u00.elements, gate.u00.elements):
        raise ValueError("supplied basis was built for a different gate")
    d = 1 << gate.n_qubits
    coeffs = np.einsum("aij,mij->ma", basis.operators.conj(), channel.kraus_ops) / d
    rebuilt = np.einsum("ma,aij->mij", coeffs, basis.operators)
    residual = float(np.max(np.abs(rebuilt - channel.kraus_ops)))
    if residual > TOL.reconstruction:
        raise ConsistencyError(
            f"Kraus reconstruction from basis coefficients failed: max residual {residual:.3e}"
        )
    chi = coeffs.T @ coeffs.conj()
    return ChiMatrix(gate, chi)


def process_fidelity(chi: ChiMatrix) -> float:
    """The no-error weight chi_{00,00}: overlap of the channel with the target gate."""
    value = complex(chi.entries[0, 0])
    if abs(value.imag) > TOL.imaginary_leak:
        raise ConsistencyError(
            f"process fidelity has imaginary part {value.imag:.3e}; the decomposition is broken"
        )
    return float(value.real)


def error_probabilities(chi: ChiMatrix) -> dict[ErrorIndex, float]:
    """Diagonal of the process matrix keyed by (phase_mask, amp_mask) pairs.

    The values form a probability distribution over the discrete error set;
    their sum is the (unit) trace of the process matrix.
    """
    n = chi.gate.n_qubits
    diag = np.diagonal(chi.entries).real
    total = float(np.sum(diag))
    if abs(total - 1.0) > TOL.chi_trace:
        raise ConsistencyError(f"error probabilities sum to {total!r}, expected 1")
    return {ErrorIndex.from_flat(a, n): float(p) for a, p in enumerate(diag)}


def validate_channel(kraus_ops, tol: float = TOL.kraus_trace_preserving) -> ChannelValidation:
    """Check a raw Kraus list for trace preservation without constructing a Channel.

    Accepts a Channel, an operator stack, or a plain list of matrices, so it
    can diagnose inputs the Channel constructor would reject outright.
    """
    if isinstance(kraus_ops, Channel):
        ops = [np.asarray(k) for k in kraus_ops.kraus_ops]
    else:
        ops = [np.asarray(k, dtype=np.complex128) for k in kraus_ops]
    shapes = tuple(op.shape for op in ops)
    well_formed = (
        len(ops) > 0
        and all(op.ndim == 2 and op.shape[0] == op.shape[1] for op in ops)
        and len({op.shape for op in ops}) == 1
    )
    if not well_formed:
        return ChannelValidation(float("inf"), shapes, False)
    residual = _completeness_residual(np.stack(ops))
    return ChannelValidation(residual, shapes, residual <= tol)
