"""Immutable state and operator types, and the orthogonal error-operator basis.

Conventions, fixed once for the whole package:

* Qubit 0 is the leftmost tensor factor and the most significant bit of every
  basis-state index and every error mask.  Reading the binary expansion of an
  index left to right gives the per-qubit labels in qubit order.
* The per-qubit error factor combines a phase flip and a bit flip in the fixed
  order ``Z**z @ X**x``, so the combined (z=1, x=1) factor is
  ``[[0, 1], [-1, 0]]``, i.e. iY.
* A multi-qubit error operator is the tensor product of per-qubit factors.
  Because phase-type and bit-type factors acting on different qubits commute,
  this equals (product of all phase factors) @ (product of all bit factors).

All value types validate themselves on construction and hold read-only
arrays; operations on them are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .tolerances import MAX_QUBITS, TOL

__all__ = [
    "CapacityError",
    "ConsistencyError",
    "Ket",
    "DensityMatrix",
    "Operator",
    "GateSpec",
    "ErrorIndex",
    "ErrorBasis",
    "computational_ket",
    "complementary_ket",
    "single_qubit_error_factor",
    "error_operator",
    "build_error_basis",
]


class CapacityError(ValueError):
    """Requested qubit count exceeds the configured maximum."""


class ConsistencyError(RuntimeError):
    """Two internal code paths disagree; this signals a bug, not bad input."""


PAULI_I = np.eye(2, dtype=np.complex128)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


def _readonly(values, dtype=np.complex128) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def _check_qubit_count(n_qubits) -> int:
    if not isinstance(n_qubits, (int, np.integer)) or n_qubits < 1:
        raise ValueError(f"n_qubits must be a positive integer, got {n_qubits!r}")
    return int(n_qubits)


def _mask_bit(mask: int, qubit: int, n_qubits: int) -> int:
    """Bit of ``mask`` addressing ``qubit``, with qubit 0 as the most significant bit."""
    return (mask >> (n_qubits - 1 - qubit)) & 1


def _unitarity_residual(matrix: np.ndarray) -> float:
    gram = matrix.conj().T @ matrix
    return float(np.max(np.abs(gram - np.eye(matrix.shape[0]))))


@dataclass(frozen=True)
class Ket:
    """Pure state of ``n_qubits`` qubits, stored as 2**n_qubits amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        n = _check_qubit_count(self.n_qubits)
        amp = _readonly(self.amplitudes)
        if amp.shape != (1 << n,):
            raise ValueError(
                f"expected {1 << n} amplitudes for {n} qubit(s), got shape {amp.shape}"
            )
        norm_sq = float(np.vdot(amp, amp).real)
        if abs(norm_sq - 1.0) > TOL.state_norm:
            raise ValueError(f"state is not normalized: |psi|^2 = {norm_sq!r}")
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "amplitudes", amp)

    def density(self) -> "DensityMatrix":
        """Rank-one density matrix |psi><psi|."""
        return DensityMatrix(self.n_qubits, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Mixed state: Hermitian, unit-trace, positive semidefinite matrix."""

    n_qubits: int
    elements: np.ndarray

    def __post_init__(self):
        n = _check_qubit_count(self.n_qubits)
        mat = _readonly(self.elements)
        d = 1 << n
        if mat.shape != (d, d):
            raise ValueError(f"expected a {d} x {d} matrix, got shape {mat.shape}")
        herm = float(np.max(np.abs(mat - mat.conj().T)))
        if herm > TOL.hermiticity:
            raise ValueError(f"matrix is not Hermitian: max deviation {herm:.3e}")
        trace = complex(np.trace(mat))
        if abs(trace - 1.0) > TOL.trace_one:
            raise ValueError(f"trace must be 1, got {trace!r}")
        smallest = float(np.min(np.linalg.eigvalsh(mat)))
        if smallest < TOL.psd_floor:
            raise ValueError(f"matrix is not positive semidefinite: min eigenvalue {smallest:.3e}")
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "elements", mat)


@dataclass(frozen=True)
class Operator:
    """Square matrix acting on ``n_qubits`` qubits, optionally checked for unitarity."""

    n_qubits: int
    elements: np.ndarray
    unitary: bool = False

    def __post_init__(self):
        n = _check_qubit_count(self.n_qubits)
        mat = _readonly(self.elements)
        d = 1 << n
        if mat.shape != (d, d):
            raise ValueError(f"expected a {d} x {d} matrix, got shape {mat.shape}")
        if self.unitary:
            residual = _unitarity_residual(mat)
            if residual > TOL.unitarity:
                raise ValueError(f"matrix is not unitary: max residual {residual:.3e}")
        object.__setattr__(self, "n_qubits", n)
        object.__setattr__(self, "elements", mat)


@dataclass(frozen=True)
class GateSpec:
    """Target gate: the ideal unitary the noisy implementation is compared against."""

    n_qubits: int
    u00: Operator
    name: str | None = None

    def __post_init__(self):
        n = _check_qubit_count(self.n_qubits)
        if self.u00.n_qubits != n:
            raise ValueError(
                f"gate is declared on {n} qubit(s) but its unitary acts on {self.u00.n_qubits}"
            )
        residual = _unitarity_residual(self.u00.elements)
        if residual > TOL.unitarity:
            raise ValueError(f"gate matrix is not unitary: max residual {residual:.3e}")
        object.__setattr__(self, "n_qubits", n)

    @classmethod
    def from_matrix(cls, matrix, name: str | None = None) -> "GateSpec":
        """Build a GateSpec from a raw square matrix, inferring the qubit count."""
        mat = np.asarray(matrix, dtype=np.complex128)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"gate matrix must be square, got shape {mat.shape}")
        d = mat.shape[0]
        n = d.bit_length() - 1
        if d < 2 or (1 << n) != d:
            raise ValueError(f"gate dimension must be a power of two >= 2, got {d}")
        return cls(n, Operator(n, mat, unitary=True), name=name)

    @classmethod
    def identity(cls, n_qubits: int) -> "GateSpec":
        n = _check_qubit_count(n_qubits)
        return cls(n, Operator(n, np.eye(1 << n), unitary=True), name="identity")


@dataclass(frozen=True)
class ErrorIndex:
    """Pair of bit masks selecting one error operator.

    ``phase_mask`` bit k set means a phase flip acts on qubit k; ``amp_mask``
    bit k set means a bit flip acts on qubit k.  Mask bits address qubits with
    qubit 0 as the most significant bit, matching basis-state indices.
    """

    phase_mask: int
    amp_mask: int

    def __post_init__(self):
        for label, mask in (("phase_mask", self.phase_mask), ("amp_mask", self.amp_mask)):
            if not isinstance(mask, (int, np.integer)) or mask < 0:
                raise ValueError(f"{label} must be a non-negative integer, got {mask!r}")
        object.__setattr__(self, "phase_mask", int(self.phase_mask))
        object.__setattr__(self, "amp_mask", int(self.amp_mask))

    def validate_for(self, n_qubits: int) -> None:
        limit = 1 << n_qubits
        if self.phase_mask >= limit or self.amp_mask >= limit:
            raise ValueError(f"masks {self} out of range for {n_qubits} qubit(s)")

    def flat(self, n_qubits: int) -> int:
        """Row index of this error in the flattened basis: phase-mask-major."""
        self.validate_for(n_qubits)
        return (self.phase_mask << n_qubits) + self.amp_mask

    @classmethod
    def from_flat(cls, index: int, n_qubits: int) -> "ErrorIndex":
        if not 0 <= index < 1 << (2 * n_qubits):
            raise ValueError(f"flat index {index} out of range for {n_qubits} qubit(s)")
        return cls(index >> n_qubits, index & ((1 << n_qubits) - 1))


@dataclass(frozen=True)
class ErrorBasis:
    """All 4**n_qubits gate-relative error operators u00 @ Pi(i, j), stacked.

    Row ``a`` of ``operators`` holds the operator for the flat index
    ``a = (phase_mask << n_qubits) + amp_mask``.  Row 0 is the target unitary
    itself, stored bit-for-bit.
    """

    gate: GateSpec
    operators: np.ndarray

    def __post_init__(self):
        ops = _readonly(self.operators)
        n = self.gate.n_qubits
        d = 1 << n
        if ops.shape != (1 << (2 * n), d, d):
            raise ValueError(
                f"expected a ({1 << (2 * n)}, {d}, {d}) operator stack, got shape {ops.shape}"
            )
        if not np.array_equal(ops[0], self.gate.u00.elements):
            raise ValueError("row 0 of the basis must equal the target unitary exactly")
        object.__setattr__(self, "operators", ops)

    def __len__(self) -> int:
        return self.operators.shape[0]

    def operator(self, index: ErrorIndex) -> Operator:
        """The stacked operator addressed by a pair of masks."""
        n = self.gate.n_qubits
        return Operator(n, self.operators[index.flat(n)], unitary=True)

    def gram_residual(self) -> float:
        """Max deviation of Tr{U_a^dag U_b} from 2**n delta_ab over all pairs."""
        gram = np.einsum("aij,bij->ab", self.operators.conj(), self.operators)
        expected = (1 << self.gate.n_qubits) * np.eye(len(self))
        return float(np.max(np.abs(gram - expected)))


def computational_ket(index: int, n_qubits: int) -> Ket:
    """Basis state |index> in the computational (Z) basis."""
    n = _check_qubit_count(n_qubits)
    d = 1 << n
    if not 0 <= index < d:
        raise ValueError(f"basis index {index} out of range for {n} qubit(s)")
    amp = np.zeros(d, dtype=np.complex128)
    amp[index] = 1.0
    return Ket(n, amp)


def complementary_ket(index: int, n_qubits: int) -> Ket:
    """Product state |index> in the complementary (X) basis.

    Qubit k carries (|0> + (-1)**b_k |1>)/sqrt(2) where b_k is bit k of
    ``index``.  Every such state overlaps every computational basis state
    with probability (1/2)**n_qubits.
    """
    n = _check_qubit_count(n_qubits)
    if not 0 <= index < 1 << n:
        raise ValueError(f"basis index {index} out of range for {n} qubit(s)")
    plus = np.array([1.0, 1.0]) / np.sqrt(2.0)
    minus = np.array([1.0, -1.0]) / np.sqrt(2.0)
    factors = [minus if _mask_bit(index, k, n) else plus for k in range(n)]
    return Ket(n, reduce(np.kron, factors))


def single_qubit_error_factor(z_bit: int, x_bit: int) -> Operator:
    """One qubit's error factor Z**z_bit @ X**x_bit.

    The four cases are I, X, Z and ZX = [[0, 1], [-1, 0]] (i.e. iY); the fixed
    phase-after-bit-flip order pins the sign convention of the basis.
    """
    if z_bit not in (0, 1) or x_bit not in (0, 1):
        raise ValueError(f"factor bits must be 0 or 1, got z={z_bit!r}, x={x_bit!r}")
    left = PAULI_Z if z_bit else PAULI_I
    right = PAULI_X if x_bit else PAULI_I
    return Operator(1, left @ right, unitary=True)


def _error_matrix(phase_mask: int, amp_mask: int, n_qubits: int) -> np.ndarray:
    factors = [
        single_qubit_error_factor(
            _mask_bit(phase_mask, k, n_qubits), _mask_bit(amp_mask, k, n_qubits)
        ).elements
        for k in range(n_qubits)
    ]
    return reduce(np.kron, factors)


def error_operator(index: ErrorIndex, n_qubits: int) -> Operator:
    """Tensor product of per-qubit error factors selected by the two masks."""
    n = _check_qubit_count(n_qubits)
    index.validate_for(n)
    return Operator(n, _error_matrix(index.phase_mask, index.amp_mask, n), unitary=True)


def build_error_basis(gate: GateSpec, max_qubits: int = MAX_QUBITS) -> ErrorBasis:
    """Stack all 4**n gate-relative error operators u00 @ Pi(i, j).

    Raises CapacityError when the gate acts on more than ``max_qubits`` qubits,
    since the stack holds 4**n dense matrices of size 2**n.
    """
    n = gate.n_qubits
    if n > max_qubits:
        raise CapacityError(
            f"{n} qubit(s) exceeds the supported maximum of {max_qubits}; "
            f"the basis would hold {1 << (2 * n)} dense operators"
        )
    d = 1 << n
    u = gate.u00.elements
    stack = np.empty((1 << (2 * n), d, d), dtype=np.complex128)
    stack[0] = u
    for a in range(1, 1 << (2 * n)):
        stack[a] = u @ _error_matrix(a >> n, a & (d - 1), n)
    return ErrorBasis(gate, stack)
