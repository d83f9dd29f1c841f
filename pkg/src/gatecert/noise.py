"""Standard noise families, random channels, and composition with a target gate.

Kraus sets, for noise strength p on n qubits:

* depolarizing_global: rho -> (1 - p) rho + p I / 2**n, realized by the
  uniform mixture of all 4**n phase/bit error products.  The two operators
  proportional to the identity are merged into one, so the set has exactly
  4**n elements with weights (1 - p + p/4**n) for the identity and p/4**n
  for everything else.
* dephasing_per_qubit: each qubit independently suffers a phase flip with
  probability p; the 2**n Kraus operators are the Z-type products with
  weights (1-p)**(n-k) p**k for k flipped qubits.
* bitflip_per_qubit: same construction with X in place of Z.
* phaseflip_per_qubit: alias of dephasing_per_qubit.
* random_cptp: a seeded random channel of chosen Kraus rank, drawn by
  orthonormalizing the columns of a complex Ginibre matrix so the stacked
  Kraus blocks form an exact isometry.

Operators with exactly zero weight are dropped, so p = 0 always yields the
single-operator identity channel.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import Channel
from .core import CapacityError, GateSpec, _error_matrix
from .tolerances import MAX_QUBITS

__all__ = ["NOISE_KINDS", "NoiseSpec", "make_noise", "random_cptp", "noisy_gate"]

NOISE_KINDS = (
    "depolarizing_global",
    "dephasing_per_qubit",
    "bitflip_per_qubit",
    "phaseflip_per_qubit",
    "random_cptp",
)


@dataclass(frozen=True)
class NoiseSpec:
    """Parameters naming one member of the supported noise families."""

    kind: str
    strength: float = 0.0
    rank: int = 1
    seed: int = 0

    def __post_init__(self):
        if self.kind not in NOISE_KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}; expected one of {NOISE_KINDS}")
        if not 0.0 <= self.strength <= 1.0:
            raise ValueError(f"noise strength must lie in [0, 1], got {self.strength!r}")
        if self.rank < 1:
            raise ValueError(f"Kraus rank must be at least 1, got {self.rank!r}")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed!r}")


def _depolarizing_global(p: float, n_qubits: int) -> Channel:
    d = 1 << n_qubits
    count = 1 << (2 * n_qubits)
    uniform = p / count
    ops = []
    identity_weight = (1.0 - p) + uniform
    if identity_weight > 0.0:
        ops.append(np.sqrt(identity_weight) * np.eye(d))
    if uniform > 0.0:
        scale = np.sqrt(uniform)
        for a in range(1, count):
            ops.append(scale * _error_matrix(a >> n_qubits, a & (d - 1), n_qubits))
    return Channel(n_qubits, np.stack(ops))


def _independent_flip(p: float, n_qubits: int, phase: bool) -> Channel:
    ops = []
    for mask in range(1 << n_qubits):
        flipped = mask.bit_count()
        weight = (1.0 - p) ** (n_qubits - flipped) * p**flipped
        if weight == 0.0:
            continue
        matrix = _error_matrix(mask if phase else 0, 0 if phase else mask, n_qubits)
        ops.append(np.sqrt(weight) * matrix)
    return Channel(n_qubits, np.stack(ops))


def random_cptp(n_qubits: int, rank: int, seed: int) -> Channel:
    """Draw a random channel of the given Kraus rank, reproducibly from ``seed``.

    A (rank * 2**n) x 2**n complex Ginibre matrix is column-orthonormalized
    with a QR factorization; slicing the resulting isometry into rank blocks
    of 2**n rows yields Kraus operators satisfying sum K^dag K = I up to
    rounding.  The same seed always returns bit-identical operators.
    """
    d = 1 << n_qubits
    if not 1 <= rank <= d * d:
        raise ValueError(f"rank must lie in [1, {d * d}] for {n_qubits} qubit(s), got {rank}")
    rng = np.random.default_rng(seed)
    ginibre = rng.standard_normal((rank * d, d)) + 1j * rng.standard_normal((rank * d, d))
    isometry, _ = np.linalg.qr(ginibre)
    return Channel(n_qubits, isometry.reshape(rank, d, d))


def make_noise(spec: NoiseSpec, n_qubits: int) -> Channel:
    """Instantiate a noise family on ``n_qubits`` qubits."""
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be a positive integer, got {n_qubits!r}")
    if n_qubits > MAX_QUBITS:
        raise CapacityError(
            f"{n_qubits} qubit(s) exceeds the supported maximum of {MAX_QUBITS}; "
            f"the largest family would hold {1 << (2 * n_qubits)} dense operators"
        )
    if spec.kind == "depolarizing_global":
        return _depolarizing_global(spec.strength, n_qubits)
    if spec.kind in ("dephasing_per_qubit", "phaseflip_per_qubit"):
        return _independent_flip(spec.strength, n_qubits, phase=True)
    if spec.kind == "bitflip_per_qubit":
        return _independent_flip(spec.strength, n_qubits, phase=False)
    if spec.kind == "random_cptp":
        return random_cptp(n_qubits, spec.rank, spec.seed)
    raise ValueError(f"unknown noise kind {spec.kind!r}")  # unreachable after NoiseSpec validation


def noisy_gate(gate: GateSpec, spec: NoiseSpec) -> Channel:
    """The target gate followed by noise: Kraus operators N_k @ u00."""
    noise = make_noise(spec, gate.n_qubits)
    return Channel(gate.n_qubits, noise.kraus_ops @ gate.u00.elements)
