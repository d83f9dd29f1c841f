import numpy as np
import pytest

from gatecert.core import (
    CapacityError,
    DensityMatrix,
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
from _oracles import haar_unitary

I2 = np.eye(2)
X = np.array([[0.0, 1.0], [1.0, 0.0]])
Z = np.array([[1.0, 0.0], [0.0, -1.0]])
ZX = np.array([[0.0, 1.0], [-1.0, 0.0]])
CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=float,
)


def test_computational_ket_matches_unit_vectors():
    assert np.array_equal(computational_ket(0, 1).amplitudes, [1, 0])
    assert np.array_equal(computational_ket(2, 2).amplitudes, [0, 0, 1, 0])
    assert np.array_equal(computational_ket(5, 3).amplitudes, np.eye(8)[5])


def test_computational_ket_rejects_bad_index():
    with pytest.raises(ValueError):
        computational_ket(4, 2)
    with pytest.raises(ValueError):
        computational_ket(-1, 2)


def test_complementary_ket_single_qubit():
    root_half = 1 / np.sqrt(2)
    assert np.allclose(complementary_ket(0, 1).amplitudes, [root_half, root_half])
    assert np.allclose(complementary_ket(1, 1).amplitudes, [root_half, -root_half])


def test_complementary_ket_signs_follow_popcount():
    # amplitude on |m> is (-1)**popcount(n & m) / 2**(N/2)
    n_qubits = 3
    for n in range(8):
        amp = complementary_ket(n, n_qubits).amplitudes
        for m in range(8):
            expected = (-1) ** ((n & m).bit_count()) / 2 ** (n_qubits / 2)
            assert amp[m] == pytest.approx(expected, abs=1e-15)


def test_complementarity_between_the_two_bases():
    # every cross overlap has probability exactly (1/2)**N
    for n_qubits in (1, 2, 3, 4):
        target = 0.5**n_qubits
        for n in range(1 << n_qubits):
            amp = complementary_ket(n, n_qubits).amplitudes
            probs = np.abs(amp) ** 2
            assert np.max(np.abs(probs - target)) < 1e-12


def test_single_qubit_error_factors():
    assert np.array_equal(single_qubit_error_factor(0, 0).elements, I2)
    assert np.array_equal(single_qubit_error_factor(0, 1).elements, X)
    assert np.array_equal(single_qubit_error_factor(1, 0).elements, Z)
    # phase after bit flip: ZX = iY, sign convention pinned here
    assert np.array_equal(single_qubit_error_factor(1, 1).elements, ZX)
    with pytest.raises(ValueError):
        single_qubit_error_factor(2, 0)


def test_error_operator_identity_and_single_factors():
    assert np.array_equal(error_operator(ErrorIndex(0, 0), 3).elements, np.eye(8))
    assert np.array_equal(error_operator(ErrorIndex(1, 0), 1).elements, Z)
    assert np.array_equal(error_operator(ErrorIndex(0, 1), 1).elements, X)


def test_error_operator_two_qubit_hand_product():
    # masks address qubit 0 as the most significant bit, so amp_mask=1 puts
    # the bit flip on qubit 1 (the rightmost factor)
    got = error_operator(ErrorIndex(3, 1), 2).elements
    expected = np.kron(Z, Z) @ np.kron(I2, X)
    assert np.array_equal(got, expected)
    assert np.array_equal(got, np.kron(Z, Z @ X))


def test_error_operator_masks_out_of_range():
    with pytest.raises(ValueError):
        error_operator(ErrorIndex(4, 0), 2)
    with pytest.raises(ValueError):
        ErrorIndex(-1, 0)


def test_error_operators_are_unitary():
    for flat in range(16):
        op = error_operator(ErrorIndex.from_flat(flat, 2), 2)
        gram = op.elements.conj().T @ op.elements
        assert np.allclose(gram, np.eye(4), atol=1e-12)


def test_error_index_flat_round_trip():
    for flat in range(64):
        idx = ErrorIndex.from_flat(flat, 3)
        assert idx.flat(3) == flat


def test_basis_ordering_for_single_qubit_identity():
    basis = build_error_basis(GateSpec.identity(1))
    assert len(basis) == 4
    assert np.array_equal(basis.operators[0], I2)
    assert np.array_equal(basis.operators[1], X)
    assert np.array_equal(basis.operators[2], Z)
    assert np.array_equal(basis.operators[3], ZX)


def test_basis_row_zero_is_the_gate_itself():
    gate = GateSpec.from_matrix(CNOT, name="cnot")
    basis = build_error_basis(gate)
    assert np.array_equal(basis.operators[0], gate.u00.elements)


@pytest.mark.parametrize(
    "gate",
    [
        GateSpec.identity(1),
        GateSpec.identity(2),
        GateSpec.from_matrix(CNOT, name="cnot"),
    ],
)
def test_basis_orthogonality_exact_gates(gate):
    assert build_error_basis(gate).gram_residual() < 1e-10


def test_basis_orthogonality_random_gate():
    rng = np.random.default_rng(7)
    gate = GateSpec.from_matrix(haar_unitary(rng, 4))
    assert build_error_basis(gate).gram_residual() < 1e-10


def test_basis_operator_lookup():
    basis = build_error_basis(GateSpec.from_matrix(CNOT))
    op = basis.operator(ErrorIndex(2, 0))
    assert np.array_equal(op.elements, CNOT @ np.kron(Z, I2))


def test_basis_capacity_limit():
    with pytest.raises(CapacityError):
        build_error_basis(GateSpec.identity(7))
    with pytest.raises(CapacityError):
        build_error_basis(GateSpec.identity(3), max_qubits=2)


@pytest.mark.parametrize("n_qubits", [1, 2, 3])
def test_completeness_reconstruction(n_qubits):
    # any matrix decomposes as sum_a Tr{U_a^dag M} U_a / 2**N
    rng = np.random.default_rng(40 + n_qubits)
    d = 2**n_qubits
    gate = GateSpec.from_matrix(haar_unitary(rng, d))
    ops = build_error_basis(gate).operators
    m = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    coeffs = np.einsum("aij,ij->a", ops.conj(), m) / d
    rebuilt = np.einsum("a,aij->ij", coeffs, ops)
    assert np.max(np.abs(rebuilt - m)) < 1e-10


def test_ket_rejects_unnormalized_amplitudes():
    with pytest.raises(ValueError):
        Ket(1, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        Ket(2, np.array([1.0, 0.0]))


def test_ket_density_is_projector():
    rho = complementary_ket(1, 1).density()
    assert np.allclose(rho.elements, [[0.5, -0.5], [-0.5, 0.5]])


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(1, np.array([[0.5, 0.5j], [0.5j, 0.5]]))  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix(1, np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        DensityMatrix(1, np.array([[1.5, 0.0], [0.0, -0.5]]))  # negative eigenvalue


def test_operator_unitary_flag():
    Operator(1, np.array([[1.0, 1.0], [0.0, 1.0]]))  # fine unchecked
    with pytest.raises(ValueError):
        Operator(1, np.array([[1.0, 1.0], [0.0, 1.0]]), unitary=True)


def test_gate_spec_validation():
    with pytest.raises(ValueError):
        GateSpec.from_matrix(np.ones((2, 2)))
    with pytest.raises(ValueError):
        GateSpec.from_matrix(np.eye(3))  # not a power of two
    gate = GateSpec.from_matrix(np.eye(4))
    assert gate.n_qubits == 2


def test_value_arrays_are_read_only():
    ket = computational_ket(0, 1)
    with pytest.raises(ValueError):
        ket.amplitudes[0] = 2.0
    basis = build_error_basis(GateSpec.identity(1))
    with pytest.raises(ValueError):
        basis.operators[0, 0, 0] = 5.0
