import numpy as np
import pytest

from gatecert.channel import Channel, apply_channel, kraus_to_chi, process_fidelity
from gatecert.core import (
    CapacityError,
    ConsistencyError,
    DensityMatrix,
    GateSpec,
    build_error_basis,
    complementary_ket,
    computational_ket,
)
from gatecert.certify import (
    CAPABILITY_THRESHOLD,
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
from gatecert.noise import NoiseSpec, noisy_gate, random_cptp
from _oracles import haar_unitary

CNOT = np.array(
    [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
    ],
    dtype=float,
)
HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)


def unitary_channel(matrix):
    return Channel(int(np.log2(matrix.shape[0])), np.asarray(matrix, dtype=complex)[np.newaxis])


def ghz_state(n_qubits):
    amp = np.zeros(2**n_qubits, dtype=complex)
    amp[0] = amp[-1] = 1 / np.sqrt(2)
    return amp


def test_ideal_outputs_of_the_identity_are_the_inputs():
    gate = GateSpec.identity(2)
    for n, ket in enumerate(ideal_outputs(gate, "z")):
        assert np.array_equal(ket.amplitudes, computational_ket(n, 2).amplitudes)
    for n, ket in enumerate(ideal_outputs(gate, "x")):
        assert np.allclose(ket.amplitudes, complementary_ket(n, 2).amplitudes)


def test_cnot_truth_table_in_the_computational_basis():
    gate = ghz_chain_gate(2)
    outputs = ideal_outputs(gate, "z")
    truth = {0: 0, 1: 1, 2: 3, 3: 2}
    for n, m in truth.items():
        assert np.allclose(outputs[n].amplitudes, computational_ket(m, 2).amplitudes)


def test_cnot_label_map_in_the_complementary_basis():
    # in the complementary basis the roles invert: the second label flows
    # into the first, (x1, x2) -> (x1 xor x2, x2), with no extra phases
    gate = ghz_chain_gate(2)
    outputs = ideal_outputs(gate, "x")
    for n in range(4):
        x1, x2 = n >> 1, n & 1
        mapped = ((x1 ^ x2) << 1) | x2
        assert np.allclose(outputs[n].amplitudes, complementary_ket(mapped, 2).amplitudes, atol=1e-12)


def test_classical_fidelity_of_the_perfect_gate():
    gate = ghz_chain_gate(3)
    ch = unitary_channel(gate.u00.elements)
    for basis in ("z", "x"):
        table, fidelity = classical_fidelity(ch, gate, basis)
        assert fidelity == pytest.approx(1.0, abs=1e-12)
        assert np.allclose(table.probabilities, 1.0, atol=1e-12)


def test_classical_fidelity_closed_form_under_depolarizing():
    # survival of a basis state is (1 - p) + p / 2**n, averaged over inputs
    gate = ghz_chain_gate(3)
    for p in (0.1, 0.4, 0.9):
        ch = noisy_gate(gate, NoiseSpec("depolarizing_global", p))
        for basis in ("z", "x"):
            _, fidelity = classical_fidelity(ch, gate, basis)
            assert fidelity == pytest.approx(1 - 7 * p / 8, abs=1e-12)


def test_phase_noise_before_the_gate_is_invisible_in_z():
    # diagonal phase factors on the inputs never move probability between
    # computational outcomes, whatever the gate
    rng = np.random.default_rng(23)
    gate = GateSpec.from_matrix(haar_unitary(rng, 8))
    weights = rng.dirichlet(np.ones(4))
    kraus = np.stack(
        [
            np.sqrt(w) * gate.u00.elements @ np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 8)))
            for w in weights
        ]
    )
    _, fz = classical_fidelity(Channel(3, kraus), gate, "z")
    assert fz == pytest.approx(1.0, abs=1e-10)


def test_bit_type_noise_before_the_gate_is_invisible_in_x():
    # same statement with the roles of the bases swapped: operators diagonal
    # in the complementary basis leave fx at 1
    rng = np.random.default_rng(24)
    h2 = np.kron(HADAMARD, HADAMARD)
    gate = GateSpec.from_matrix(haar_unitary(rng, 4))
    weights = rng.dirichlet(np.ones(3))
    kraus = np.stack(
        [
            np.sqrt(w)
            * gate.u00.elements
            @ (h2 @ np.diag(np.exp(1j * rng.uniform(0, 2 * np.pi, 4))) @ h2)
            for w in weights
        ]
    )
    _, fx = classical_fidelity(Channel(2, kraus), gate, "x")
    assert fx == pytest.approx(1.0, abs=1e-10)


def test_phase_error_after_the_chain_gate_breaks_only_fx():
    # Z on the control commutes with the chain, so it acts as an input phase:
    # fz stays at 1 while fx drops to 1 - p
    gate = ghz_chain_gate(3)
    p = 0.3
    z_control = np.kron(np.diag([1.0, -1.0]), np.eye(4))
    kraus = np.stack(
        [np.sqrt(1 - p) * gate.u00.elements, np.sqrt(p) * z_control @ gate.u00.elements]
    )
    ch = Channel(3, kraus)
    _, fz = classical_fidelity(ch, gate, "z")
    _, fx = classical_fidelity(ch, gate, "x")
    assert fz == pytest.approx(1.0, abs=1e-10)
    assert fx == pytest.approx(1 - p, abs=1e-10)


def test_transfer_table_validation():
    with pytest.raises(ValueError):
        TransferTable("y", np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        TransferTable("z", np.array([0.5, 1.5]))
    with pytest.raises(ValueError):
        TransferTable("z", np.array([0.5, 0.5, 0.5]))


def test_diagonal_identity_residuals_are_tiny():
    gate = ghz_chain_gate(2)
    for seed in range(25):
        ch_raw = random_cptp(2, rank=1 + seed % 16, seed=seed)
        ch = Channel(2, ch_raw.kraus_ops @ gate.u00.elements)
        rz, rx = verify_diagonal_identity(ch, gate)
        assert rz < 1e-12 and rx < 1e-12


def test_fidelity_bounds_values():
    assert fidelity_bounds(1.0, 1.0) == (1.0, 1.0)
    lower, upper = fidelity_bounds(0.825, 0.825)
    assert lower == pytest.approx(0.65)
    assert upper == pytest.approx(0.825)
    lower, _ = fidelity_bounds(0.4, 0.3)
    assert lower == pytest.approx(-0.3)  # deliberately unclamped
    with pytest.raises(ValueError):
        fidelity_bounds(1.2, 0.5)


def test_ghz_chain_on_two_qubits_is_cnot():
    assert np.array_equal(ghz_chain_gate(2).u00.elements, CNOT)
    with pytest.raises(ValueError):
        ghz_chain_gate(1)


def test_ghz_chain_flips_targets_iff_control_set():
    gate = ghz_chain_gate(3)
    u = gate.u00.elements
    for n in range(8):
        out = np.flatnonzero(u[:, n])
        expected = n if n < 4 else 4 + (7 - n)
        assert list(out) == [expected]


def test_entangling_input_reaches_the_ghz_state():
    for n_qubits in (2, 3, 4):
        gate = ghz_chain_gate(n_qubits)
        ket = entangling_input(n_qubits)
        out = gate.u00.elements @ ket.amplitudes
        assert np.allclose(out, ghz_state(n_qubits), atol=1e-12)


def test_capability_bound_values_and_strict_threshold():
    bound, certified = capability_bound(1.0, 1.0)
    assert bound == pytest.approx(1.0) and certified
    bound, certified = capability_bound(0.75, 0.75)
    assert bound == pytest.approx(0.0) and not certified  # equality must not certify
    _, certified = capability_bound(0.7501, 0.7501)
    assert certified
    assert (0.75 + 0.75) / 2 == CAPABILITY_THRESHOLD


def test_ghz_correlation_extremes():
    ghz = DensityMatrix(3, np.outer(ghz_state(3), ghz_state(3).conj()))
    assert ghz_correlation(ghz) == pytest.approx(4.0, abs=1e-10)
    mixed = DensityMatrix(3, np.eye(8) / 8)
    assert ghz_correlation(mixed) == pytest.approx(0.0, abs=1e-12)
    basis_state = computational_ket(5, 3).density()
    assert ghz_correlation(basis_state) == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        ghz_correlation(computational_ket(0, 2).density())


def test_ghz_correlation_is_linear_in_the_state():
    rng = np.random.default_rng(31)
    ghz = np.outer(ghz_state(3), ghz_state(3).conj())
    other = np.eye(8) / 8
    for alpha in rng.uniform(0, 1, 5):
        blend = DensityMatrix(3, alpha * ghz + (1 - alpha) * other)
        parts = alpha * ghz_correlation(DensityMatrix(3, ghz)) + (1 - alpha) * ghz_correlation(
            DensityMatrix(3, other)
        )
        assert ghz_correlation(blend) == pytest.approx(parts, abs=1e-10)


def test_ghz_floor_values():
    assert ghz_floor(1.0) == pytest.approx(4.0)
    assert ghz_floor(0.75) == pytest.approx(2.0)
    assert ghz_floor(0.5) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        ghz_floor(1.5)


def test_certify_perfect_chain():
    gate = ghz_chain_gate(3)
    report = certify(unitary_channel(gate.u00.elements), gate)
    assert report.fz == pytest.approx(1.0, abs=1e-12)
    assert report.fx == pytest.approx(1.0, abs=1e-12)
    assert report.f_process_exact == pytest.approx(1.0, abs=1e-12)
    assert report.capability_certified and report.violation_certified
    assert report.ghz_expectation == pytest.approx(4.0, abs=1e-10)
    assert report.ghz_floor == pytest.approx(4.0, abs=1e-9)
    assert report.provenance == "exact"


def test_certify_depolarized_chain_closed_forms():
    gate = ghz_chain_gate(3)
    report = certify(noisy_gate(gate, NoiseSpec("depolarizing_global", 0.1)), gate)
    assert report.fz == pytest.approx(0.9125, abs=1e-9)
    assert report.fx == pytest.approx(0.9125, abs=1e-9)
    assert report.f_process_exact == pytest.approx(1 - 63 * 0.1 / 64, abs=1e-9)
    assert report.ghz_expectation == pytest.approx(3.6, abs=1e-9)
    assert report.capability_certified and report.violation_certified

    report = certify(noisy_gate(gate, NoiseSpec("depolarizing_global", 0.2)), gate)
    assert report.capability_certified and not report.violation_certified


def test_certify_reports_no_correlation_outside_the_three_qubit_chain():
    cnot = ghz_chain_gate(2)
    report = certify(unitary_channel(cnot.u00.elements), cnot)
    assert report.ghz_expectation is None and report.ghz_floor is None
    identity = GateSpec.identity(3)
    report = certify(unitary_channel(np.eye(8)), identity)
    assert report.ghz_expectation is None and report.ghz_floor is None
    assert ghz_summary(unitary_channel(np.eye(8)), identity, 1.0) == (None, None)


def test_bound_sandwich_on_random_channels():
    # 1000 seeded random channels across both sizes, plus every named noise
    # family on a grid; the lower side allows only last-ulp dust while the
    # upper side gets the usual slack.
    for n_qubits, count, seed_base in ((2, 650, 21000), (3, 350, 23000)):
        gate = ghz_chain_gate(n_qubits)
        basis = build_error_basis(gate)
        channels = [
            Channel(
                n_qubits,
                random_cptp(n_qubits, rank=1 + k % 4**n_qubits, seed=seed_base + k).kraus_ops
                @ gate.u00.elements,
            )
            for k in range(count)
        ]
        for kind in (
            "depolarizing_global",
            "dephasing_per_qubit",
            "bitflip_per_qubit",
            "phaseflip_per_qubit",
        ):
            channels.extend(noisy_gate(gate, NoiseSpec(kind, k / 10)) for k in range(11))
        for ch in channels:
            _, fz = classical_fidelity(ch, gate, "z")
            _, fx = classical_fidelity(ch, gate, "x")
            chi = kraus_to_chi(ch, gate, basis)
            fp = process_fidelity(chi)
            diag = np.diagonal(chi.entries).real
            d = 1 << n_qubits
            assert abs(fz - diag[::d].sum()) < 1e-8
            assert abs(fx - diag[:d].sum()) < 1e-8
            assert fz + fx - 1.0 <= fp + 1e-12
            assert fp <= min(fz, fx) + 1e-9


def test_certify_reports_stay_internally_consistent_on_random_channels():
    gate = ghz_chain_gate(2)
    for seed in range(100):
        ch_raw = random_cptp(2, rank=1 + seed % 16, seed=1000 + seed)
        ch = Channel(2, ch_raw.kraus_ops @ gate.u00.elements)
        report = certify(ch, gate)
        assert report.lower_bound <= report.f_process_exact + 1e-12
        assert report.f_process_exact <= report.upper_bound + 1e-9


def test_certified_flags_are_sound():
    # whenever a flag is raised, the thing it certifies must actually hold
    gate = ghz_chain_gate(3)
    ghz = ghz_state(3)
    for p in np.linspace(0.0, 1.0, 11):
        ch = noisy_gate(gate, NoiseSpec("depolarizing_global", float(p)))
        report = certify(ch, gate)
        rho_out = apply_channel(ch, entangling_input(3).density())
        if report.capability_certified:
            overlap = float(np.vdot(ghz, rho_out.elements @ ghz).real)
            assert overlap > 0.5
        if report.violation_certified:
            assert abs(report.ghz_expectation) > 2.0


def test_certify_fails_fast_over_capacity():
    # the capacity error must come from the decomposition step, before any
    # per-basis-state simulation has a chance to grind
    gate = GateSpec.identity(7)
    ch = Channel(7, np.eye(128, dtype=complex)[np.newaxis])
    with pytest.raises(CapacityError):
        certify(ch, gate)


def test_report_rejects_an_escaped_sandwich():
    with pytest.raises(ConsistencyError):
        FidelityReport(
            fz=0.9,
            fx=0.9,
            f_process_exact=0.95,  # above min(fz, fx)
            lower_bound=0.8,
            upper_bound=0.9,
            capability_bound=2 * 0.9 + 2 * 0.9 - 3,
            capability_certified=True,
            violation_certified=True,
        )
    with pytest.raises(ConsistencyError):
        FidelityReport(
            fz=0.9,
            fx=0.9,
            f_process_exact=0.75,  # below fz + fx - 1
            lower_bound=0.8,
            upper_bound=0.9,
            capability_bound=2 * 0.9 + 2 * 0.9 - 3,
            capability_certified=True,
            violation_certified=True,
        )


def test_report_rejects_inconsistent_capability_bound():
    with pytest.raises(ConsistencyError):
        FidelityReport(
            fz=0.9,
            fx=0.9,
            f_process_exact=0.85,
            lower_bound=0.8,
            upper_bound=0.9,
            capability_bound=0.5,
            capability_certified=True,
            violation_certified=True,
        )


def test_report_rejects_half_populated_correlation_fields():
    with pytest.raises(ValueError):
        FidelityReport(
            fz=1.0,
            fx=1.0,
            f_process_exact=1.0,
            lower_bound=1.0,
            upper_bound=1.0,
            capability_bound=1.0,
            capability_certified=True,
            violation_certified=True,
            ghz_expectation=4.0,
            ghz_floor=None,
        )


def test_violation_verdict_is_strict():
    assert not violation_verdict(VIOLATION_THRESHOLD, VIOLATION_THRESHOLD)
    assert violation_verdict(0.876, 0.876)
    assert not violation_verdict(1.0, 0.75)  # average exactly at the line
    with pytest.raises(ValueError):
        violation_verdict(1.1, 0.5)
