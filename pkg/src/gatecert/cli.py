"""Command-line front end and the JSON report format.

Three subcommands:

* ``certify``: run the two-basis certification (exact or sampled) and write
  a JSON report.
* ``basis-check``: build the error basis for the chosen gate and verify its
  orthogonality, printing the worst residual.
* ``sample``: shorthand for a sampled certification run.

Exit codes: 0 on success, 1 on invalid input (malformed JSON, a non-unitary
gate matrix, a qubit count over capacity, bad flags), 2 when an internal
consistency check trips, which indicates a bug rather than a bad invocation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from .channel import Channel, ChiMatrix, kraus_to_chi
from .certify import FidelityReport, certify, ghz_chain_gate
from .core import CapacityError, ConsistencyError, GateSpec, build_error_basis
from .noise import NoiseSpec, noisy_gate
from .sampler import sampled_report
from .tolerances import TOL

__all__ = [
    "SCHEMA_VERSION",
    "RunConfig",
    "build_parser",
    "run_config_from_args",
    "matrix_to_pairs",
    "pairs_to_matrix",
    "chi_to_pairs",
    "report_to_dict",
    "report_from_dict",
    "cmd_certify",
    "cmd_basis_check",
    "cmd_sample",
    "main",
]

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_INCONSISTENT = 2

# Serialized chi entries smaller than this in magnitude are written as zero;
# in-memory matrices are never truncated.
CHI_SERIALIZATION_FLOOR = 1e-14

_BUILTIN_GATES = {"ghz-chain": ghz_chain_gate}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved settings for one command invocation."""

    gate: GateSpec
    noise: NoiseSpec | None = None
    mode: str = "exact"
    shots: int | None = None
    seed: int = 0
    output: str = "-"
    include_chi: bool = False

    def __post_init__(self):
        if self.mode not in ("exact", "sampled"):
            raise ValueError(f"mode must be 'exact' or 'sampled', got {self.mode!r}")
        if self.mode == "sampled" and (self.shots is None or self.shots < 1):
            raise ValueError("sampled mode needs a positive --shots value")
        if self.seed < 0:
            raise ValueError(f"seed must be non-negative, got {self.seed!r}")


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with the invalid-input code."""

    def error(self, message):
        self.exit(EXIT_INVALID_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gatecert", description="Certify noisy gates from two classical fidelities.")
    sub = parser.add_subparsers(dest="command", required=True)
    specs = (
        ("certify", "run the two-basis certification and write a JSON report"),
        ("basis-check", "verify orthogonality of the error basis for a gate"),
        ("sample", "run a finite-shot certification and write a JSON report"),
    )
    for name, help_text in specs:
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--gate", help='builtin gate name (registry: "ghz-chain")')
        cmd.add_argument("--qubits", type=int, help="qubit count for a builtin gate")
        cmd.add_argument("--noise", help="noise as kind:p, e.g. depolarizing_global:0.1")
        cmd.add_argument("--config", help="path to a JSON config supplying gate/noise/run settings")
        cmd.add_argument("--mode", choices=("exact", "sampled"), help="certification mode")
        cmd.add_argument("--shots", type=int, help="shots per input state in sampled mode")
        cmd.add_argument("--seed", type=int, help="seed for sampled runs")
        cmd.add_argument("--output", help='report destination path, or "-" for stdout')
        cmd.add_argument(
            "--include-chi",
            action="store_true",
            help="embed the serialized process matrix in the report",
        )
    return parser


def matrix_to_pairs(matrix: np.ndarray, zero_floor: float = 0.0) -> list:
    """Serialize a complex matrix as nested [re, im] pairs, row-major."""
    rows = []
    for row in np.asarray(matrix, dtype=np.complex128):
        rows.append(
            [
                [0.0, 0.0]
                if zero_floor and abs(value) < zero_floor
                else [float(value.real), float(value.imag)]
                for value in row
            ]
        )
    return rows


def pairs_to_matrix(rows) -> np.ndarray:
    """Inverse of matrix_to_pairs; raises ValueError on malformed nesting."""
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(
            "matrix must be a square grid of [re, im] pairs, "
            f"got an array of shape {arr.shape}"
        )
    return arr[..., 0] + 1j * arr[..., 1]


def chi_to_pairs(chi: ChiMatrix) -> list:
    """Process matrix as nested [re, im] pairs, phase-mask-major row order.

    Entries below the serialization floor in magnitude are written as zero.
    """
    return matrix_to_pairs(chi.entries, zero_floor=CHI_SERIALIZATION_FLOOR)


def _gate_from_settings(entry, flag_gate: str | None, flag_qubits: int | None) -> GateSpec:
    if flag_gate is not None:
        builder = _BUILTIN_GATES.get(flag_gate)
        if builder is None:
            raise ValueError(
                f"unknown builtin gate {flag_gate!r}; available: {sorted(_BUILTIN_GATES)}"
            )
        qubits = flag_qubits
        if qubits is None and isinstance(entry, dict):
            qubits = entry.get("qubits")
        if qubits is None:
            raise ValueError("a builtin gate needs --qubits")
        return builder(int(qubits))
    if entry is None:
        raise ValueError("no gate specified; pass --gate or a config with a gate entry")
    if not isinstance(entry, dict):
        raise ValueError(f"config gate entry must be an object, got {type(entry).__name__}")
    if "builtin" in entry:
        builder = _BUILTIN_GATES.get(entry["builtin"])
        if builder is None:
            raise ValueError(f"unknown builtin gate {entry['builtin']!r}")
        qubits = flag_qubits if flag_qubits is not None else entry.get("qubits")
        if qubits is None:
            raise ValueError("a builtin gate needs a qubit count")
        return builder(int(qubits))
    if "matrix" in entry:
        matrix = pairs_to_matrix(entry["matrix"])
        return GateSpec.from_matrix(matrix, name=entry.get("name"))
    raise ValueError("config gate entry must contain 'builtin' or 'matrix'")


def _noise_from_flag(text: str) -> NoiseSpec:
    kind, sep, value = text.partition(":")
    if kind == "random_cptp":
        raise ValueError("random_cptp noise needs a JSON config carrying rank and seed")
    if not sep or not value:
        raise ValueError(f"expected noise as kind:p, got {text!r}")
    return NoiseSpec(kind=kind, strength=float(value))


def _noise_from_entry(entry) -> NoiseSpec:
    if not isinstance(entry, dict) or "kind" not in entry:
        raise ValueError("config noise entry must be an object with a 'kind' field")
    kind = entry["kind"]
    if kind == "random_cptp":
        return NoiseSpec(kind=kind, rank=int(entry["rank"]), seed=int(entry["seed"]))
    return NoiseSpec(kind=kind, strength=float(entry["p"]))


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """Merge a JSON config (if any) with command-line flags; flags win."""
    settings = {}
    if args.config is not None:
        with open(args.config, encoding="utf-8") as handle:
            settings = json.load(handle)
        if not isinstance(settings, dict):
            raise ValueError("config file must contain a JSON object")
    gate = _gate_from_settings(settings.get("gate"), args.gate, args.qubits)
    if args.noise is not None:
        noise = _noise_from_flag(args.noise)
    elif settings.get("noise") is not None:
        noise = _noise_from_entry(settings["noise"])
    else:
        noise = None
    default_mode = "sampled" if args.command == "sample" else "exact"
    mode = args.mode or settings.get("mode") or default_mode
    if args.command == "sample":
        mode = "sampled"
    shots = args.shots if args.shots is not None else settings.get("shots")
    seed = args.seed if args.seed is not None else settings.get("seed", 0)
    output = args.output if args.output is not None else settings.get("output", "-")
    return RunConfig(
        gate=gate,
        noise=noise,
        mode=mode,
        shots=None if shots is None else int(shots),
        seed=int(seed),
        output=output,
        include_chi=bool(getattr(args, "include_chi", False)),
    )


def _channel_for(config: RunConfig) -> Channel:
    if config.noise is None:
        return Channel(config.gate.n_qubits, config.gate.u00.elements[np.newaxis])
    return noisy_gate(config.gate, config.noise)


def _noise_json(spec: NoiseSpec | None):
    if spec is None:
        return None
    if spec.kind == "random_cptp":
        return {"kind": spec.kind, "rank": spec.rank, "seed": spec.seed}
    return {"kind": spec.kind, "p": spec.strength}


def report_to_dict(report: FidelityReport, gate: GateSpec, noise: NoiseSpec | None) -> dict:
    """Flatten a report into the JSON document schema."""
    label = report.provenance
    doc = {
        "schema_version": SCHEMA_VERSION,
        "gate": {"name": gate.name, "qubits": gate.n_qubits},
        "noise": _noise_json(noise),
        "fz": report.fz,
        "fx": report.fx,
        "f_process_exact": report.f_process_exact,
        "lower_bound": report.lower_bound,
        "upper_bound": report.upper_bound,
        "capability_bound": report.capability_bound,
        "capability_certified": report.capability_certified,
        "ghz_expectation": report.ghz_expectation,
        "ghz_floor": report.ghz_floor,
        "violation_certified": report.violation_certified,
        "provenance": {
            "fz": label,
            "fx": label,
            "f_process_exact": "simulator ground truth",
        },
    }
    if report.provenance == "sampled":
        doc["fz_std_error"] = report.fz_std_error
        doc["fx_std_error"] = report.fx_std_error
        doc["counts"] = {
            basis: {str(n): int(c) for n, c in sorted(per_basis.items())}
            for basis, per_basis in report.counts.items()
        }
    return doc


def report_from_dict(doc: dict) -> FidelityReport:
    """Rebuild a FidelityReport from a parsed JSON document."""
    provenance = doc["provenance"]["fz"]
    counts = None
    if doc.get("counts") is not None:
        counts = {
            basis: {int(n): int(c) for n, c in per_basis.items()}
            for basis, per_basis in doc["counts"].items()
        }
    return FidelityReport(
        fz=doc["fz"],
        fx=doc["fx"],
        f_process_exact=doc["f_process_exact"],
        lower_bound=doc["lower_bound"],
        upper_bound=doc["upper_bound"],
        capability_bound=doc["capability_bound"],
        capability_certified=doc["capability_certified"],
        violation_certified=doc["violation_certified"],
        ghz_expectation=doc.get("ghz_expectation"),
        ghz_floor=doc.get("ghz_floor"),
        provenance=provenance,
        fz_std_error=doc.get("fz_std_error"),
        fx_std_error=doc.get("fx_std_error"),
        counts=counts,
    )


def _write_document(doc: dict, destination: str) -> None:
    text = json.dumps(doc, indent=2) + "\n"
    if destination == "-":
        sys.stdout.write(text)
    else:
        with open(destination, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_certify(config: RunConfig) -> int:
    """Certify the configured gate-plus-noise channel and write the report."""
    channel = _channel_for(config)
    if config.mode == "sampled":
        report = sampled_report(channel, config.gate, config.shots, config.seed)
    else:
        report = certify(channel, config.gate)
    doc = report_to_dict(report, config.gate, config.noise)
    if config.include_chi:
        doc["chi"] = chi_to_pairs(kraus_to_chi(channel, config.gate))
    _write_document(doc, config.output)
    return EXIT_OK


def cmd_basis_check(config: RunConfig) -> int:
    """Build the error basis for the configured gate and report its worst residual."""
    basis = build_error_basis(config.gate)
    residual = basis.gram_residual()
    passed = residual < TOL.orthogonality
    print(f"operators: {len(basis)}")
    print(f"max orthogonality residual: {residual:.6e}")
    print("PASS" if passed else "FAIL")
    return EXIT_OK if passed else EXIT_INVALID_INPUT


def cmd_sample(config: RunConfig) -> int:
    """Finite-shot certification; equivalent to certify with --mode sampled."""
    return cmd_certify(config)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = run_config_from_args(args)
        if args.command == "certify":
            return cmd_certify(config)
        if args.command == "basis-check":
            return cmd_basis_check(config)
        return cmd_sample(config)
    except ConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT


if __name__ == "__main__":
    sys.exit(main())
