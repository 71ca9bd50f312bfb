"""Command-line front end.

Subcommands: ``validate``, ``ce``, ``holevo``, ``bound``, ``additivity``,
``demo``, ``zoo``. Channels are described by a JSON file holding either a
named kind, ``{"kind": "depolarizing", "dim": 2, "params": {"p": 0.5}}``, or
an explicit Kraus set, ``{"dim_in": 2, "dim_out": 2, "kraus": [[[re, im],
...], ...]}`` with each operator a row-major list of [re, im] pairs.

Every run emits one JSON document on stdout (or CSV rows of the iteration
trace with ``--output csv`` on the optimizing commands). Numbers are printed
with 12 significant digits and the output embeds the seed, tolerance, and
the SHA-256 of the channel spec, so identical invocations produce
byte-identical output. Exit codes: 0 success, 1 malformed spec or invalid
channel, 2 bound violation found, 3 optimizer did not converge.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass

import numpy as np

from .channels import (
    CHANNEL_KINDS,
    ChannelValidationError,
    QuantumChannel,
    make_channel,
    validate,
    zoo_channels,
)
from .optimize import (
    ConvergenceError,
    check_additivity,
    check_cqfb_bound,
    compute_ce,
    compute_holevo,
)
from .protocols import (
    dense_coding_report,
    feedback_equivalence_demo,
    teleportation_report,
)

EXIT_OK = 0
EXIT_BAD_SPEC = 1
EXIT_VIOLATION = 2
EXIT_NO_CONVERGENCE = 3


class SpecError(ValueError):
    """Channel spec file could not be parsed into a valid channel."""


@dataclass(frozen=True)
class RunConfig:
    """Validated bundle of command-line options."""

    command: str
    channel_path: str = None
    tol: float = 1e-6
    max_iter: int = 5000
    restarts: int = 5
    samples: int = 1000
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        for label in ("max_iter", "restarts", "samples"):
            if getattr(self, label) < 1:
                raise ValueError(f"{label} must be >= 1")
        if self.output_format not in ("json", "csv"):
            raise ValueError("output format must be json or csv")


def _round_sig(x: float, digits: int = 12) -> float:
    if x == 0 or not np.isfinite(x):
        return float(x)
    return float(f"{x:.{digits}g}")


def _clean(obj):
    """Recursively round floats so serialized output is reproducible."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return _round_sig(float(obj))
    return obj


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(_clean(doc), sort_keys=True, indent=2) + "\n")


def _emit_trace_csv(trace) -> None:
    sys.stdout.write("iteration,value\n")
    for it, value in trace:
        sys.stdout.write(f"{it},{_round_sig(value):.12g}\n")


def _parse_kraus_matrix(entries, dim_out: int, dim_in: int) -> np.ndarray:
    if len(entries) != dim_out * dim_in:
        raise SpecError(
            f"Kraus operator has {len(entries)} entries, expected {dim_out * dim_in}"
        )
    flat = []
    for pair in entries:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise SpecError(f"matrix entries must be [re, im] pairs, got {pair!r}")
        flat.append(complex(float(pair[0]), float(pair[1])))
    return np.array(flat, dtype=complex).reshape(dim_out, dim_in)


def load_channel_spec(path: str) -> QuantumChannel:
    """Read a channel-spec JSON file and return the validated channel."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            spec = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(spec, dict):
        raise SpecError("channel spec must be a JSON object")
    if "kind" in spec:
        kind = spec["kind"]
        dim = int(spec.get("dim", 2))
        params = spec.get("params", {})
        if not isinstance(params, dict):
            raise SpecError('"params" must be an object')
        try:
            return make_channel(kind, dim, **params)
        except (ValueError, TypeError) as exc:
            raise SpecError(f"bad channel parameters: {exc}") from exc
    if "kraus" in spec:
        try:
            dim_in = int(spec["dim_in"])
            dim_out = int(spec["dim_out"])
        except KeyError as exc:
            raise SpecError(f"explicit Kraus spec needs {exc.args[0]}") from exc
        ops = [_parse_kraus_matrix(k, dim_out, dim_in) for k in spec["kraus"]]
        return validate(ops, dim_in, dim_out, name=spec.get("name", ""))
    raise SpecError('channel spec needs either "kind" or "kraus"')


def _spec_sha256(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _channel_doc(path: str, ch: QuantumChannel) -> dict:
    return {
        "path": path,
        "sha256": _spec_sha256(path),
        "name": ch.name,
        "dim_in": ch.dim_in,
        "dim_out": ch.dim_out,
        "kraus_count": len(ch.kraus),
    }


def _protocol_doc(report) -> dict:
    return {
        "protocol": report.protocol,
        "trials": report.trials,
        "success_rate": report.success_rate,
        "fidelity_min": report.fidelity_min,
        "qubits_used": report.qubits_used,
        "cbits_used": report.cbits_used,
        "ebits_used": report.ebits_used,
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chancap",
        description="Quantum channel capacities, feedback bounds, and protocol demos.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, optimizer=True):
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        p.add_argument(
            "--output", choices=("json", "csv"), default="json",
            help="csv prints the iteration trace only",
        )
        if optimizer:
            p.add_argument("--tol", type=float, default=1e-6)
            p.add_argument("--max-iter", type=int, default=5000)
            p.add_argument("--restarts", type=int, default=5)

    p = sub.add_parser("validate", help="check a channel spec file")
    p.add_argument("spec", help="channel spec JSON path")
    add_common(p, optimizer=False)

    p = sub.add_parser("ce", help="entanglement-assisted capacity")
    p.add_argument("spec")
    add_common(p)

    p = sub.add_parser("holevo", help="Holevo lower bound over ensembles")
    p.add_argument("spec")
    p.add_argument("--ensemble-size", type=int, default=None)
    add_common(p)

    p = sub.add_parser("bound", help="conditional-information feedback bound check")
    p.add_argument("spec")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--conditioner-dim", type=int, default=2)
    p.add_argument("--terms", type=int, default=8)
    add_common(p)

    p = sub.add_parser("additivity", help="two-copy capacity vs twice one copy")
    p.add_argument("spec")
    add_common(p)

    p = sub.add_parser("demo", help="exact protocol demonstrations")
    p.add_argument(
        "which", choices=("dense-coding", "teleportation", "feedback-equivalence")
    )
    add_common(p, optimizer=False)

    p = sub.add_parser("zoo", help="list built-in channels")
    add_common(p, optimizer=False)
    return parser


def _optimizer_doc(report) -> dict:
    return {
        "value": report.value,
        "converged": report.converged,
        "iterations": report.iterations,
        "restarts_used": report.restarts_used,
        "trace": [[it, v] for it, v in report.trace],
    }


def run(argv) -> int:
    """Execute one command; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            channel_path=getattr(args, "spec", None),
            tol=getattr(args, "tol", 1e-6),
            max_iter=getattr(args, "max_iter", 5000),
            restarts=getattr(args, "restarts", 5),
            samples=getattr(args, "samples", 1000),
            seed=args.seed,
            output_format=args.output,
        )
    except ValueError as exc:
        _emit_json({"error": str(exc)})
        return EXIT_BAD_SPEC

    if config.output_format == "csv" and config.command not in ("ce", "holevo"):
        _emit_json({"error": "csv output is only available for ce and holevo traces"})
        return EXIT_BAD_SPEC

    try:
        return _dispatch(config, args)
    except SpecError as exc:
        _emit_json({"error": str(exc)})
        return EXIT_BAD_SPEC
    except ChannelValidationError as exc:
        doc = {"error": str(exc)}
        if exc.residual is not None:
            doc["completeness_residual"] = exc.residual
        _emit_json(doc)
        return EXIT_BAD_SPEC
    except ConvergenceError as exc:
        _emit_json({"error": str(exc)})
        return EXIT_NO_CONVERGENCE


def _dispatch(config: RunConfig, args) -> int:
    cmd = config.command

    if cmd == "zoo":
        entries = [
            {
                "name": ch.name,
                "dim_in": ch.dim_in,
                "dim_out": ch.dim_out,
                "kraus_count": len(ch.kraus),
            }
            for ch in zoo_channels()
        ]
        _emit_json({"command": "zoo", "kinds": list(CHANNEL_KINDS), "channels": entries})
        return EXIT_OK

    if cmd == "demo":
        which = args.which
        if which == "dense-coding":
            _emit_json({"command": "demo", "report": _protocol_doc(dense_coding_report())})
            return EXIT_OK
        if which == "teleportation":
            report = teleportation_report(trials=20, seed=config.seed)
            doc = {"command": "demo", "seed": config.seed, "report": _protocol_doc(report)}
            _emit_json(doc)
            return EXIT_OK
        demo = feedback_equivalence_demo()
        _emit_json(
            {
                "command": "demo",
                "scenario_a": _protocol_doc(demo.scenario_a),
                "scenario_b": _protocol_doc(demo.scenario_b),
                "state_difference": demo.state_difference,
                "dense_coding_exact": demo.dense_coding_exact,
            }
        )
        return EXIT_OK

    channel = load_channel_spec(config.channel_path)
    channel_doc = _channel_doc(config.channel_path, channel)

    if cmd == "validate":
        ident = np.eye(channel.dim_in)
        acc = sum(k.conj().T @ k for k in channel.kraus)
        residual = float(np.linalg.norm(acc - ident))
        _emit_json(
            {
                "command": "validate",
                "channel": channel_doc,
                "valid": True,
                "completeness_residual": residual,
            }
        )
        return EXIT_OK

    opts = dict(
        tol=config.tol,
        max_iter=config.max_iter,
        restarts=config.restarts,
        seed=config.seed,
    )
    options_doc = dict(opts)

    if cmd == "ce":
        report = compute_ce(channel, **opts)
        if config.output_format == "csv":
            _emit_trace_csv(report.trace)
        else:
            doc = {"command": "ce", "channel": channel_doc, "options": options_doc}
            doc.update(_optimizer_doc(report))
            _emit_json(doc)
        return EXIT_OK if report.converged else EXIT_NO_CONVERGENCE

    if cmd == "holevo":
        report = compute_holevo(channel, ensemble_size=args.ensemble_size, **opts)
        if config.output_format == "csv":
            _emit_trace_csv(report.trace)
        else:
            doc = {"command": "holevo", "channel": channel_doc, "options": options_doc}
            doc.update(_optimizer_doc(report))
            _emit_json(doc)
        return EXIT_OK if report.converged else EXIT_NO_CONVERGENCE

    if cmd == "bound":
        report = check_cqfb_bound(
            channel,
            n_samples=config.samples,
            conditioner_dim=args.conditioner_dim,
            terms=args.terms,
            **opts,
        )
        _emit_json(
            {
                "command": "bound",
                "channel": channel_doc,
                "options": dict(options_doc, samples=config.samples,
                                conditioner_dim=args.conditioner_dim, terms=args.terms),
                "samples": report.samples,
                "max_conditional_qmi": report.max_conditional_qmi,
                "ce_reference": report.ce_reference,
                "violations": report.violations,
                "worst_margin": report.worst_margin,
                "seed": report.seed,
            }
        )
        return EXIT_VIOLATION if report.violations > 0 else EXIT_OK

    if cmd == "additivity":
        report = check_additivity(channel, **opts)
        _emit_json(
            {
                "command": "additivity",
                "channel": channel_doc,
                "options": options_doc,
                "ce_single": report.ce_single,
                "ce_double": report.ce_double,
                "gap": report.gap,
                "converged": report.converged,
            }
        )
        return EXIT_OK if report.converged else EXIT_NO_CONVERGENCE

    raise SpecError(f"unknown command {cmd!r}")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
