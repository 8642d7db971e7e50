"""Command-line interface: cipher ops, spectra, single attacks, batch drivers."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .attack import build_problem, run_attack
from .hamiltonian import build_graph, build_hamiltonian, spectrum
from .harness import (
    ExperimentConfig,
    RunResult,
    TRACE_SCHEMA,
    export_traces,
    run_degree_sweep,
    run_table2,
    write_degree_outputs,
    write_table2_outputs,
)
from .optim import GDConfig, NMConfig
from .sdes import BitBlock, decrypt, encrypt


def _bits(text: str, width: int, name: str) -> BitBlock:
    if len(text) != width or any(ch not in "01" for ch in text):
        raise SystemExit(f"error: {name} must be a {width}-bit binary string, got {text!r}")
    return BitBlock.from_str(text)


def _add_attack_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--plaintext", required=True, help="8-bit binary block")
    parser.add_argument("--key", required=True, help="10-bit binary key generating the target ciphertext")
    parser.add_argument("--ansatz", default="ycz", choices=["ycx", "ycy", "ycz"])
    parser.add_argument("--variant", default="A", choices=["A", "B"])
    parser.add_argument("--optimizer", default="gd", choices=["gd", "nm"])
    parser.add_argument("--degree", type=int, default=3)
    parser.add_argument("--layers", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--learning-rate", type=float, default=None)
    parser.add_argument("--alpha", type=float, default=None, help="simplex amplification factor")
    parser.add_argument("--restart-norm", type=float, default=None)
    parser.add_argument("--restart-spread", type=float, default=None)
    parser.add_argument("--budget", type=int, default=1024)
    parser.add_argument("--cutoff", type=float, default=None)


def _attack_from_args(args) -> RunResult:
    plaintext = _bits(args.plaintext, 8, "plaintext")
    key = _bits(args.key, 10, "key")
    problem = build_problem(
        plaintext,
        key,
        degree=args.degree,
        family=args.ansatz,
        variant=args.variant,
        layers=args.layers,
        cutoff=args.cutoff,
        measurement_budget=args.budget,
    )
    gd_config = nm_config = None
    if args.optimizer == "gd":
        overrides = {"cutoff": problem.cutoff, "budget": args.budget}
        if args.learning_rate is not None:
            overrides["learning_rate"] = args.learning_rate
        if args.restart_norm is not None:
            overrides["restart_norm"] = args.restart_norm
        gd_config = GDConfig.for_ansatz(args.ansatz, args.variant, **overrides)
    else:
        overrides = {"cutoff": problem.cutoff, "budget": args.budget}
        if args.alpha is not None:
            overrides["amplification"] = args.alpha
        if args.restart_spread is not None:
            overrides["restart_spread"] = args.restart_spread
        nm_config = NMConfig.for_ansatz(args.ansatz, args.variant, **overrides)
    trace = run_attack(problem, optimizer=args.optimizer, seed=args.seed, gd_config=gd_config, nm_config=nm_config)
    return RunResult(
        run_id=f"cli-{args.ansatz}{args.variant}-{args.optimizer}-seed{args.seed}",
        sim=0,
        family=args.ansatz,
        variant=args.variant,
        optimizer=args.optimizer,
        degree=args.degree,
        true_key=key.to_str(),
        trace=trace,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="vqattack",
        description="Variational key recovery against S-DES on an exact statevector simulator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    enc = sub.add_parser("encrypt", help="encrypt an 8-bit block")
    enc.add_argument("--plaintext", required=True)
    enc.add_argument("--key", required=True)

    dec = sub.add_parser("decrypt", help="decrypt an 8-bit block")
    dec.add_argument("--ciphertext", required=True)
    dec.add_argument("--key", required=True)

    spec_cmd = sub.add_parser("spectrum", help="enumerate the Hamiltonian spectrum")
    spec_cmd.add_argument("--degree", type=int, default=3)
    spec_cmd.add_argument("--ciphertext", required=True)
    spec_cmd.add_argument("--full", action="store_true", help="also print index,energy CSV lines")

    attack_cmd = sub.add_parser("attack", help="run one seeded attack")
    _add_attack_args(attack_cmd)
    attack_cmd.add_argument("--trace", default=None, help="write per-iteration records to this JSONL file")

    trace_cmd = sub.add_parser("trace", help="run one attack and export trace + snapshot files")
    _add_attack_args(trace_cmd)
    trace_cmd.add_argument("--out", required=True, help="output directory for traces.jsonl/snapshots.jsonl")

    batch = sub.add_parser("batch", help="batch experiment drivers")
    batch_sub = batch.add_subparsers(dest="batch_command", required=True)
    table2_cmd = batch_sub.add_parser("table2", help="all ansatz/optimizer combinations on shared instances")
    table2_cmd.add_argument("--sims", type=int, default=30)
    table2_cmd.add_argument("--seed", type=int, default=0)
    table2_cmd.add_argument("--out", required=True)
    table2_cmd.add_argument("--workers", type=int, default=None)
    degrees_cmd = batch_sub.add_parser("degrees", help="graph-degree sweep with per-degree hyperparameters")
    degrees_cmd.add_argument("--sims", type=int, default=15)
    degrees_cmd.add_argument("--seed", type=int, default=0)
    degrees_cmd.add_argument("--out", required=True)
    degrees_cmd.add_argument("--workers", type=int, default=None)

    args = parser.parse_args(argv)

    if args.command == "encrypt":
        print(encrypt(_bits(args.plaintext, 8, "plaintext"), _bits(args.key, 10, "key")))
    elif args.command == "decrypt":
        print(decrypt(_bits(args.ciphertext, 8, "ciphertext"), _bits(args.key, 10, "key")))
    elif args.command == "spectrum":
        h = build_hamiltonian(build_graph(args.degree), _bits(args.ciphertext, 8, "ciphertext"))
        summary, levels = spectrum(h)
        print(f"ground {summary.ground}")
        print(f"first_excited {summary.first_excited}")
        print(f"highest {summary.highest}")
        print(f"ratio {summary.ratio}")
        if args.full:
            print("index,energy")
            for i, level in enumerate(levels):
                print(f"{i},{level}")
    elif args.command == "attack":
        result = _attack_from_args(args)
        trace = result.trace
        print(f"outcome {'success' if trace.success else 'failure'}")
        print(f"key {trace.found_key.to_str() if trace.found_key else '-'}")
        print(f"iterations {trace.iterations}")
        print(f"evaluations {trace.evaluations}")
        print(f"samples_drawn {trace.samples_drawn}")
        print(f"restarts {trace.restarts}")
        print(f"best_cost {trace.best_cost}")
        if args.trace:
            path = Path(args.trace)
            path.parent.mkdir(parents=True, exist_ok=True)
            with path.open("w") as fh:
                for record in trace.records:
                    fh.write(
                        json.dumps(
                            {
                                "schema": TRACE_SCHEMA,
                                "run_id": result.run_id,
                                "iteration": record.iteration,
                                "evaluations": record.evaluations,
                                "cost": record.cost,
                                "entropy": record.entropy,
                                "concurrence": record.concurrence,
                                "restarted": record.restarted,
                                "ground_prob": record.ground_prob,
                            }
                        )
                        + "\n"
                    )
    elif args.command == "trace":
        result = _attack_from_args(args)
        traces_path, snapshots_path = export_traces([result], args.out)
        print(f"wrote {traces_path}")
        print(f"wrote {snapshots_path}")
    elif args.command == "batch":
        if args.batch_command == "table2":
            config = ExperimentConfig(simulations=args.sims, master_seed=args.seed, workers=args.workers)
            write_table2_outputs(run_table2(config), args.out)
            print(f"wrote table2 outputs to {args.out}")
        else:
            config = ExperimentConfig(simulations=args.sims, master_seed=args.seed, workers=args.workers)
            write_degree_outputs(run_degree_sweep(config), args.out)
            print(f"wrote degree-sweep outputs to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
