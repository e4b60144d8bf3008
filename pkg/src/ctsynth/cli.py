"""Command line interface.

Subcommands:
  run       batch of seeded synthesis runs with file outputs
  optimize  apply the identity-cancellation pass to a QASM file
  simulate  score a QASM file against a target state
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .circuit import depth, from_qasm, gate_count, optimize, t_count, to_qasm
from .evolve import CROSSOVER_METHODS, SELECTION_METHODS, GaParams
from .experiment import ExperimentConfig, run_experiment
from .statevec import fidelity, simulate
from .targets import FAMILIES, build_target


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ctsynth",
        description="Genetic synthesis of Clifford+T state-preparation circuits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="run seeded synthesis experiments")
    run_p.add_argument("--state", required=True, choices=FAMILIES, help="target family")
    run_p.add_argument("--qubits", required=True, type=int, help="register width")
    run_p.add_argument("--runs", type=int, default=1, help="independent runs")
    run_p.add_argument("--pop", type=int, default=150, help="population size")
    run_p.add_argument("--gens", type=int, default=20000, help="generation budget")
    run_p.add_argument("--cxpb", type=float, default=0.5, help="crossover probability")
    run_p.add_argument("--mutpb", type=float, default=0.25, help="mutation probability")
    run_p.add_argument("--crossover", choices=CROSSOVER_METHODS, default="messy_one_point")
    run_p.add_argument("--selection", choices=SELECTION_METHODS, default="best_duplication")
    run_p.add_argument("--seed", type=int, default=0, help="base seed; run i uses seed+i")
    run_p.add_argument("--out", required=True, help="output directory")
    run_p.add_argument("--target-file", help="statevector file for --state file")
    run_p.add_argument("--size-limit", type=float, default=2000.0,
                       help="stop when mean gate count exceeds this")
    run_p.add_argument("--init-len-min", type=int, default=1)
    run_p.add_argument("--init-len-max", type=int, default=30)
    run_p.add_argument("--tournament-size", type=int, default=3)
    run_p.add_argument("--patience", type=int, default=0,
                       help="stop after this many generations at fidelity 1 (0 = off)")
    run_p.add_argument("--jobs", type=int, default=1, help="evaluation threads")

    opt_p = sub.add_parser("optimize", help="cancel identities in a QASM file")
    opt_p.add_argument("--in", dest="input", required=True, help="input .qasm")
    opt_p.add_argument("--out", dest="output", required=True, help="output .qasm")

    sim_p = sub.add_parser("simulate", help="score a QASM file against a target")
    sim_p.add_argument("--in", dest="input", required=True, help="input .qasm")
    sim_p.add_argument("--target", required=True, choices=FAMILIES)
    sim_p.add_argument("--qubits", required=True, type=int)
    sim_p.add_argument("--target-file", help="statevector file for --target file")
    sim_p.add_argument("--seed", type=int, default=0, help="seed for --target random")
    return parser


def _cmd_run(args: argparse.Namespace) -> int:
    params = GaParams(
        pop_size=args.pop,
        no_gens=args.gens,
        cxpb=args.cxpb,
        mutpb=args.mutpb,
        crossover_method=args.crossover,
        selection_method=args.selection,
        tournament_size=args.tournament_size,
        init_len_min=args.init_len_min,
        init_len_max=args.init_len_max,
        size_limit=args.size_limit,
        patience=args.patience,
    )
    config = ExperimentConfig(
        state_family=args.state,
        n_qubits=args.qubits,
        runs=args.runs,
        base_seed=args.seed,
        ga=params,
        output_dir=args.out,
        target_file=args.target_file,
        n_jobs=args.jobs,
    )
    report = run_experiment(config)
    for index, result in enumerate(report.results):
        fit = result.best.fitness
        print(
            f"run {index}: seed={config.base_seed + index} "
            f"fidelity={fit.fidelity:.6f} gates={fit.gate_count} "
            f"t={fit.t_count} gens={result.generations_run} "
            f"stop={result.termination_reason} ({result.wall_time:.1f}s)"
        )
    for name in ("fidelity", "gate_count", "t_count"):
        agg = report.aggregates[name]
        print(f"{name}: mean={agg['mean']:.6f} std={agg['std']:.6f}")
    print(f"outputs written to {config.output_dir}")
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    circuit = from_qasm(Path(args.input).read_text())
    reduced = optimize(circuit)
    Path(args.output).write_text(to_qasm(reduced))
    print(f"{gate_count(circuit)} gates -> {gate_count(reduced)} "
          f"(t: {t_count(circuit)} -> {t_count(reduced)})")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    circuit = from_qasm(Path(args.input).read_text())
    if circuit.n_qubits != args.qubits:
        raise ValueError(
            f"circuit acts on {circuit.n_qubits} qubit(s) but --qubits is {args.qubits}"
        )
    target = build_target(
        args.target, args.qubits, seed=args.seed, path=args.target_file
    )
    print(f"fidelity={fidelity(simulate(circuit), target)!r}")
    print(f"gate_count={gate_count(circuit)}")
    print(f"t_count={t_count(circuit)}")
    print(f"depth={depth(circuit)}")
    return 0


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "optimize":
            return _cmd_optimize(args)
        return _cmd_simulate(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
