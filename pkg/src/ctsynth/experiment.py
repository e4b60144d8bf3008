"""Batch experiment driver: seeded runs, aggregate statistics, file outputs.

Run i of an experiment uses seed base_seed + i. The `random` target family
draws a fresh Haar vector per run (seeded with that run's seed); the
deterministic families prepare the same vector every run.
"""

from __future__ import annotations

import csv
import json
import statistics
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

from .circuit import depth, to_qasm
from .evolve import GaParams, RunResult, run
from .targets import FAMILIES, build_target

SUMMARY_HEADER = [
    "run_index",
    "seed",
    "fidelity",
    "gate_count",
    "t_count",
    "depth",
    "generations_run",
    "termination_reason",
    "wall_time_s",
]


@dataclass
class ExperimentConfig:
    state_family: str
    n_qubits: int
    runs: int = 1
    base_seed: int = 0
    ga: GaParams = field(default_factory=GaParams)
    output_dir: str | Path = "results"
    target_file: str | Path | None = None
    n_jobs: int = 1

    def validate(self) -> None:
        if self.state_family not in FAMILIES:
            raise ValueError(
                f"unknown state family {self.state_family!r}; choose from {FAMILIES}"
            )
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.state_family == "file" and self.target_file is None:
            raise ValueError("state family 'file' needs target_file")
        if self.n_jobs < 1:
            raise ValueError(f"n_jobs must be >= 1, got {self.n_jobs}")
        self.ga.validate()


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    results: list[RunResult]
    aggregates: dict[str, dict[str, float]]


def _target_for_run(config: ExperimentConfig, seed: int):
    return build_target(
        config.state_family, config.n_qubits, seed=seed, path=config.target_file
    )


def run_experiment(config: ExperimentConfig, write: bool = True) -> ExperimentReport:
    """Execute config.runs seeded GA runs and aggregate their best fitnesses.

    Configuration problems (including an unbuildable target) raise before
    any run starts. Outputs are written to config.output_dir unless
    write=False.
    """
    config.validate()
    _target_for_run(config, config.base_seed)  # fail fast on bad targets
    results: list[RunResult] = []
    for index in range(config.runs):
        seed = config.base_seed + index
        params = replace(config.ga, seed=seed)
        results.append(run(params, _target_for_run(config, seed), n_jobs=config.n_jobs))
    report = ExperimentReport(config=config, results=results, aggregates=aggregate(results))
    if write:
        write_outputs(report, config)
    return report


def aggregate(results: list[RunResult]) -> dict[str, dict[str, float]]:
    """Mean and sample standard deviation (n-1 denominator) of the best
    fidelity, gate count, t count, and wall time across runs. A single run
    reports std 0.0 by convention."""
    if not results:
        raise ValueError("no results to aggregate")
    series = {
        "fidelity": [r.best.fitness.fidelity for r in results],
        "gate_count": [float(r.best.fitness.gate_count) for r in results],
        "t_count": [float(r.best.fitness.t_count) for r in results],
        "wall_time": [r.wall_time for r in results],
    }
    return {
        name: {
            "mean": statistics.fmean(values),
            "std": statistics.stdev(values) if len(values) > 1 else 0.0,
        }
        for name, values in series.items()
    }


def _summary_rows(report: ExperimentReport) -> list[dict]:
    rows = []
    for index, result in enumerate(report.results):
        fit = result.best.fitness
        rows.append(
            {
                "run_index": index,
                "seed": report.config.base_seed + index,
                "fidelity": fit.fidelity,
                "gate_count": fit.gate_count,
                "t_count": fit.t_count,
                "depth": depth(result.best.genome),
                "generations_run": result.generations_run,
                "termination_reason": result.termination_reason,
                "wall_time_s": result.wall_time,
            }
        )
    return rows


def write_outputs(report: ExperimentReport, config: ExperimentConfig) -> list[Path]:
    """Write report.json, summary.csv, and per-run best_run<i>.qasm /
    history_run<i>.csv into config.output_dir. Returns the written paths."""
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    rows = _summary_rows(report)

    config_echo = asdict(config)
    config_echo["output_dir"] = str(config.output_dir)
    if config.target_file is not None:
        config_echo["target_file"] = str(config.target_file)
    report_path = out_dir / "report.json"
    with open(report_path, "w") as fh:
        json.dump(
            {"config": config_echo, "runs": rows, "aggregates": report.aggregates},
            fh,
            indent=2,
        )
        fh.write("\n")
    written.append(report_path)

    summary_path = out_dir / "summary.csv"
    with open(summary_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=SUMMARY_HEADER)
        writer.writeheader()
        writer.writerows(rows)
    written.append(summary_path)

    for index, result in enumerate(report.results):
        qasm_path = out_dir / f"best_run{index}.qasm"
        qasm_path.write_text(to_qasm(result.best.genome))
        written.append(qasm_path)
        history_path = out_dir / f"history_run{index}.csv"
        with open(history_path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["generation", "best_fidelity", "best_gate_count", "best_t_count"])
            for generation, fit in enumerate(result.history):
                writer.writerow([generation, fit.fidelity, fit.gate_count, fit.t_count])
        written.append(history_path)
    return written
