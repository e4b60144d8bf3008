"""Experiment driver: seeding, aggregates, and the on-disk report format."""

import csv
import json
import math

import pytest

from ctsynth.circuit import Circuit, from_qasm
from ctsynth.evolve import Fitness, GaParams, Individual, RunResult
from ctsynth.experiment import (
    SUMMARY_HEADER,
    ExperimentConfig,
    aggregate,
    run_experiment,
)
from ctsynth.statevec import fidelity, simulate
from ctsynth.targets import build_target


def _fake_result(fid, gates, t, wall=1.0):
    ind = Individual(Circuit(1), Fitness(fid, gates, t))
    return RunResult(
        best=ind,
        generations_run=3,
        termination_reason="generation_limit",
        history=[ind.fitness],
        wall_time=wall,
        params=GaParams(),
    )


def _tiny_config(tmp_path, **overrides):
    settings = dict(
        state_family="ghz",
        n_qubits=2,
        runs=2,
        base_seed=10,
        ga=GaParams(pop_size=20, no_gens=25),
        output_dir=tmp_path / "out",
    )
    settings.update(overrides)
    return ExperimentConfig(**settings)


# ---------------------------------------------------------------- aggregates


def test_aggregate_frozen_values():
    results = [_fake_result(0.9, 50, 10, wall=2.0), _fake_result(0.7, 40, 6, wall=4.0)]
    agg = aggregate(results)
    assert agg["fidelity"]["mean"] == pytest.approx(0.8, abs=1e-12)
    # sample std with n-1 denominator: sqrt(((0.1)^2 + (0.1)^2) / 1)
    assert agg["fidelity"]["std"] == pytest.approx(math.sqrt(0.02), abs=1e-12)
    assert agg["gate_count"]["mean"] == pytest.approx(45.0, abs=1e-12)
    assert agg["t_count"]["mean"] == pytest.approx(8.0, abs=1e-12)
    assert agg["wall_time"]["mean"] == pytest.approx(3.0, abs=1e-12)


def test_aggregate_single_run_has_zero_std():
    agg = aggregate([_fake_result(0.5, 8, 2)])
    for name in ("fidelity", "gate_count", "t_count", "wall_time"):
        assert agg[name]["std"] == 0.0
    with pytest.raises(ValueError):
        aggregate([])


# -------------------------------------------------------------------- config


def test_config_validation(tmp_path):
    with pytest.raises(ValueError):
        _tiny_config(tmp_path, state_family="bell").validate()
    with pytest.raises(ValueError):
        _tiny_config(tmp_path, runs=0).validate()
    with pytest.raises(ValueError):
        _tiny_config(tmp_path, state_family="file").validate()  # no target_file
    with pytest.raises(ValueError):
        _tiny_config(tmp_path, n_jobs=0).validate()
    with pytest.raises(ValueError):
        _tiny_config(tmp_path, ga=GaParams(pop_size=5)).validate()


def test_bad_target_fails_before_any_run(tmp_path):
    config = _tiny_config(tmp_path, state_family="file", target_file=tmp_path / "nope.txt")
    with pytest.raises(OSError):
        run_experiment(config)
    assert not (tmp_path / "out").exists()


# --------------------------------------------------------------------- runs


def test_run_indices_use_base_seed_offsets(tmp_path):
    report = run_experiment(_tiny_config(tmp_path), write=False)
    assert [r.params.seed for r in report.results] == [10, 11]
    assert not (tmp_path / "out").exists()
    # aggregates are recomputable from the results
    again = aggregate(report.results)
    assert again == report.aggregates


def test_outputs_on_disk(tmp_path):
    config = _tiny_config(tmp_path)
    report = run_experiment(config)
    out = tmp_path / "out"
    expected = {
        "report.json",
        "summary.csv",
        "best_run0.qasm",
        "best_run1.qasm",
        "history_run0.csv",
        "history_run1.csv",
    }
    assert {p.name for p in out.iterdir()} == expected

    with open(out / "summary.csv", newline="") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == SUMMARY_HEADER
    assert [row["run_index"] for row in rows] == ["0", "1"]
    assert [row["seed"] for row in rows] == ["10", "11"]
    for row, result in zip(rows, report.results):
        assert float(row["fidelity"]) == result.best.fitness.fidelity
        assert int(row["gate_count"]) == result.best.fitness.gate_count
        assert row["termination_reason"] == result.termination_reason

    # the qasm artifacts replay to the fidelity the summary claims
    target = build_target("ghz", 2)
    for index, row in enumerate(rows):
        circuit = from_qasm((out / f"best_run{index}.qasm").read_text())
        assert fidelity(simulate(circuit), target) == pytest.approx(
            float(row["fidelity"]), abs=1e-9
        )

    with open(out / "history_run0.csv", newline="") as fh:
        history = list(csv.reader(fh))
    assert history[0] == ["generation", "best_fidelity", "best_gate_count", "best_t_count"]
    assert len(history) - 1 == report.results[0].generations_run + 1
    assert [row[0] for row in history[1:3]] == ["0", "1"]
    fidelities = [float(row[1]) for row in history[1:]]
    assert fidelities == sorted(fidelities)  # best-so-far never regresses


def test_report_json_echoes_config_and_aggregates(tmp_path):
    config = _tiny_config(tmp_path)
    report = run_experiment(config)
    payload = json.loads((tmp_path / "out" / "report.json").read_text())
    assert set(payload) == {"config", "runs", "aggregates"}
    assert payload["config"]["state_family"] == "ghz"
    assert payload["config"]["n_qubits"] == 2
    assert payload["config"]["base_seed"] == 10
    assert payload["config"]["ga"]["pop_size"] == 20
    assert payload["config"]["output_dir"] == str(config.output_dir)
    assert len(payload["runs"]) == 2
    for name in ("fidelity", "gate_count", "t_count", "wall_time"):
        assert payload["aggregates"][name]["mean"] == pytest.approx(
            report.aggregates[name]["mean"], abs=1e-12
        )


def _metric_rows(path):
    """summary.csv rows with the wall-clock column dropped."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    for row in rows:
        row.pop("wall_time_s")
    return rows


def test_reruns_are_identical_up_to_wall_time(tmp_path):
    report_a = run_experiment(_tiny_config(tmp_path, output_dir=tmp_path / "a"))
    report_b = run_experiment(_tiny_config(tmp_path, output_dir=tmp_path / "b"))
    assert _metric_rows(tmp_path / "a" / "summary.csv") == _metric_rows(
        tmp_path / "b" / "summary.csv"
    )
    for name in ("best_run0.qasm", "best_run1.qasm", "history_run0.csv", "history_run1.csv"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
    assert report_a.aggregates["fidelity"] == report_b.aggregates["fidelity"]


def test_random_family_redraws_target_per_run(tmp_path):
    config = _tiny_config(
        tmp_path,
        state_family="random",
        runs=2,
        base_seed=5,
        ga=GaParams(pop_size=20, no_gens=30),
    )
    run_experiment(config)
    out = tmp_path / "out"
    rows = _metric_rows(out / "summary.csv")
    # each run's artifact must score against *its own* drawn target
    for index, row in enumerate(rows):
        circuit = from_qasm((out / f"best_run{index}.qasm").read_text())
        target = build_target("random", 2, seed=5 + index)
        assert fidelity(simulate(circuit), target) == pytest.approx(
            float(row["fidelity"]), abs=1e-9
        )


def test_file_family_end_to_end(tmp_path):
    state_path = tmp_path / "target.txt"
    state_path.write_text("0 0.7071067811865476 0.0\n3 0.7071067811865476 0.0\n")
    config = _tiny_config(tmp_path, state_family="file", target_file=state_path, runs=1)
    report = run_experiment(config)
    assert report.results[0].best.fitness.fidelity > 0.5
    assert json.loads((tmp_path / "out" / "report.json").read_text())["config"][
        "target_file"
    ] == str(state_path)
