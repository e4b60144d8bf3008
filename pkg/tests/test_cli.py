"""Command line behavior: flags, output files, and exit codes."""

import pytest

from ctsynth.circuit import Circuit, Gate, from_qasm, to_qasm
from ctsynth.cli import build_parser, main


def _bell_qasm(path):
    circuit = Circuit(2, [Gate("h", (0,)), Gate("cx", (0, 1))])
    path.write_text(to_qasm(circuit))
    return path


def test_parser_defaults():
    args = build_parser().parse_args(["run", "--state", "ghz", "--qubits", "2", "--out", "x"])
    assert args.pop == 150
    assert args.gens == 20000
    assert args.cxpb == 0.5
    assert args.mutpb == 0.25
    assert args.crossover == "messy_one_point"
    assert args.selection == "best_duplication"
    assert args.seed == 0
    assert args.runs == 1
    assert args.jobs == 1


def test_parser_rejects_bad_usage(capsys):
    for argv in (
        [],  # a subcommand is required
        ["run", "--state", "bell", "--qubits", "2", "--out", "x"],  # not a family
        ["run", "--qubits", "2", "--out", "x"],  # missing --state
        ["simulate", "--in", "f.qasm", "--target", "ghz"],  # missing --qubits
    ):
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2
    capsys.readouterr()


def test_run_subcommand(tmp_path, capsys):
    out_dir = tmp_path / "results"
    code = main(
        [
            "run",
            "--state", "ghz",
            "--qubits", "2",
            "--runs", "2",
            "--pop", "20",
            "--gens", "25",
            "--seed", "9",
            "--out", str(out_dir),
        ]
    )
    captured = capsys.readouterr()
    assert code == 0
    assert (out_dir / "summary.csv").exists()
    assert (out_dir / "report.json").exists()
    assert (out_dir / "best_run1.qasm").exists()
    lines = captured.out.splitlines()
    assert lines[0].startswith("run 0: seed=9 ")
    assert lines[1].startswith("run 1: seed=10 ")
    assert any(line.startswith("fidelity: mean=") for line in lines)
    assert lines[-1] == f"outputs written to {out_dir}"


def test_simulate_subcommand(tmp_path, capsys):
    qasm = _bell_qasm(tmp_path / "bell.qasm")
    code = main(["simulate", "--in", str(qasm), "--target", "ghz", "--qubits", "2"])
    captured = capsys.readouterr()
    assert code == 0
    out = dict(line.split("=", 1) for line in captured.out.splitlines())
    assert float(out["fidelity"]) == pytest.approx(1.0, abs=1e-12)
    assert out["gate_count"] == "2"
    assert out["t_count"] == "0"
    assert out["depth"] == "2"


def test_simulate_qubit_mismatch_is_an_error(tmp_path, capsys):
    qasm = _bell_qasm(tmp_path / "bell.qasm")
    code = main(["simulate", "--in", str(qasm), "--target", "ghz", "--qubits", "3"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.err.startswith("error:")


def test_simulate_missing_file_is_an_error(tmp_path, capsys):
    code = main(["simulate", "--in", str(tmp_path / "nope.qasm"), "--target", "ghz", "--qubits", "2"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.err.startswith("error:")


def test_optimize_subcommand(tmp_path, capsys):
    circuit = Circuit(1, [Gate("t", (0,))] * 8 + [Gate("h", (0,))])
    src = tmp_path / "in.qasm"
    dst = tmp_path / "out.qasm"
    src.write_text(to_qasm(circuit))
    code = main(["optimize", "--in", str(src), "--out", str(dst)])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.strip() == "9 gates -> 1 (t: 8 -> 0)"
    reduced = from_qasm(dst.read_text())
    assert reduced.gates == [Gate("h", (0,))]


def test_run_with_file_target(tmp_path, capsys):
    state_path = tmp_path / "plus.txt"
    state_path.write_text("0 0.7071067811865476 0.0\n1 0.7071067811865476 0.0\n")
    code = main(
        [
            "run",
            "--state", "file",
            "--qubits", "1",
            "--pop", "20",
            "--gens", "10",
            "--target-file", str(state_path),
            "--out", str(tmp_path / "res"),
        ]
    )
    capsys.readouterr()
    assert code == 0
    assert (tmp_path / "res" / "best_run0.qasm").exists()
