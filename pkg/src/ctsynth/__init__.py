"""Genetic synthesis of Clifford+T state-preparation circuits.

Given a target statevector, the package evolves circuits over the
{h, s, t, cx} gate set that prepare it from |0...0>, optimizing fidelity
first, then gate count, then t count. `CliffordTSynthesizer` is the
scikit-learn style entry point; the functional layers live in `statevec`
(simulation), `circuit` (genomes, metrics, QASM), `targets` (benchmark
states), `evolve` (the search itself), and `experiment`/`cli` (batch
driver).
"""

from . import circuit, estimator, evolve, experiment, statevec, targets
from .circuit import (
    Circuit,
    Gate,
    depth,
    from_qasm,
    gate_count,
    optimize,
    random_circuit,
    random_gate,
    t_count,
    to_qasm,
)
from .estimator import CliffordTSynthesizer
from .evolve import Fitness, GaParams, Individual, RunResult
from .experiment import ExperimentConfig, ExperimentReport, aggregate, run_experiment, write_outputs
from .statevec import MAX_QUBITS, apply_gate, check_state, fidelity, simulate, zero_state
from .targets import ghz, haar_random, load_state_file, poisson_state, qft_all_ones, w_state

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "CliffordTSynthesizer",
    "ExperimentConfig",
    "ExperimentReport",
    "Fitness",
    "GaParams",
    "Gate",
    "Individual",
    "MAX_QUBITS",
    "RunResult",
    "aggregate",
    "apply_gate",
    "check_state",
    "circuit",
    "depth",
    "estimator",
    "evolve",
    "experiment",
    "fidelity",
    "from_qasm",
    "gate_count",
    "ghz",
    "haar_random",
    "load_state_file",
    "optimize",
    "poisson_state",
    "qft_all_ones",
    "random_circuit",
    "random_gate",
    "run_experiment",
    "simulate",
    "statevec",
    "t_count",
    "targets",
    "to_qasm",
    "w_state",
    "write_outputs",
    "zero_state",
]
