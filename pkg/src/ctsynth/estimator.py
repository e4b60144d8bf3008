"""scikit-learn style front end for the circuit synthesizer."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted, check_random_state

from .circuit import to_qasm
from .evolve import GaParams, run
from .statevec import check_state, fidelity, simulate


class CliffordTSynthesizer(BaseEstimator):
    """Evolve a {h, s, t, cx} circuit that prepares a target statevector.

    Follows scikit-learn conventions: hyperparameters are stored verbatim in
    ``__init__`` (so ``get_params``/``set_params``/``clone`` work), ``fit``
    takes the target state and returns ``self``, and results land in
    trailing-underscore attributes.

    Parameters
    ----------
    pop_size : int, default=150
        Population size (must be even).
    generations : int, default=2000
        Generation budget.
    cxpb : float, default=0.5
        Per-pair crossover probability.
    mutpb : float, default=0.25
        Per-individual mutation probability.
    crossover : str, default="messy_one_point"
        One of "one_point", "two_point", "messy_one_point", "uniform".
    selection : str, default="best_duplication"
        One of "best", "worst", "random", "roulette", "tournament",
        "best_duplication".
    tournament_size : int, default=3
        Entrants per tournament (tournament selection only).
    init_len_min, init_len_max : int, defaults=1, 30
        Uniform bounds on initial genome length.
    size_limit : float, default=2000
        Stop early when the mean population gate count exceeds this.
    patience : int, default=0
        When > 0, stop after this many consecutive generations at
        best-so-far fidelity >= 1 - 1e-12. 0 disables the rule.
    n_jobs : int, default=1
        Threads used for fitness evaluation. Does not affect results.
    random_state : int or None, default=None
        Seed for the search. None draws a seed from numpy's global state.

    Attributes
    ----------
    best_circuit_ : Circuit
        Best individual of the final population.
    best_fitness_ : Fitness
        Its (fidelity, gate_count, t_count) triple.
    history_ : list[Fitness]
        Best-so-far trajectory, one entry per generation boundary.
    result_ : RunResult
        The full run record.
    n_qubits_ : int
        Register width implied by the target.
    target_ : ndarray
        The (normalized) target the estimator was fitted against.

    Examples
    --------
    >>> from ctsynth import CliffordTSynthesizer, targets
    >>> synth = CliffordTSynthesizer(generations=300, random_state=7)
    >>> synth = synth.fit(targets.ghz(2))
    >>> 0.0 <= synth.score() <= 1.0
    True
    """

    def __init__(
        self,
        pop_size: int = 150,
        generations: int = 2000,
        cxpb: float = 0.5,
        mutpb: float = 0.25,
        crossover: str = "messy_one_point",
        selection: str = "best_duplication",
        tournament_size: int = 3,
        init_len_min: int = 1,
        init_len_max: int = 30,
        size_limit: float = 2000.0,
        patience: int = 0,
        n_jobs: int = 1,
        random_state: int | None = None,
    ):
        self.pop_size = pop_size
        self.generations = generations
        self.cxpb = cxpb
        self.mutpb = mutpb
        self.crossover = crossover
        self.selection = selection
        self.tournament_size = tournament_size
        self.init_len_min = init_len_min
        self.init_len_max = init_len_max
        self.size_limit = size_limit
        self.patience = patience
        self.n_jobs = n_jobs
        self.random_state = random_state

    def _seed(self) -> int:
        if isinstance(self.random_state, (int, np.integer)) and not isinstance(
            self.random_state, bool
        ):
            return int(self.random_state)
        return int(check_random_state(self.random_state).randint(2**31 - 1))

    def fit(self, X, y=None):
        """Search for a circuit preparing the statevector X (1-D, length 2**n)."""
        target = check_state(X)
        params = GaParams(
            pop_size=self.pop_size,
            no_gens=self.generations,
            cxpb=self.cxpb,
            mutpb=self.mutpb,
            crossover_method=self.crossover,
            selection_method=self.selection,
            tournament_size=self.tournament_size,
            init_len_min=self.init_len_min,
            init_len_max=self.init_len_max,
            size_limit=self.size_limit,
            patience=self.patience,
            seed=self._seed(),
        )
        result = run(params, target, n_jobs=self.n_jobs)
        self.target_ = target
        self.n_qubits_ = result.best.genome.n_qubits
        self.result_ = result
        self.best_circuit_ = result.best.genome
        self.best_fitness_ = result.best.fitness
        self.history_ = result.history
        return self

    def score(self, X=None, y=None) -> float:
        """Fidelity of the fitted circuit against X (default: the fit target)."""
        check_is_fitted(self, "best_circuit_")
        target = self.target_ if X is None else check_state(X)
        return fidelity(simulate(self.best_circuit_), target)

    def to_qasm(self) -> str:
        """OpenQASM 2.0 text for the fitted circuit."""
        check_is_fitted(self, "best_circuit_")
        return to_qasm(self.best_circuit_)
