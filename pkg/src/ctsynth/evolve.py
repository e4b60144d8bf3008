"""Evolutionary search for state-preparation circuits.

A population of circuit genomes is evolved toward a target statevector.
Fitness is the triple (fidelity, gate_count, t_count) ordered
lexicographically: higher fidelity always wins, exact fidelity ties fall
through to fewer gates, then to fewer t gates. Every generation the
population is cloned and appended to itself, adjacent pairs are recombined
with probability cxpb (so originals mate with originals and clones with
clones), every individual is mutated with probability mutpb, changed
genomes are re-evaluated, and selection reduces the pool back to pop_size.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import total_ordering
from random import Random

import numpy as np

from .circuit import CNOT, Circuit, Gate, gate_count, optimize, random_circuit, random_gate, t_count
from .statevec import check_state, fidelity, n_qubits_of, simulate

CROSSOVER_METHODS = ("one_point", "two_point", "messy_one_point", "uniform")
SELECTION_METHODS = ("best", "worst", "random", "roulette", "tournament", "best_duplication")
MUTATION_OPS = (
    "gate_positioning",
    "gate_addition",
    "gate_deletion",
    "switching",
    "sequence_insertion",
    "sequence_deletion",
    "circuit_optimization",
)

# Mutated gate blocks are bounded to this many gates, as is the number of
# gates a sequence deletion may remove.
SEQUENCE_LIMIT = 25

GENERATION_LIMIT = "generation_limit"
SIZE_LIMIT = "size_limit"
TARGET_REACHED = "target_reached"
TERMINATION_REASONS = (GENERATION_LIMIT, SIZE_LIMIT, TARGET_REACHED)

# How many of the fittest (and how many uniform-random) individuals the
# best_duplication scheme duplicates.
_DUPLICATION_HEAD = 10


@total_ordering
@dataclass(frozen=True, slots=True)
class Fitness:
    """(fidelity, gate_count, t_count), compared lexicographically.

    The sort key flips the count signs so that bigger is better on every
    component; ties are exact float equality on fidelity, never epsilon
    based.
    """

    fidelity: float
    gate_count: int
    t_count: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.fidelity <= 1.0:
            raise ValueError(f"fidelity must be in [0, 1], got {self.fidelity}")
        if self.gate_count < 0:
            raise ValueError(f"gate_count must be >= 0, got {self.gate_count}")
        if not 0 <= self.t_count <= self.gate_count:
            raise ValueError(
                f"t_count must be in [0, gate_count], got {self.t_count}"
            )

    @property
    def key(self) -> tuple[float, int, int]:
        return (self.fidelity, -self.gate_count, -self.t_count)

    def __lt__(self, other: "Fitness") -> bool:
        return self.key < other.key


@dataclass
class Individual:
    """A circuit genome plus its cached fitness (None = needs evaluation)."""

    genome: Circuit
    fitness: Fitness | None = None


@dataclass
class GaParams:
    """Search configuration. Defaults mirror the benchmark setup."""

    pop_size: int = 150
    no_gens: int = 20000
    cxpb: float = 0.5
    mutpb: float = 0.25
    crossover_method: str = "messy_one_point"
    selection_method: str = "best_duplication"
    tournament_size: int = 3
    init_len_min: int = 1
    init_len_max: int = 30
    size_limit: float = 2000.0
    patience: int = 0
    seed: int = 0

    def validate(self) -> None:
        if self.pop_size < 2 or self.pop_size % 2:
            raise ValueError(f"pop_size must be even and >= 2, got {self.pop_size}")
        if self.no_gens < 0:
            raise ValueError(f"no_gens must be >= 0, got {self.no_gens}")
        for name in ("cxpb", "mutpb"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")
        if self.crossover_method not in CROSSOVER_METHODS:
            raise ValueError(f"unknown crossover method {self.crossover_method!r}")
        if self.selection_method not in SELECTION_METHODS:
            raise ValueError(f"unknown selection method {self.selection_method!r}")
        if self.tournament_size < 1:
            raise ValueError(f"tournament_size must be >= 1, got {self.tournament_size}")
        if not 0 <= self.init_len_min <= self.init_len_max:
            raise ValueError(
                f"need 0 <= init_len_min <= init_len_max, got "
                f"[{self.init_len_min}, {self.init_len_max}]"
            )
        if self.size_limit <= 0:
            raise ValueError(f"size_limit must be > 0, got {self.size_limit}")
        if self.patience < 0:
            raise ValueError(f"patience must be >= 0, got {self.patience}")


@dataclass
class RunResult:
    best: Individual
    generations_run: int
    termination_reason: str
    history: list[Fitness]
    wall_time: float
    params: GaParams
    population: list[Individual] = field(default_factory=list)


def evaluate(genome: Circuit, target: np.ndarray) -> Fitness:
    """Fitness of one genome: fidelity against the target plus size metrics."""
    target = np.asarray(target, dtype=np.complex128)
    if target.shape != (1 << genome.n_qubits,):
        raise ValueError(
            f"target has {target.shape[0]} amplitudes but the genome acts on "
            f"{genome.n_qubits} qubit(s)"
        )
    return Fitness(fidelity(simulate(genome), target), gate_count(genome), t_count(genome))


def crossover(method: str, a: Circuit, b: Circuit, rng: Random) -> tuple[Circuit, Circuit]:
    """Recombine two parents into two children.

    Every method conserves the combined gate multiset of the parents; empty
    parents pass through unchanged.
    """
    if a.n_qubits != b.n_qubits:
        raise ValueError(f"parents act on {a.n_qubits} vs {b.n_qubits} qubits")
    ga, gb = a.gates, b.gates
    if method == "one_point":
        # Each parent is cut at its own midpoint.
        cut_a, cut_b = len(ga) // 2, len(gb) // 2
        child1 = ga[:cut_a] + gb[cut_b:]
        child2 = gb[:cut_b] + ga[cut_a:]
    elif method == "two_point":
        lo_a, hi_a = sorted((rng.randint(0, len(ga)), rng.randint(0, len(ga))))
        lo_b, hi_b = sorted((rng.randint(0, len(gb)), rng.randint(0, len(gb))))
        child1 = ga[:lo_a] + gb[lo_b:hi_b] + ga[hi_a:]
        child2 = gb[:lo_b] + ga[lo_a:hi_a] + gb[hi_b:]
    elif method == "messy_one_point":
        # Independent cut per parent, tails swapped; children change length.
        cut_a = rng.randint(0, len(ga))
        cut_b = rng.randint(0, len(gb))
        child1 = ga[:cut_a] + gb[cut_b:]
        child2 = gb[:cut_b] + ga[cut_a:]
    elif method == "uniform":
        child1, child2 = list(ga), list(gb)
        for i in range(min(len(ga), len(gb))):
            if rng.random() < 0.5:
                child1[i], child2[i] = child2[i], child1[i]
    else:
        raise ValueError(f"unknown crossover method {method!r}")
    return Circuit(a.n_qubits, child1), Circuit(a.n_qubits, child2)


def mutate(circuit: Circuit, rng: Random, op: str | None = None) -> Circuit:
    """Apply one mutation operator, chosen uniformly unless op is given.

    Operators that need an existing gate (positioning, deletion, switching)
    degrade to gate_addition on an empty genome. The input is never
    modified.
    """
    if op is None:
        op = MUTATION_OPS[rng.randrange(len(MUTATION_OPS))]
    elif op not in MUTATION_OPS:
        raise ValueError(f"unknown mutation operator {op!r}")
    gates = circuit.gates
    n = circuit.n_qubits
    if not gates and op in ("gate_positioning", "gate_deletion", "switching"):
        op = "gate_addition"
    if op == "gate_positioning":
        # Re-draw the operands of one gate, keeping its kind.
        i = rng.randrange(len(gates))
        new = list(gates)
        if gates[i].kind == CNOT:
            new[i] = Gate(CNOT, tuple(rng.sample(range(n), 2)))
        else:
            new[i] = Gate(gates[i].kind, (rng.randrange(n),))
        return Circuit(n, new)
    if op == "gate_addition":
        pos = rng.randint(0, len(gates))
        return Circuit(n, gates[:pos] + [random_gate(n, rng)] + gates[pos:])
    if op == "gate_deletion":
        i = rng.randrange(len(gates))
        return Circuit(n, gates[:i] + gates[i + 1:])
    if op == "switching":
        i = rng.randrange(len(gates))
        new = list(gates)
        new[i] = random_gate(n, rng)
        return Circuit(n, new)
    if op == "sequence_insertion":
        length = rng.randint(1, SEQUENCE_LIMIT)
        pos = rng.randint(0, len(gates))
        block = [random_gate(n, rng) for _ in range(length)]
        return Circuit(n, gates[:pos] + block + gates[pos:])
    if op == "sequence_deletion":
        if not gates:
            return Circuit(n, [])
        pos = rng.randrange(len(gates))
        count = rng.randint(1, SEQUENCE_LIMIT)
        return Circuit(n, gates[:pos] + gates[pos + count:])
    return optimize(circuit)


def _require_evaluated(population: list[Individual]) -> None:
    for ind in population:
        if ind.fitness is None:
            raise ValueError("selection requires every individual to be evaluated")


def select(
    method: str,
    population: list[Individual],
    k: int,
    rng: Random,
    tournament_size: int = 3,
) -> list[Individual]:
    """Pick k individuals. best/worst/best_duplication use the full
    lexicographic fitness; roulette and tournament look at fidelity only."""
    _require_evaluated(population)
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    if method in ("best", "worst", "random") and k > len(population):
        raise ValueError(f"cannot pick {k} from {len(population)} without replacement")
    if method == "best":
        return sorted(population, key=lambda ind: ind.fitness.key, reverse=True)[:k]
    if method == "worst":
        return sorted(population, key=lambda ind: ind.fitness.key)[:k]
    if method == "random":
        return rng.sample(population, k)
    if method == "roulette":
        weights = [ind.fitness.fidelity for ind in population]
        if sum(weights) <= 0.0:
            return rng.sample(population, k)  # degenerate pool: uniform
        return rng.choices(population, weights=weights, k=k)
    if method == "tournament":
        if tournament_size < 1:
            raise ValueError(f"tournament_size must be >= 1, got {tournament_size}")
        chosen = []
        for _ in range(k):
            entrants = [population[rng.randrange(len(population))] for _ in range(tournament_size)]
            chosen.append(max(entrants, key=lambda ind: ind.fitness.fidelity))
        return chosen
    if method == "best_duplication":
        ranked = sorted(population, key=lambda ind: ind.fitness.key, reverse=True)
        head = ranked[:_DUPLICATION_HEAD]
        lucky = rng.sample(population, min(_DUPLICATION_HEAD, len(population)))
        chosen = head + head + lucky + lucky + ranked[_DUPLICATION_HEAD:]
        while len(chosen) < k:  # tiny-population padding
            chosen += ranked
        chosen = chosen[:k]
        # Mating pairs off adjacent individuals, so a rank-ordered return
        # would cross every duplicated elite with its own copy; shuffling
        # gives the duplicates distinct partners.
        rng.shuffle(chosen)
        return chosen
    raise ValueError(f"unknown selection method {method!r}")


def _evaluate_pool(
    individuals: list[Individual],
    target: np.ndarray,
    pool: ThreadPoolExecutor | None,
) -> Fitness:
    """Fill in missing fitnesses and return the best fitness in the group.

    Evaluation is pure, so the parallel path writes results back in list
    order and is bit-identical to the sequential one.
    """
    pending = [ind for ind in individuals if ind.fitness is None]
    if pool is None or len(pending) < 2:
        for ind in pending:
            ind.fitness = evaluate(ind.genome, target)
    else:
        results = pool.map(lambda genome: evaluate(genome, target),
                           [ind.genome for ind in pending])
        for ind, fit in zip(pending, results):
            ind.fitness = fit
    best = individuals[0].fitness
    for ind in individuals[1:]:
        if ind.fitness > best:
            best = ind.fitness
    return best


def _mean_gate_count(population: list[Individual]) -> float:
    return sum(len(ind.genome.gates) for ind in population) / len(population)


def run(params: GaParams, target, n_jobs: int = 1) -> RunResult:
    """Evolve circuits toward the target statevector.

    The run stops after no_gens generations, earlier when the mean gate
    count of the population exceeds params.size_limit, or (only when
    params.patience > 0) once best-so-far fidelity has been >= 1 - 1e-12
    for patience consecutive generations. Identical (params, target,
    n_jobs-independent) inputs produce identical results.
    """
    params.validate()
    if n_jobs < 1:
        raise ValueError(f"n_jobs must be >= 1, got {n_jobs}")
    target = check_state(target)
    n = n_qubits_of(target)
    rng = Random(params.seed)
    start = time.perf_counter()
    pool = ThreadPoolExecutor(max_workers=n_jobs) if n_jobs > 1 else None

    try:
        population = [
            Individual(random_circuit(n, rng.randint(params.init_len_min, params.init_len_max), rng))
            for _ in range(2 * params.pop_size)
        ]
        best_so_far = _evaluate_pool(population, target, pool)
        population = select(
            params.selection_method, population, params.pop_size, rng, params.tournament_size
        )

        history = [best_so_far]
        reason = GENERATION_LIMIT
        generations_run = 0
        streak = 0
        for generation in range(1, params.no_gens + 1):
            if _mean_gate_count(population) > params.size_limit:
                reason = SIZE_LIMIT
                break
            offspring = population + [Individual(ind.genome, ind.fitness) for ind in population]
            for i in range(1, len(offspring), 2):
                if rng.random() < params.cxpb:
                    left, right = crossover(
                        params.crossover_method,
                        offspring[i - 1].genome,
                        offspring[i].genome,
                        rng,
                    )
                    offspring[i - 1] = Individual(left)
                    offspring[i] = Individual(right)
            for i in range(len(offspring)):
                if rng.random() < params.mutpb:
                    offspring[i] = Individual(mutate(offspring[i].genome, rng))
            generation_best = _evaluate_pool(offspring, target, pool)
            population = select(
                params.selection_method, offspring, params.pop_size, rng, params.tournament_size
            )
            generations_run = generation
            if generation_best > best_so_far:
                best_so_far = generation_best
            history.append(best_so_far)
            if params.patience and best_so_far.fidelity >= 1.0 - 1e-12:
                streak += 1
                if streak >= params.patience:
                    reason = TARGET_REACHED
                    break
            else:
                streak = 0
    finally:
        if pool is not None:
            pool.shutdown()

    best = max(population, key=lambda ind: ind.fitness.key)
    return RunResult(
        best=best,
        generations_run=generations_run,
        termination_reason=reason,
        history=history,
        wall_time=time.perf_counter() - start,
        params=params,
        population=population,
    )
