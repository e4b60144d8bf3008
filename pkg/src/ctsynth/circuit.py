"""Gate/circuit genome types, complexity metrics, identity cancellation,
and OpenQASM 2.0 serialization for the {h, s, t, cx} gate set."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from random import Random

H = "h"
S = "s"
T = "t"
CNOT = "cx"

GATE_KINDS = (H, S, T, CNOT)
SINGLE_QUBIT_KINDS = (H, S, T)

_ARITY = {H: 1, S: 1, T: 1, CNOT: 2}


@dataclass(frozen=True, slots=True)
class Gate:
    """One gate: a kind from {h, s, t, cx} plus its qubit operands.

    Single-qubit kinds take exactly one operand; cx takes (control, target)
    with control != target.
    """

    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(self.qubits))
        arity = _ARITY.get(self.kind)
        if arity is None:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.qubits) != arity:
            raise ValueError(
                f"{self.kind} takes {arity} operand(s), got {self.qubits!r}"
            )
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits!r}")
        if self.kind == CNOT and self.qubits[0] == self.qubits[1]:
            raise ValueError("cx control and target must differ")


@dataclass
class Circuit:
    """An ordered gate sequence over a register of n_qubits qubits."""

    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be >= 1, got {self.n_qubits}")

    def __len__(self) -> int:
        return len(self.gates)


def random_gate(n_qubits: int, rng: Random) -> Gate:
    """Draw a gate uniformly over the admissible kinds with uniform operands.

    cx is excluded on a single-qubit register (no distinct control/target
    pair exists).
    """
    if n_qubits < 1:
        raise ValueError(f"n_qubits must be >= 1, got {n_qubits}")
    kinds = SINGLE_QUBIT_KINDS if n_qubits == 1 else GATE_KINDS
    kind = kinds[rng.randrange(len(kinds))]
    if kind == CNOT:
        control, target = rng.sample(range(n_qubits), 2)
        return Gate(CNOT, (control, target))
    return Gate(kind, (rng.randrange(n_qubits),))


def random_circuit(n_qubits: int, length: int, rng: Random) -> Circuit:
    if length < 0:
        raise ValueError(f"length must be >= 0, got {length}")
    return Circuit(n_qubits, [random_gate(n_qubits, rng) for _ in range(length)])


def gate_count(circuit: Circuit) -> int:
    return len(circuit.gates)


def t_count(circuit: Circuit) -> int:
    return sum(1 for g in circuit.gates if g.kind == T)


def depth(circuit: Circuit) -> int:
    """Schedule depth: each gate sits one layer above the busiest of its
    operand qubits. The empty circuit has depth 0."""
    level = [0] * circuit.n_qubits
    for gate in circuit.gates:
        layer = 1 + max(level[q] for q in gate.qubits)
        for q in gate.qubits:
            level[q] = layer
    return max(level)


def optimize(circuit: Circuit) -> Circuit:
    """Cancel identity patterns until a fixed point and return a new circuit.

    Rewrites fire between wire-adjacent gates, i.e. gates with no intervening
    gate acting on any shared qubit (gates are never reordered):

      h h                      -> nothing
      cx cx (same ctrl/target) -> nothing
      s s s s                  -> nothing
      t t                      -> s

    The result prepares the same state and never has more gates (or more
    t gates) than the input.
    """
    gates = circuit.gates
    while True:
        gates, changed = _cancel_pass(circuit.n_qubits, gates)
        if not changed:
            return Circuit(circuit.n_qubits, gates)


def _cancel_pass(n_qubits: int, gates: list[Gate]) -> tuple[list[Gate], bool]:
    # One sweep. `wires[q]` stacks indices (into `out`) of surviving gates
    # touching q, so the stack top is always the wire-adjacent predecessor.
    out: list[Gate | None] = []
    wires: list[list[int]] = [[] for _ in range(n_qubits)]
    changed = False

    def emit(gate: Gate) -> None:
        nonlocal changed
        if gate.kind == CNOT:
            ctrl_wire = wires[gate.qubits[0]]
            targ_wire = wires[gate.qubits[1]]
            if (
                ctrl_wire
                and targ_wire
                and ctrl_wire[-1] == targ_wire[-1]
                and out[ctrl_wire[-1]] == gate
            ):
                out[ctrl_wire.pop()] = None
                targ_wire.pop()
                changed = True
                return
            out.append(gate)
            ctrl_wire.append(len(out) - 1)
            targ_wire.append(len(out) - 1)
            return
        wire = wires[gate.qubits[0]]
        prev = out[wire[-1]] if wire else None
        if gate.kind == H and prev is not None and prev.kind == H:
            out[wire.pop()] = None
            changed = True
        elif gate.kind == T and prev is not None and prev.kind == T:
            out[wire.pop()] = None
            changed = True
            emit(Gate(S, gate.qubits))  # t t == s; may chain into s s s s
        elif gate.kind == S and len(wire) >= 3 and all(
            out[wire[-k]].kind == S for k in (1, 2, 3)
        ):
            for _ in range(3):
                out[wire.pop()] = None
            changed = True
        else:
            out.append(gate)
            wire.append(len(out) - 1)

    for gate in gates:
        emit(gate)
    return [g for g in out if g is not None], changed


def _check_bounds(circuit: Circuit) -> None:
    for i, gate in enumerate(circuit.gates):
        if max(gate.qubits) >= circuit.n_qubits:
            raise ValueError(
                f"gate {i} ({gate.kind} on {gate.qubits}) addresses a qubit "
                f">= {circuit.n_qubits}"
            )


def to_qasm(circuit: Circuit) -> str:
    """Serialize to OpenQASM 2.0 with a single register named q."""
    _check_bounds(circuit)
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.n_qubits}];",
    ]
    for gate in circuit.gates:
        if gate.kind == CNOT:
            lines.append(f"cx q[{gate.qubits[0]}],q[{gate.qubits[1]}];")
        else:
            lines.append(f"{gate.kind} q[{gate.qubits[0]}];")
    return "\n".join(lines) + "\n"


_QREG_RE = re.compile(r"^qreg\s+(\w+)\s*\[\s*(\d+)\s*\]$")
_ONE_QUBIT_RE = re.compile(r"^(h|s|t)\s+(\w+)\s*\[\s*(\d+)\s*\]$")
_CX_RE = re.compile(r"^cx\s+(\w+)\s*\[\s*(\d+)\s*\]\s*,\s*(\w+)\s*\[\s*(\d+)\s*\]$")


def from_qasm(text: str) -> Circuit:
    """Parse the dialect emitted by to_qasm: OPENQASM 2.0, one quantum
    register, gates restricted to h/s/t/cx. Comments are tolerated; anything
    else raises ValueError."""
    source = "\n".join(line.split("//", 1)[0] for line in text.splitlines())
    register: str | None = None
    n_qubits = 0
    gates: list[Gate] = []
    saw_version = False
    for statement in (s.strip() for s in source.split(";")):
        if not statement:
            continue
        if statement.startswith("OPENQASM"):
            if statement.split()[1:2] != ["2.0"]:
                raise ValueError(f"unsupported version: {statement!r}")
            saw_version = True
            continue
        if statement.startswith("include"):
            continue
        m = _QREG_RE.match(statement)
        if m:
            if register is not None:
                raise ValueError("multiple qreg declarations")
            register = m.group(1)
            n_qubits = int(m.group(2))
            if n_qubits < 1:
                raise ValueError("qreg must hold at least one qubit")
            continue
        if register is None:
            raise ValueError(f"gate before qreg declaration: {statement!r}")
        m = _ONE_QUBIT_RE.match(statement)
        if m:
            if m.group(2) != register:
                raise ValueError(f"unknown register in {statement!r}")
            q = int(m.group(3))
            if q >= n_qubits:
                raise ValueError(f"qubit index out of range: {statement!r}")
            gates.append(Gate(m.group(1), (q,)))
            continue
        m = _CX_RE.match(statement)
        if m:
            if m.group(1) != register or m.group(3) != register:
                raise ValueError(f"unknown register in {statement!r}")
            control, target = int(m.group(2)), int(m.group(4))
            if control >= n_qubits or target >= n_qubits:
                raise ValueError(f"qubit index out of range: {statement!r}")
            gates.append(Gate(CNOT, (control, target)))
            continue
        raise ValueError(f"unsupported qasm statement: {statement!r}")
    if not saw_version:
        raise ValueError("missing OPENQASM 2.0 header")
    if register is None:
        raise ValueError("missing qreg declaration")
    return Circuit(n_qubits, gates)
