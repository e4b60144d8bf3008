"""Dense statevector simulation for {h, s, t, cx} circuits.

Convention (shared by the whole package, including QASM export): qubit k
addresses bit k of the basis index, so qubit 0 is the least significant
bit. States are 1-D complex128 arrays of length 2**n; kernels mutate them
in place. Global phase is physical here and is never normalized away.
"""

from __future__ import annotations

import numpy as np

from . import _kernels
from .circuit import CNOT, H, S, T, Circuit, Gate

MAX_QUBITS = 24

_GATE_CODE = {
    H: _kernels.HADAMARD,
    S: _kernels.PHASE_S,
    T: _kernels.PHASE_T,
    CNOT: _kernels.CX,
}


def zero_state(n_qubits: int, max_qubits: int = MAX_QUBITS) -> np.ndarray:
    """|0...0> as a fresh complex128 array of length 2**n_qubits.

    The ceiling exists because the array takes 16 * 2**n bytes; pass a
    larger max_qubits to lift it deliberately.
    """
    if not 1 <= n_qubits <= max_qubits:
        raise ValueError(f"n_qubits must be in [1, {max_qubits}], got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def n_qubits_of(state: np.ndarray) -> int:
    """Qubit count of a statevector (its length must be a power of two >= 2)."""
    dim = len(state)
    n = dim.bit_length() - 1
    if n < 1 or (1 << n) != dim:
        raise ValueError(f"state length {dim} is not a power of two >= 2")
    return n


def check_state(x, *, atol: float = 1e-6) -> np.ndarray:
    """Validate a statevector given as any array-like and return it as a
    complex128 copy normalized to machine precision.

    Raises ValueError unless x is 1-D with power-of-two length, finite, and
    has unit norm within atol.
    """
    state = np.asarray(x, dtype=np.complex128)
    if state.ndim != 1:
        raise ValueError(f"statevector must be 1-D, got shape {state.shape}")
    n_qubits_of(state)
    if not np.all(np.isfinite(state.view(np.float64))):
        raise ValueError("statevector contains non-finite amplitudes")
    norm = float(np.linalg.norm(state))
    if abs(norm - 1.0) > atol:
        raise ValueError(f"statevector norm is {norm!r}, expected 1 within {atol}")
    return state / norm


def apply_gate(state: np.ndarray, gate: Gate) -> np.ndarray:
    """Apply one gate to the state in place and return the state."""
    state = np.ascontiguousarray(state, dtype=np.complex128)
    n = n_qubits_of(state)
    if max(gate.qubits) >= n:
        raise ValueError(
            f"{gate.kind} on {gate.qubits} addresses a qubit >= {n}"
        )
    if gate.kind == H:
        _kernels.apply_h(state, gate.qubits[0])
    elif gate.kind == S:
        _kernels.apply_phase(state, gate.qubits[0], 1j)
    elif gate.kind == T:
        _kernels.apply_phase(state, gate.qubits[0], _kernels.T_PHASE)
    else:
        _kernels.apply_cnot(state, gate.qubits[0], gate.qubits[1])
    return state


def _pack(gates: list[Gate]) -> np.ndarray:
    code = _GATE_CODE
    return np.fromiter(
        (code[g.kind] | (g.qubits[0] << 2) | (g.qubits[-1] << 7) for g in gates),
        dtype=np.int64,
        count=len(gates),
    )


def simulate(circuit: Circuit) -> np.ndarray:
    """Run the circuit on |0...0> left to right and return the final state."""
    state = zero_state(circuit.n_qubits)
    if not circuit.gates:
        return state
    bad = _kernels.run_packed(state, _pack(circuit.gates), circuit.n_qubits)
    if bad >= 0:
        gate = circuit.gates[bad]
        raise ValueError(
            f"gate {bad} ({gate.kind} on {gate.qubits}) addresses a qubit "
            f">= {circuit.n_qubits}"
        )
    return state


def fidelity(a, b) -> float:
    """|<a|b>|**2 for pure states, clamped into [0, 1].

    Symmetric in its arguments; rounding overshoot beyond 1 is clipped.
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        raise ValueError(f"statevector shapes differ: {a.shape} vs {b.shape}")
    overlap = np.vdot(a, b)
    value = overlap.real * overlap.real + overlap.imag * overlap.imag
    return min(max(value, 0.0), 1.0)
