"""Benchmark target statevectors.

All families return unit-norm complex128 vectors in the package-wide
little-endian amplitude order (qubit 0 = least significant index bit).
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from scipy.special import gammaln

from .statevec import MAX_QUBITS, check_state

FAMILIES = ("random", "poisson", "w", "ghz", "qft", "file")


def _check_n(n_qubits: int) -> None:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")


def ghz(n_qubits: int) -> np.ndarray:
    """(|0...0> + |1...1>)/sqrt(2)."""
    _check_n(n_qubits)
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = amps[-1] = np.sqrt(0.5)
    return amps


def w_state(n_qubits: int) -> np.ndarray:
    """Equal superposition of the n one-hot basis states."""
    _check_n(n_qubits)
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    for k in range(n_qubits):
        amps[1 << k] = 1.0 / np.sqrt(n_qubits)
    return amps


def qft_all_ones(n_qubits: int) -> np.ndarray:
    """Fourier transform of the all-ones basis state |1...1>.

    With N = 2**n the input encodes N - 1, giving amplitudes
    exp(-2j*pi*x/N)/sqrt(N) (the N-1 in the exponent reduces mod N).
    """
    _check_n(n_qubits)
    dim = 1 << n_qubits
    x = np.arange(dim)
    return np.exp(-2j * np.pi * x / dim) / np.sqrt(dim)


def poisson_state(n_qubits: int) -> np.ndarray:
    """Amplitudes proportional to the Poisson pmf with lam = 2**(n-1).

    Weights are evaluated in log space (x! overflows float64 past x ~ 170)
    and L2-normalized, so the amplitudes are real and non-negative with the
    peak at x = lam or lam - 1.
    """
    _check_n(n_qubits)
    lam = float(1 << (n_qubits - 1))
    x = np.arange(1 << n_qubits, dtype=np.float64)
    log_w = x * np.log(lam) - lam - gammaln(x + 1.0)
    weights = np.exp(log_w - log_w.max())
    return (weights / np.linalg.norm(weights)).astype(np.complex128)


def haar_random(n_qubits: int, seed: int) -> np.ndarray:
    """A Haar-distributed random state: i.i.d. complex Gaussian amplitudes,
    L2-normalized. The same seed reproduces the same vector bit-exactly."""
    _check_n(n_qubits)
    rng = np.random.default_rng(seed)
    dim = 1 << n_qubits
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return amps / np.linalg.norm(amps)


def load_state_file(path: str | Path, n_qubits: int | None = None) -> np.ndarray:
    """Read a statevector from a text file of `index real imag` lines, one
    per nonzero amplitude. Blank lines and lines starting with '#' are
    skipped.

    The vector must have unit norm within 1e-6; it is returned renormalized
    to machine precision. When n_qubits is omitted it is inferred from the
    largest index present.
    """
    entries: dict[int, complex] = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(
                    f"{path}:{lineno}: expected 'index real imag', got {line!r}"
                )
            try:
                index = int(parts[0])
                amp = complex(float(parts[1]), float(parts[2]))
            except ValueError:
                raise ValueError(
                    f"{path}:{lineno}: could not parse {line!r}"
                ) from None
            if index < 0:
                raise ValueError(f"{path}:{lineno}: negative index {index}")
            if index in entries:
                raise ValueError(f"{path}:{lineno}: duplicate index {index}")
            entries[index] = amp
    if not entries:
        raise ValueError(f"{path}: no amplitudes found")
    top = max(entries)
    if n_qubits is None:
        n_qubits = max(1, top.bit_length())
    if top >= (1 << n_qubits):
        raise ValueError(
            f"{path}: index {top} does not fit in {n_qubits} qubit(s)"
        )
    state = np.zeros(1 << n_qubits, dtype=np.complex128)
    for index, amp in entries.items():
        state[index] = amp
    try:
        return check_state(state, atol=1e-6)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from None


def build_target(
    family: str,
    n_qubits: int,
    *,
    seed: int | None = None,
    path: str | Path | None = None,
) -> np.ndarray:
    """Build a target vector by family name (see FAMILIES)."""
    if family == "ghz":
        return ghz(n_qubits)
    if family == "w":
        return w_state(n_qubits)
    if family == "qft":
        return qft_all_ones(n_qubits)
    if family == "poisson":
        return poisson_state(n_qubits)
    if family == "random":
        if seed is None:
            raise ValueError("the random family needs a seed")
        return haar_random(n_qubits, seed)
    if family == "file":
        if path is None:
            raise ValueError("the file family needs a path")
        return load_state_file(path, n_qubits)
    raise ValueError(f"unknown target family {family!r}; choose from {FAMILIES}")
