"""Jitted in-place gate kernels.

The evolutionary search simulates on the order of 10^5-10^6 circuits per
run, so gates are applied by amplitude-pair iteration with stride 2**qubit
instead of matrix multiplication, and a whole gate list is executed in one
jitted call: each gate is packed into an int64 word (bits 0-1 gate code,
bits 2-6 first operand, bits 7-11 second operand).
"""

import numpy as np
from numba import njit

SQRT1_2 = 0.7071067811865476
T_PHASE = complex(SQRT1_2, SQRT1_2)  # exp(1j*pi/4)

HADAMARD = 0
PHASE_S = 1
PHASE_T = 2
CX = 3


@njit(cache=True, nogil=True)
def apply_h(amps, qubit):
    stride = 1 << qubit
    for base in range(0, amps.shape[0], stride << 1):
        for off in range(base, base + stride):
            a = amps[off]
            b = amps[off + stride]
            amps[off] = (a + b) * SQRT1_2
            amps[off + stride] = (a - b) * SQRT1_2


@njit(cache=True, nogil=True)
def apply_phase(amps, qubit, phase):
    # Multiplies amplitudes whose `qubit` bit is set; covers both s and t.
    stride = 1 << qubit
    for base in range(0, amps.shape[0], stride << 1):
        for off in range(base + stride, base + (stride << 1)):
            amps[off] = amps[off] * phase


@njit(cache=True, nogil=True)
def apply_cnot(amps, control, target):
    cbit = 1 << control
    tbit = 1 << target
    for idx in range(amps.shape[0]):
        if (idx & cbit) != 0 and (idx & tbit) == 0:
            flipped = idx | tbit
            tmp = amps[idx]
            amps[idx] = amps[flipped]
            amps[flipped] = tmp


@njit(cache=True, nogil=True)
def run_packed(amps, packed, n_qubits):
    """Apply a packed gate list in place.

    Returns -1 on success, or the index of the first gate addressing a
    qubit outside the register.
    """
    for i in range(packed.shape[0]):
        word = packed[i]
        code = word & 3
        a = (word >> 2) & 31
        b = (word >> 7) & 31
        if a >= n_qubits or b >= n_qubits:
            return i
        if code == HADAMARD:
            apply_h(amps, a)
        elif code == PHASE_S:
            apply_phase(amps, a, 1j)
        elif code == PHASE_T:
            apply_phase(amps, a, T_PHASE)
        else:
            apply_cnot(amps, a, b)
    return -1
