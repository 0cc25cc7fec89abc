"""Pure-numpy statevector kernels.

Drop-in fallback for the compiled extension ``_kernels_cy``. Every function
mutates ``states`` in place, where ``states`` is a C-contiguous complex128
array of shape ``(batch, 2**n_qubits)`` and qubit 0 is the most significant
bit of the basis index. Rotation angles are passed as a float64 array of
length ``batch`` or length 1 (broadcast).
"""

from functools import lru_cache

import numpy as np


def _bit_views(states, target, n_qubits):
    # shape (batch, left, 2, right): axis 2 is the target qubit
    batch = states.shape[0]
    left = 1 << target
    right = 1 << (n_qubits - 1 - target)
    return states.reshape(batch, left, 2, right)


def _col(angles, batch):
    # angle column broadcastable against (batch, left, right)
    a = np.asarray(angles, dtype=np.float64)
    if a.shape[0] == 1 and batch != 1:
        return a.reshape(1, 1, 1)
    return a.reshape(batch, 1, 1)


def apply_rx(states, angles, target, n_qubits):
    v = _bit_views(states, target, n_qubits)
    half = _col(angles, states.shape[0]) / 2.0
    c, s = np.cos(half), np.sin(half)
    a0 = v[:, :, 0, :].copy()
    a1 = v[:, :, 1, :]
    v[:, :, 0, :] = c * a0 - 1j * s * a1
    v[:, :, 1, :] = -1j * s * a0 + c * a1


def apply_ry(states, angles, target, n_qubits):
    v = _bit_views(states, target, n_qubits)
    half = _col(angles, states.shape[0]) / 2.0
    c, s = np.cos(half), np.sin(half)
    a0 = v[:, :, 0, :].copy()
    a1 = v[:, :, 1, :]
    v[:, :, 0, :] = c * a0 - s * a1
    v[:, :, 1, :] = s * a0 + c * a1


def apply_rz(states, angles, target, n_qubits):
    v = _bit_views(states, target, n_qubits)
    half = _col(angles, states.shape[0]) / 2.0
    phase = np.cos(half) - 1j * np.sin(half)
    v[:, :, 0, :] *= phase
    v[:, :, 1, :] *= np.conj(phase)


def apply_matrix1q(states, mat, target, n_qubits):
    v = _bit_views(states, target, n_qubits)
    a0 = v[:, :, 0, :].copy()
    a1 = v[:, :, 1, :]
    v[:, :, 0, :] = mat[0, 0] * a0 + mat[0, 1] * a1
    v[:, :, 1, :] = mat[1, 0] * a0 + mat[1, 1] * a1


@lru_cache(maxsize=None)
def _cnot_perm(control, target, n_qubits):
    idx = np.arange(1 << n_qubits)
    cmask = 1 << (n_qubits - 1 - control)
    tmask = 1 << (n_qubits - 1 - target)
    return np.where(idx & cmask, idx ^ tmask, idx)


def apply_cnot(states, control, target, n_qubits):
    states[:] = states[:, _cnot_perm(control, target, n_qubits)]


@lru_cache(maxsize=None)
def _controlled_pair(control, target, n_qubits):
    idx = np.arange(1 << n_qubits)
    cmask = 1 << (n_qubits - 1 - control)
    tmask = 1 << (n_qubits - 1 - target)
    sel = (idx & cmask).astype(bool) & ~(idx & tmask).astype(bool)
    i10 = idx[sel]
    return i10, i10 ^ tmask


def apply_cry(states, angles, control, target, n_qubits):
    i10, i11 = _controlled_pair(control, target, n_qubits)
    half = np.asarray(angles, dtype=np.float64).reshape(-1, 1) / 2.0
    c, s = np.cos(half), np.sin(half)
    a0 = states[:, i10].copy()
    a1 = states[:, i11]
    states[:, i10] = c * a0 - s * a1
    states[:, i11] = s * a0 + c * a1


@lru_cache(maxsize=None)
def _pauli_tables(xlike, zlike, n_y, dim):
    idx = np.arange(dim, dtype=np.uint64)
    v = idx & np.uint64(zlike)
    for shift in (32, 16, 8, 4, 2, 1):
        v ^= v >> np.uint64(shift)
    signs = 1.0 - 2.0 * (v & np.uint64(1)).astype(np.float64)
    phases = (1j ** (n_y % 4)) * signs
    flipped = (idx ^ np.uint64(xlike)).astype(np.intp)
    return flipped, phases


def pauli_expectation(states, xlike, zlike, n_y):
    """Per-row <psi|P|psi> for the Pauli string encoded by bit masks.

    ``xlike`` marks qubits carrying X or Y, ``zlike`` marks Z or Y, and
    ``n_y`` counts Y letters (supplies the i**n_y prefactor).
    """
    flipped, phases = _pauli_tables(xlike, zlike, n_y, states.shape[1])
    return np.sum(np.conj(states[:, flipped]) * phases * states, axis=1)
