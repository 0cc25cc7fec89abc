# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled statevector kernels.

Same contract as ``_kernels_py``: in-place updates of a C-contiguous
complex128 array of shape (batch, 2**n_qubits); qubit 0 is the most
significant bit; angle arrays have length batch or length 1 (broadcast).
"""

from libc.math cimport cos, sin

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef double complex cplx


cdef inline Py_ssize_t _pair_base(Py_ssize_t i, Py_ssize_t pos) nogil:
    # i-th basis index whose target bit is 0
    return ((i >> pos) << (pos + 1)) | (i & ((<Py_ssize_t> 1 << pos) - 1))


def apply_rx(cplx[:, ::1] states, double[::1] angles, int target, int n_qubits):
    cdef Py_ssize_t batch = states.shape[0]
    cdef Py_ssize_t half_dim = states.shape[1] >> 1
    cdef Py_ssize_t pos = n_qubits - 1 - target
    cdef Py_ssize_t mask = <Py_ssize_t> 1 << pos
    cdef Py_ssize_t b, i, k0
    cdef bint scalar = angles.shape[0] == 1
    cdef double c, s
    cdef cplx a0, a1
    for b in range(batch):
        c = cos(angles[0 if scalar else b] / 2.0)
        s = sin(angles[0 if scalar else b] / 2.0)
        for i in range(half_dim):
            k0 = _pair_base(i, pos)
            a0 = states[b, k0]
            a1 = states[b, k0 | mask]
            states[b, k0] = c * a0 - 1j * s * a1
            states[b, k0 | mask] = -1j * s * a0 + c * a1


def apply_ry(cplx[:, ::1] states, double[::1] angles, int target, int n_qubits):
    cdef Py_ssize_t batch = states.shape[0]
    cdef Py_ssize_t half_dim = states.shape[1] >> 1
    cdef Py_ssize_t pos = n_qubits - 1 - target
    cdef Py_ssize_t mask = <Py_ssize_t> 1 << pos
    cdef Py_ssize_t b, i, k0
    cdef bint scalar = angles.shape[0] == 1
    cdef double c, s
    cdef cplx a0, a1
    for b in range(batch):
        c = cos(angles[0 if scalar else b] / 2.0)
        s = sin(angles[0 if scalar else b] / 2.0)
        for i in range(half_dim):
            k0 = _pair_base(i, pos)
            a0 = states[b, k0]
            a1 = states[b, k0 | mask]
            states[b, k0] = c * a0 - s * a1
            states[b, k0 | mask] = s * a0 + c * a1


def apply_rz(cplx[:, ::1] states, double[::1] angles, int target, int n_qubits):
    cdef Py_ssize_t batch = states.shape[0]
    cdef Py_ssize_t half_dim = states.shape[1] >> 1
    cdef Py_ssize_t pos = n_qubits - 1 - target
    cdef Py_ssize_t mask = <Py_ssize_t> 1 << pos
    cdef Py_ssize_t b, i, k0
    cdef bint scalar = angles.shape[0] == 1
    cdef cplx phase
    for b in range(batch):
        phase = cos(angles[0 if scalar else b] / 2.0) - 1j * sin(angles[0 if scalar else b] / 2.0)
        for i in range(half_dim):
            k0 = _pair_base(i, pos)
            states[b, k0] = phase * states[b, k0]
            states[b, k0 | mask] = phase.conjugate() * states[b, k0 | mask]


def apply_matrix1q(cplx[:, ::1] states, cplx[:, ::1] mat, int target, int n_qubits):
    cdef Py_ssize_t batch = states.shape[0]
    cdef Py_ssize_t half_dim = states.shape[1] >> 1
    cdef Py_ssize_t pos = n_qubits - 1 - target
    cdef Py_ssize_t mask = <Py_ssize_t> 1 << pos
    cdef Py_ssize_t b, i, k0
    cdef cplx u00 = mat[0, 0], u01 = mat[0, 1], u10 = mat[1, 0], u11 = mat[1, 1]
    cdef cplx a0, a1
    for b in range(batch):
        for i in range(half_dim):
            k0 = _pair_base(i, pos)
            a0 = states[b, k0]
            a1 = states[b, k0 | mask]
            states[b, k0] = u00 * a0 + u01 * a1
            states[b, k0 | mask] = u10 * a0 + u11 * a1


def apply_cnot(cplx[:, ::1] states, int control, int target, int n_qubits):
    cdef Py_ssize_t batch = states.shape[0]
    cdef Py_ssize_t dim = states.shape[1]
    cdef Py_ssize_t cmask = <Py_ssize_t> 1 << (n_qubits - 1 - control)
    cdef Py_ssize_t tmask = <Py_ssize_t> 1 << (n_qubits - 1 - target)
    cdef Py_ssize_t b, k
    cdef cplx tmp
    for b in range(batch):
        for k in range(dim):
            # visit each control-on pair once via its target-0 member
            if (k & cmask) and not (k & tmask):
                tmp = states[b, k]
                states[b, k] = states[b, k | tmask]
                states[b, k | tmask] = tmp


def apply_cry(cplx[:, ::1] states, double[::1] angles, int control, int target, int n_qubits):
    cdef Py_ssize_t batch = states.shape[0]
    cdef Py_ssize_t dim = states.shape[1]
    cdef Py_ssize_t cmask = <Py_ssize_t> 1 << (n_qubits - 1 - control)
    cdef Py_ssize_t tmask = <Py_ssize_t> 1 << (n_qubits - 1 - target)
    cdef Py_ssize_t b, k
    cdef bint scalar = angles.shape[0] == 1
    cdef double c, s
    cdef cplx a0, a1
    for b in range(batch):
        c = cos(angles[0 if scalar else b] / 2.0)
        s = sin(angles[0 if scalar else b] / 2.0)
        for k in range(dim):
            if (k & cmask) and not (k & tmask):
                a0 = states[b, k]
                a1 = states[b, k | tmask]
                states[b, k] = c * a0 - s * a1
                states[b, k | tmask] = s * a0 + c * a1


def pauli_expectation(cplx[:, ::1] states, unsigned long long xlike,
                      unsigned long long zlike, int n_y):
    """Per-row <psi|P|psi>; masks as in the pure-python twin."""
    cdef Py_ssize_t batch = states.shape[0]
    cdef Py_ssize_t dim = states.shape[1]
    cdef cnp.ndarray[cplx, ndim=1] out = np.empty(batch, dtype=np.complex128)
    cdef cplx prefactor
    cdef int mod = n_y % 4
    if mod == 0:
        prefactor = 1.0
    elif mod == 1:
        prefactor = 1j
    elif mod == 2:
        prefactor = -1.0
    else:
        prefactor = -1j
    cdef Py_ssize_t b, k, flipped
    cdef unsigned long long v
    cdef cplx acc
    cdef double sign
    for b in range(batch):
        acc = 0
        for k in range(dim):
            v = (<unsigned long long> k) & zlike
            v ^= v >> 32
            v ^= v >> 16
            v ^= v >> 8
            v ^= v >> 4
            v ^= v >> 2
            v ^= v >> 1
            sign = 1.0 - 2.0 * <double> (v & 1)
            flipped = <Py_ssize_t> ((<unsigned long long> k) ^ xlike)
            acc = acc + states[b, flipped].conjugate() * sign * states[b, k]
        out[b] = acc * prefactor
    return out
