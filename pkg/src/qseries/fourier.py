"""Fourier-series structure of the model.

A layered model with Pauli-rotation encoding is a trigonometric polynomial:
its frequencies are differences of sums of encoding-generator eigenvalues,
and its coefficients follow from the trainable blocks. This module extracts
coefficients two independent ways -- uniform sampling + inverse DFT, and an
exact symbolic propagation of frequency content through the circuit -- and
provides spectrum enumeration and decay profiles.

Coefficient convention: f(x) = sum_w c_w exp(+i w x) with angular
frequencies w, so c_n = (1/M) sum_m f(x_m) exp(-i n x_m) on a uniform grid
of M = 2K+1 points. Real-valued f gives the Hermitian symmetry
c_{-w} = conj(c_w).
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .sim import rotation_matrix

FREQ_DECIMALS = 9  # frequency dedup/merge tolerance: 1e-9 absolute


def _round_freq(value):
    rounded = round(float(value), FREQ_DECIMALS)
    return 0.0 if rounded == 0 else rounded  # avoid -0.0 keys


@dataclass(frozen=True)
class FrequencySpectrum:
    """Sorted set of accessible angular frequencies, symmetric about 0."""

    frequencies: tuple

    def __post_init__(self):
        freqs = tuple(sorted(_round_freq(f) for f in self.frequencies))
        object.__setattr__(self, "frequencies", freqs)

    def __contains__(self, value):
        target = _round_freq(value)
        return any(abs(f - target) <= 10.0 ** -FREQ_DECIMALS for f in self.frequencies)

    def __len__(self):
        return len(self.frequencies)


def spectrum_from_eigenvalues(eigenvalue_lists, n_layers):
    """Frequencies reachable with the given encoding-generator spectra.

    ``eigenvalue_lists`` holds one list of eigenvalues per encoding gate in
    a single layer; the full circuit repeats those gates ``n_layers`` times.
    The spectrum is every pairwise difference of sums built by picking one
    eigenvalue per gate occurrence.
    """
    for values in eigenvalue_lists:
        if len(values) == 0:
            raise ValueError("each eigenvalue list must be non-empty")
    sums = np.zeros(1)
    for _ in range(n_layers):
        for values in eigenvalue_lists:
            sums = np.unique(
                np.round(np.add.outer(sums, np.asarray(values, float)).ravel(),
                         FREQ_DECIMALS)
            )
    diffs = np.unique(np.round(np.subtract.outer(sums, sums).ravel(), FREQ_DECIMALS))
    return FrequencySpectrum(frequencies=tuple(diffs))


@dataclass(frozen=True)
class FourierSeries:
    """Finite set of complex coefficients keyed by angular frequency.

    Keys are floats for univariate series, tuples of floats for
    multivariate ones. ``period`` records the sampling period used during
    extraction (2*pi by default).
    """

    coefficients: dict = field(repr=False)
    period: float = 2.0 * np.pi

    def __post_init__(self):
        cleaned = {}
        for key, value in self.coefficients.items():
            if isinstance(key, tuple):
                cleaned[tuple(_round_freq(k) for k in key)] = complex(value)
            else:
                cleaned[_round_freq(key)] = complex(value)
        object.__setattr__(self, "coefficients", cleaned)

    @property
    def frequencies(self):
        return sorted(self.coefficients)

    def coefficient(self, freq):
        if isinstance(freq, tuple):
            freq = tuple(_round_freq(f) for f in freq)
        else:
            freq = _round_freq(freq)
        return self.coefficients.get(freq, 0j)

    def hermitian_residue(self):
        """max |c_{-w} - conj(c_w)|; ~0 for series of real-valued functions."""
        worst = 0.0
        for key, value in self.coefficients.items():
            neg = tuple(-k for k in key) if isinstance(key, tuple) else -key
            worst = max(worst, abs(self.coefficient(neg) - np.conj(value)))
        return worst


def evaluate_series(series, x):
    """Synthesize sum_w c_w exp(i w . x) at one point (x scalar or vector)."""
    total = 0j
    for key, value in series.coefficients.items():
        phase = np.dot(key, x) if isinstance(key, tuple) else key * x
        total += value * np.exp(1j * phase)
    return total


def extract_coefficients(f, K):
    """First 2K+1 Fourier coefficients of a 2*pi-periodic scalar function.

    Samples f at x_m = 2*pi*m/(2K+1) and applies the inverse DFT directly;
    for a trigonometric polynomial of degree <= K this is exact, not an
    approximation (sampling theorem).
    """
    if K < 0:
        raise ValueError("K must be >= 0")
    m_total = 2 * K + 1
    grid = 2.0 * np.pi * np.arange(m_total) / m_total
    samples = np.array([float(f(x)) for x in grid])
    orders = np.arange(-K, K + 1)
    dft = np.exp(-1j * np.outer(orders, grid)) @ samples / m_total
    return FourierSeries(
        coefficients={float(n): c for n, c in zip(orders, dft)}
    )


def multivariate_extract(f, K, n_vars):
    """Tensor-grid extraction for a function of ``n_vars`` variables.

    Coefficients are keyed by tuples of integer harmonics in [-K, K] per
    axis. The sample budget n_vars * (2K+1)**n_vars is capped at 1e6.
    """
    if n_vars < 1:
        raise ValueError("n_vars must be >= 1")
    m_total = 2 * K + 1
    if n_vars * m_total**n_vars > 1e6:
        raise ConfigError(
            f"sample budget exceeded: {n_vars} * {m_total}**{n_vars} > 1e6"
        )
    grid = 2.0 * np.pi * np.arange(m_total) / m_total
    mesh = np.meshgrid(*([grid] * n_vars), indexing="ij")
    samples = np.empty([m_total] * n_vars, dtype=float)
    for idx in np.ndindex(*samples.shape):
        samples[idx] = float(f(*(axis[idx] for axis in mesh)))

    orders = np.arange(-K, K + 1)
    dft_matrix = np.exp(-1j * np.outer(orders, grid)) / m_total
    coeffs = samples.astype(complex)
    for axis in range(n_vars):
        coeffs = np.tensordot(dft_matrix, coeffs, axes=(1, axis))
        coeffs = np.moveaxis(coeffs, 0, axis)
    out = {}
    for idx in np.ndindex(*coeffs.shape):
        key = tuple(float(orders[i]) for i in idx)
        out[key] = coeffs[idx]
    return FourierSeries(coefficients=out)


# ---------------------------------------------------------------------------
# exact coefficients by propagating frequency content through the circuit
# ---------------------------------------------------------------------------

_RY_EIGENBASIS = np.array([[1.0, 1.0], [1j, -1j]], dtype=complex) / np.sqrt(2.0)
# columns are the Y eigenvectors: RY(a) = W diag(e^{-ia/2}, e^{ia/2}) W^dag


def analytic_model_series(config, params):
    """Exact Fourier coefficients of a model, without sampling it.

    Represents the statevector as a finite map {frequency vector -> complex
    amplitude vector}; constant blocks mix amplitude vectors, and each
    encoding rotation (diagonalized where needed) shifts the frequency keys
    by +-scale/2 on its feature axis. The output coefficients come from
    pairing the propagated terms through the observable. Agrees with DFT
    extraction to machine precision for integer spectra.

    Guarded to n_qubits <= 3 (dense observable matrices).
    """
    from .model import _program

    n = config.n_qubits
    if n > 3:
        raise ConfigError("analytic series supported for n_qubits <= 3")
    dim = 1 << n
    n_feat = config.n_features

    start = np.zeros(dim, dtype=complex)
    start[0] = 1.0
    terms = {(0.0,) * n_feat: start}

    def apply_matrix(matrix):
        for key in terms:
            terms[key] = matrix @ terms[key]

    def apply_diagonal_encoding(scale, qubit, axis):
        # phases diag over qubit: e^{-i scale x/2} on bit 0, e^{+i...} on bit 1
        # amplitude representation A(x) = sum_v terms[v] e^{-i v . x}
        nonlocal terms
        if scale == 0.0:
            return
        bit = 1 << (n - 1 - qubit)
        basis = np.arange(dim)
        mask0 = (basis & bit) == 0
        new_terms = {}
        for key, vec in terms.items():
            for is_zero_bit, sign in ((True, +1.0), (False, -1.0)):
                part = np.where(mask0 if is_zero_bit else ~mask0, vec, 0.0)
                if not part.any():
                    continue
                shifted = list(key)
                shifted[axis] = _round_freq(shifted[axis] + sign * scale / 2.0)
                shifted = tuple(shifted)
                if shifted in new_terms:
                    new_terms[shifted] = new_terms[shifted] + part
                else:
                    new_terms[shifted] = part
        terms = new_terms

    def embed_1q(matrix2, qubit):
        full = np.array([[1.0]], dtype=complex)
        for q in range(n):
            full = np.kron(full, matrix2 if q == qubit else np.eye(2))
        return full

    w_dag = _RY_EIGENBASIS.conj().T
    for kind, q, src in _program(n, config.n_layers, config.entangle):
        if kind == "cnot":
            perm = _cnot_matrix(q, q + 1, n)
            apply_matrix(perm)
        elif src[0] == "theta":
            apply_matrix(embed_1q(rotation_matrix("RY", params.thetas[src[1], src[2]]), q))
        else:
            _, layer, qubit, g = src
            scale = params.betas[layer, qubit, g]
            axis = qubit % n_feat
            if g == 0:  # RY encoding: rotate into the Y eigenbasis first
                apply_matrix(embed_1q(w_dag, qubit))
                apply_diagonal_encoding(scale, qubit, axis)
                apply_matrix(embed_1q(_RY_EIGENBASIS, qubit))
            else:  # RZ encoding is already diagonal
                apply_diagonal_encoding(scale, qubit, axis)

    obs = config.observable.matrix()
    keys = list(terms)
    coeffs = {}
    for key_ket in keys:
        obs_ket = obs @ terms[key_ket]  # reused against every bra
        for key_bra in keys:
            # <v_bra| O |v_ket> multiplies e^{+i bra.x} e^{-i ket.x}
            omega = tuple(
                _round_freq(b - k) for b, k in zip(key_bra, key_ket)
            )
            value = np.vdot(terms[key_bra], obs_ket)
            if omega in coeffs:
                coeffs[omega] = coeffs[omega] + value
            else:
                coeffs[omega] = value
    if n_feat == 1:
        coeffs = {key[0]: value for key, value in coeffs.items()}
    return FourierSeries(coefficients=coeffs)


def _cnot_matrix(control, target, n):
    dim = 1 << n
    cmask = 1 << (n - 1 - control)
    tmask = 1 << (n - 1 - target)
    mat = np.zeros((dim, dim), dtype=complex)
    for k in range(dim):
        mat[k ^ tmask if k & cmask else k, k] = 1.0
    return mat


def max_coefficient_difference(first, second):
    """Largest |c - c'| over the union of both frequency sets.

    Frequencies are aligned by the module-wide 1e-9 rounding; coefficients
    present on one side only are compared against zero.
    """
    keys = set(first.coefficients) | set(second.coefficients)
    if not keys:
        return 0.0
    return max(abs(first.coefficient(k) - second.coefficient(k)) for k in keys)


def decay_profile(series):
    """Magnitude envelope: sorted (|w|, max |c_w| at that magnitude) pairs."""
    envelope = {}
    for key, value in series.coefficients.items():
        mag = np.linalg.norm(key) if isinstance(key, tuple) else abs(key)
        mag = _round_freq(mag)
        envelope[mag] = max(envelope.get(mag, 0.0), abs(value))
    return sorted(envelope.items())
