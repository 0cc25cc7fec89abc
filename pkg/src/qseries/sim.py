"""Dense complex statevector simulation.

Conventions used everywhere in this package:

* Qubit 0 is the most significant bit of the basis index, i.e. the leftmost
  tensor factor: for two qubits the basis order is |00>, |01>, |10>, |11>.
* Rotations are half-angle with a minus sign, RP(phi) = exp(-i phi P / 2)
  for P in {X, Y, Z}, so each rotation generator has eigenvalues +-1/2.
* No shot sampling: expectation values and probabilities are exact.
"""

from dataclasses import dataclass, field

import numpy as np

from .backend import kernels
from .errors import ConfigError

MAX_QUBITS = 20

ROTATION_KINDS = ("RX", "RY", "RZ")
FIXED_KINDS = ("H", "X", "Y", "Z")
CONTROLLED_KINDS = ("CNOT", "CRY")
GATE_KINDS = ROTATION_KINDS + FIXED_KINDS + CONTROLLED_KINDS

_SQ2 = 1.0 / np.sqrt(2.0)
_FIXED_MATRICES = {
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
FIXED_MATRICES_KEYS = frozenset(FIXED_KINDS)


def rotation_matrix(kind, angle):
    """2x2 matrix of RX/RY/RZ at the given angle (exp(-i angle P/2))."""
    c, s = np.cos(angle / 2.0), np.sin(angle / 2.0)
    if kind == "RX":
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind == "RY":
        return np.array([[c, -s], [s, c]], dtype=complex)
    if kind == "RZ":
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]], dtype=complex)
    raise ValueError(f"not a rotation kind: {kind}")


@dataclass(frozen=True)
class Gate:
    """One circuit gate: kind, target qubit, optional control and angle."""

    kind: str
    target: int
    control: int | None = None
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        needs_angle = self.kind in ROTATION_KINDS or self.kind == "CRY"
        if needs_angle and self.angle is None:
            raise ValueError(f"{self.kind} requires an angle")
        if not needs_angle and self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")
        needs_control = self.kind in CONTROLLED_KINDS
        if needs_control and self.control is None:
            raise ValueError(f"{self.kind} requires a control qubit")
        if not needs_control and self.control is not None:
            raise ValueError(f"{self.kind} takes no control qubit")
        if self.control is not None and self.control == self.target:
            raise ValueError("control and target must differ")

    def matrix(self):
        """Local unitary: 2x2, or 4x4 (control qubit first) for CNOT/CRY."""
        if self.kind in ROTATION_KINDS:
            return rotation_matrix(self.kind, self.angle)
        if self.kind in FIXED_MATRICES_KEYS:
            return _FIXED_MATRICES[self.kind].copy()
        block = (
            np.array([[0, 1], [1, 0]], dtype=complex)
            if self.kind == "CNOT"
            else rotation_matrix("RY", self.angle)
        )
        full = np.eye(4, dtype=complex)
        full[2:, 2:] = block
        return full


@dataclass(frozen=True)
class StateVector:
    """Immutable amplitudes over the 2**n_qubits computational basis."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if amps.shape[0] != 1 << self.n_qubits:
            raise ValueError(
                f"expected {1 << self.n_qubits} amplitudes, got {amps.shape[0]}"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self):
        return self.amplitudes.shape[0]

    def norm(self):
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class Observable:
    """Hermitian operator as a weighted sum of Pauli strings.

    Each term is (weight, string) with one letter from IXYZ per qubit,
    letter i acting on qubit i. Real weights keep the operator Hermitian.
    """

    terms: tuple

    def __post_init__(self):
        norm_terms = []
        for weight, string in self.terms:
            string = str(string).upper()
            if not string or any(ch not in "IXYZ" for ch in string):
                raise ValueError(f"invalid Pauli string {string!r}")
            norm_terms.append((float(weight), string))
        lengths = {len(s) for _, s in norm_terms}
        if len(lengths) > 1:
            raise ValueError("all Pauli strings must have the same length")
        object.__setattr__(self, "terms", tuple(norm_terms))

    @property
    def n_qubits(self):
        return len(self.terms[0][1]) if self.terms else 0

    @classmethod
    def single_z(cls, qubit, n_qubits):
        """Weight-1 Z on one qubit, identity elsewhere."""
        letters = ["I"] * n_qubits
        letters[qubit] = "Z"
        return cls(terms=((1.0, "".join(letters)),))

    def matrix(self):
        """Dense matrix form (intended for small n only)."""
        dim = 1 << self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for weight, string in self.terms:
            term = np.array([[1.0]], dtype=complex)
            for ch in string:
                term = np.kron(term, _FIXED_MATRICES[ch] if ch != "I" else np.eye(2))
            out += weight * term
        return out


def string_masks(string):
    """(xlike, zlike, n_y) bit masks for a Pauli string, qubit 0 = MSB."""
    n = len(string)
    xlike = zlike = 0
    n_y = 0
    for q, ch in enumerate(string):
        bit = 1 << (n - 1 - q)
        if ch in ("X", "Y"):
            xlike |= bit
        if ch in ("Z", "Y"):
            zlike |= bit
        if ch == "Y":
            n_y += 1
    return xlike, zlike, n_y


def zero_state(n_qubits):
    """|0...0> on n_qubits qubits; n_qubits is capped at 20 (dense memory)."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ConfigError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def apply_gate(state, gate):
    """Apply one gate, returning a new StateVector."""
    n = state.n_qubits
    if not 0 <= gate.target < n:
        raise ValueError(f"target {gate.target} out of range for {n} qubits")
    if gate.control is not None and not 0 <= gate.control < n:
        raise ValueError(f"control {gate.control} out of range for {n} qubits")

    work = state.amplitudes[np.newaxis, :].copy()
    if gate.kind == "RX":
        kernels.apply_rx(work, np.array([gate.angle]), gate.target, n)
    elif gate.kind == "RY":
        kernels.apply_ry(work, np.array([gate.angle]), gate.target, n)
    elif gate.kind == "RZ":
        kernels.apply_rz(work, np.array([gate.angle]), gate.target, n)
    elif gate.kind in FIXED_MATRICES_KEYS:
        kernels.apply_matrix1q(work, _FIXED_MATRICES[gate.kind], gate.target, n)
    elif gate.kind == "CNOT":
        kernels.apply_cnot(work, gate.control, gate.target, n)
    else:  # CRY
        kernels.apply_cry(work, np.array([gate.angle]), gate.control, gate.target, n)
    return StateVector(n, work[0])


def expectation(state, obs):
    """<state|O|state> for a Pauli-sum observable; always real."""
    if obs.n_qubits != state.n_qubits:
        raise ValueError(
            f"observable acts on {obs.n_qubits} qubits, state has {state.n_qubits}"
        )
    total = 0j
    row = state.amplitudes[np.newaxis, :].copy()  # kernels need a writable buffer
    for weight, string in obs.terms:
        xlike, zlike, n_y = string_masks(string)
        total += weight * kernels.pauli_expectation(row, xlike, zlike, n_y)[0]
    return float(total.real)


def probabilities(state):
    """Measurement probabilities |amplitude|**2 over the basis."""
    return np.abs(state.amplitudes) ** 2


def amplitude_embed(data):
    """Normalize a complex vector of length 2**n (n >= 1) into a StateVector."""
    data = np.asarray(data, dtype=complex).reshape(-1)
    n_qubits = max(int(np.log2(data.shape[0])), 1) if data.shape[0] > 1 else 0
    if data.shape[0] < 2 or 1 << n_qubits != data.shape[0]:
        raise ValueError(f"length {data.shape[0]} is not a power of two >= 2")
    norm = np.linalg.norm(data)
    if norm == 0:
        raise ValueError("cannot embed the zero vector")
    return StateVector(n_qubits, data / norm)
