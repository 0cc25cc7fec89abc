"""Pauli-sum Hamiltonians: exact evolution, Trotter products, error search.

Sign convention: time evolution is exp(-i H t) throughout. Dense matrices
only; the experiment scale is a handful of qubits, so eigendecomposition is
both the exact-evolution engine and the error oracle.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError, NumericError

MAX_DENSE_QUBITS = 6
MAX_TROTTER_STEPS = 1 << 20

_PAULI_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pauli_string_matrix(string):
    out = np.array([[1.0]], dtype=complex)
    for ch in string:
        out = np.kron(out, _PAULI_1Q[ch])
    return out


@dataclass(frozen=True)
class PauliTermSum:
    """Hamiltonian H = sum_j c_j P_j with real weights and Pauli strings."""

    n_qubits: int
    terms: tuple

    def __post_init__(self):
        cleaned = []
        for coeff, string in self.terms:
            string = str(string).upper()
            if len(string) != self.n_qubits or any(ch not in "IXYZ" for ch in string):
                raise ValueError(
                    f"Pauli string {string!r} invalid for {self.n_qubits} qubits"
                )
            cleaned.append((float(coeff), string))
        if not cleaned:
            raise ValueError("at least one term is required")
        object.__setattr__(self, "terms", tuple(cleaned))

    @property
    def n_terms(self):
        return len(self.terms)

    def matrix(self):
        dim = 1 << self.n_qubits
        out = np.zeros((dim, dim), dtype=complex)
        for coeff, string in self.terms:
            out += coeff * pauli_string_matrix(string)
        return out

    @classmethod
    def from_text(cls, text):
        """Parse 'coefficient pauli_string' lines ('#' starts a comment)."""
        terms = []
        n_qubits = None
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise DataError(f"line {line_no}: expected 'coefficient pauli_string'")
            try:
                coeff = float(parts[0])
            except ValueError as exc:
                raise DataError(f"line {line_no}: bad coefficient {parts[0]!r}") from exc
            string = parts[1].upper()
            if n_qubits is None:
                n_qubits = len(string)
            terms.append((coeff, string))
        if not terms:
            raise DataError("no Hamiltonian terms found")
        try:
            return cls(n_qubits=n_qubits, terms=tuple(terms))
        except ValueError as exc:
            raise DataError(str(exc)) from exc


def load_pauli_sum(path):
    try:
        with open(path) as handle:
            text = handle.read()
    except OSError as exc:
        raise DataError(f"cannot read Hamiltonian file {path}: {exc}") from exc
    return PauliTermSum.from_text(text)


@dataclass(frozen=True)
class EvolutionResult:
    """Dense evolution operator with its time and Trotter step count (0 = exact)."""

    unitary: np.ndarray = field(repr=False)
    t: float
    r: int

    def __post_init__(self):
        unitary = np.asarray(self.unitary, dtype=complex)
        unitary.flags.writeable = False
        object.__setattr__(self, "unitary", unitary)

    @property
    def dim(self):
        return self.unitary.shape[0]

    def unitarity_residue(self):
        return float(
            np.abs(self.unitary.conj().T @ self.unitary - np.eye(self.dim)).max()
        )


def _check_size(h):
    if h.n_qubits > MAX_DENSE_QUBITS:
        raise ConfigError(
            f"dense evolution supports up to {MAX_DENSE_QUBITS} qubits, "
            f"got {h.n_qubits}"
        )


def pauli_decompose_2x2(matrix):
    """Coefficients (a, b, d, g) with A = a*I + b*X + d*Y + g*Z.

    Components are half-traces against each Pauli; they are real exactly
    when A is Hermitian, and recombination is exact for any 2x2 A.
    """
    a = np.asarray(matrix, dtype=complex)
    if a.shape != (2, 2):
        raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
    return (
        complex(np.trace(a) / 2.0),
        complex(np.trace(_PAULI_1Q["X"] @ a) / 2.0),
        complex(np.trace(_PAULI_1Q["Y"] @ a) / 2.0),
        complex(np.trace(_PAULI_1Q["Z"] @ a) / 2.0),
    )


def exact_evolution(h, t):
    """exp(-i H t) by dense eigendecomposition."""
    _check_size(h)
    energies, vectors = np.linalg.eigh(h.matrix())
    unitary = (vectors * np.exp(-1j * energies * t)) @ vectors.conj().T
    return EvolutionResult(unitary=unitary, t=float(t), r=0)


def _term_exponential(coeff, string, tau):
    # exp(-i tau c P) = cos(c tau) I - i sin(c tau) P, since P^2 = I
    dim_matrix = pauli_string_matrix(string)
    angle = coeff * tau
    return np.cos(angle) * np.eye(dim_matrix.shape[0]) - 1j * np.sin(angle) * dim_matrix


def trotter2(h, t, r, symmetric=True):
    """Second-order product formula for exp(-i H t) with r steps.

    One step multiplies the term exponentials at t/(2r) forward and then in
    reverse order (the symmetric Strang splitting). ``symmetric=False``
    repeats the forward order twice instead, which collapses to a
    first-order formula and exists for comparison; the convergence-slope
    test is what distinguishes the two.
    """
    _check_size(h)
    if r < 1:
        raise ValueError("r must be >= 1")
    tau = t / (2.0 * r)
    exponentials = [_term_exponential(c, s, tau) for c, s in h.terms]
    dim = 1 << h.n_qubits
    forward = np.eye(dim, dtype=complex)
    for matrix in exponentials:
        forward = forward @ matrix
    if symmetric:
        second = np.eye(dim, dtype=complex)
        for matrix in reversed(exponentials):
            second = second @ matrix
    else:
        second = forward
    step = forward @ second
    return EvolutionResult(unitary=np.linalg.matrix_power(step, r), t=float(t), r=int(r))


def evolution_error(approx, exact):
    """Spectral-norm distance between two evolution operators."""
    if approx.dim != exact.dim:
        raise ValueError(f"dimension mismatch: {approx.dim} vs {exact.dim}")
    return float(np.linalg.norm(approx.unitary - exact.unitary, 2))


@dataclass(frozen=True)
class StepsResult:
    """Outcome of the epsilon search: minimal r, its error, and the
    r ~ m^(3/2) t^(3/2) / sqrt(eps) scaling estimate for comparison."""

    r: int
    error: float
    formula_estimate: int


def steps_for_epsilon(h, t, epsilon):
    """Smallest Trotter step count whose spectral error is within epsilon.

    Doubles r until the error contract holds, then bisects down to the
    smallest such r (the error is monotone over the searched range).
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    _check_size(h)
    exact = exact_evolution(h, t)
    cache = {}

    def error_at(r):
        if r not in cache:
            cache[r] = evolution_error(trotter2(h, t, r), exact)
        return cache[r]

    upper = 1
    while error_at(upper) > epsilon:
        upper *= 2
        if upper > MAX_TROTTER_STEPS:
            raise NumericError(
                f"no r <= {MAX_TROTTER_STEPS} reaches error {epsilon}"
            )
    lower = upper // 2  # error(lower) > epsilon whenever lower >= 1
    while upper - lower > 1 and lower >= 1:
        middle = (upper + lower) // 2
        if error_at(middle) <= epsilon:
            upper = middle
        else:
            lower = middle

    m_terms = h.n_terms
    estimate = int(np.ceil(m_terms**1.5 * abs(t) ** 1.5 / np.sqrt(epsilon)))
    return StepsResult(r=upper, error=error_at(upper), formula_estimate=max(estimate, 1))


@dataclass(frozen=True)
class EigenphaseSignal:
    """cos(E t) and sin(E t) traces for one Hamiltonian eigenvalue."""

    eigenvalue: float
    cos_values: np.ndarray = field(repr=False)
    sin_values: np.ndarray = field(repr=False)


def eigenphase_signals(h, t_grid):
    """Per-eigenvalue (cos(E t), sin(E t)) series over a time grid.

    These are the real and imaginary parts of the exact-evolution
    eigenphases; they serve as regression targets for the layered model.
    """
    _check_size(h)
    t_grid = np.asarray(t_grid, dtype=float)
    energies = np.linalg.eigvalsh(h.matrix())
    return [
        EigenphaseSignal(
            eigenvalue=float(energy),
            cos_values=np.cos(energy * t_grid),
            sin_values=np.sin(energy * t_grid),
        )
        for energy in energies
    ]
