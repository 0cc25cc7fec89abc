"""Layered data-reuploading model.

Circuit layout for L layers on n qubits, reading left to right in time:

    V(theta_1) F(x, beta_1) V(theta_2) F(x, beta_2) ... V(theta_L) F(x, beta_L) V(theta_L)

* ``V`` is the variational block: one RY(theta) per qubit, followed by a
  linear CNOT chain (control i -> target i+1) when entangling is enabled.
* ``F`` is the feature map: RY(beta1 * x_i) then RZ(beta2 * x_i) on each
  qubit i, where x_i is feature i mod n_features (features cycle when
  there are fewer features than qubits).
* A trailing variational block closes the circuit so the one-layer case is
  the V-F-V sandwich; it reuses the last theta row, keeping the trainable
  count at exactly 3 * n_qubits * n_layers (theta + two encoding scales
  per qubit per layer).

With one active encoding rotation per layer (the default initialization),
each layer adds one unit to the model's frequency band: an L-layer model is
a trigonometric polynomial of degree at most L in each feature.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .backend import kernels
from .errors import ConfigError
from .sim import Gate, Observable, apply_gate, expectation, probabilities

READOUTS = ("expectation", "probabilities")


@dataclass(frozen=True)
class ModelConfig:
    """Architecture of one model; fully determines f(x) together with parameters."""

    n_qubits: int
    n_layers: int
    n_features: int = 1
    observable: Observable | None = None
    entangle: bool = True
    readout: str = "expectation"

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ConfigError("n_qubits must be >= 1")
        if self.n_layers < 1:
            raise ConfigError("n_layers must be >= 1")
        if not 1 <= self.n_features <= self.n_qubits:
            raise ConfigError(
                f"n_features must be in [1, n_qubits={self.n_qubits}], "
                f"got {self.n_features}"
            )
        if self.readout not in READOUTS:
            raise ConfigError(f"readout must be one of {READOUTS}")
        if self.observable is None:
            object.__setattr__(
                self, "observable", Observable.single_z(0, self.n_qubits)
            )
        elif self.observable.n_qubits != self.n_qubits:
            raise ConfigError("observable length must equal n_qubits")

    @property
    def n_parameters(self):
        """Trainable count: theta + two encoding scales per qubit per layer."""
        return 3 * self.n_qubits * self.n_layers


@dataclass(frozen=True)
class ParameterSet:
    """Trainable parameters: thetas (L, n) and betas (L, n, 2).

    betas[l, q, 0] scales the RY encoding gate, betas[l, q, 1] the RZ one;
    the encoding gate for feature x applies the angle beta * x.
    """

    thetas: np.ndarray = field(repr=False)
    betas: np.ndarray = field(repr=False)

    def __post_init__(self):
        thetas = np.array(self.thetas, dtype=float)
        betas = np.array(self.betas, dtype=float)
        if thetas.ndim != 2:
            raise ValueError("thetas must have shape (n_layers, n_qubits)")
        if betas.shape != thetas.shape + (2,):
            raise ValueError("betas must have shape (n_layers, n_qubits, 2)")
        if not (np.isfinite(thetas).all() and np.isfinite(betas).all()):
            raise ValueError("parameters must be finite")
        thetas.flags.writeable = False
        betas.flags.writeable = False
        object.__setattr__(self, "thetas", thetas)
        object.__setattr__(self, "betas", betas)

    @property
    def n_layers(self):
        return self.thetas.shape[0]

    @property
    def n_qubits(self):
        return self.thetas.shape[1]

    @property
    def count(self):
        return self.thetas.size + self.betas.size

    @classmethod
    def initial(cls, config, seed=0):
        """Seeded starting point: thetas uniform in [-pi, pi); one encoding
        rotation active per layer, alternating RY (even layers) and RZ (odd).

        Alternating the data-carrying axis keeps exactly one encoding
        rotation per layer (one new frequency per layer) while the two axes
        prevent the circuit from collapsing into commuting Y-rotations; an
        all-RY single-qubit circuit is a single harmonic no matter how deep,
        and the RZ scale gradient vanishes identically on that manifold, so
        training could never leave it.
        """
        rng = np.random.default_rng(seed)
        thetas = rng.uniform(-np.pi, np.pi, (config.n_layers, config.n_qubits))
        betas = np.zeros((config.n_layers, config.n_qubits, 2))
        for layer in range(config.n_layers):
            betas[layer, :, layer % 2] = 1.0
        return cls(thetas=thetas, betas=betas)

    def replace(self, thetas=None, betas=None):
        return ParameterSet(
            thetas=self.thetas if thetas is None else thetas,
            betas=self.betas if betas is None else betas,
        )


# ---------------------------------------------------------------------------
# public single-state layer operations
# ---------------------------------------------------------------------------


def feature_map_layer(state, x, betas):
    """One encoding block: RY(beta1*x_i) then RZ(beta2*x_i) on each qubit i.

    ``x`` holds the feature values; features cycle over qubits when there
    are fewer features than qubits. ``betas`` has shape (n_qubits, 2).
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    betas = np.asarray(betas, dtype=float)
    n = state.n_qubits
    if x.shape[0] > n:
        raise ConfigError(f"{x.shape[0]} features exceed {n} qubits")
    for q in range(n):
        xi = x[q % x.shape[0]]
        state = apply_gate(state, Gate("RY", target=q, angle=betas[q, 0] * xi))
        state = apply_gate(state, Gate("RZ", target=q, angle=betas[q, 1] * xi))
    return state


def variational_layer(state, thetas, entangle):
    """One trainable block: RY(theta_i) per qubit, then a CNOT chain."""
    thetas = np.atleast_1d(np.asarray(thetas, dtype=float))
    n = state.n_qubits
    if thetas.shape[0] != n:
        raise ValueError(f"expected {n} angles, got {thetas.shape[0]}")
    for q in range(n):
        state = apply_gate(state, Gate("RY", target=q, angle=thetas[q]))
    if entangle and n > 1:
        for q in range(n - 1):
            state = apply_gate(state, Gate("CNOT", target=q + 1, control=q))
    return state


# ---------------------------------------------------------------------------
# compiled circuit program + batched evaluation (hot path)
# ---------------------------------------------------------------------------

# program entries: ("ry"|"rz", qubit, source) or ("cnot", control, None);
# source is ("theta", layer, qubit) or ("beta", layer, qubit, gate_index)


@lru_cache(maxsize=None)
def _program(n_qubits, n_layers, entangle):
    prog = []

    def variational(layer):
        for q in range(n_qubits):
            prog.append(("ry", q, ("theta", layer, q)))
        if entangle and n_qubits > 1:
            for q in range(n_qubits - 1):
                prog.append(("cnot", q, None))

    for layer in range(n_layers):
        variational(layer)
        for q in range(n_qubits):
            prog.append(("ry", q, ("beta", layer, q, 0)))
            prog.append(("rz", q, ("beta", layer, q, 1)))
    variational(n_layers - 1)  # trailing block, tied to the last theta row
    return tuple(prog)


def parameter_sources(config):
    """Sources of the angle-carrying gates, in program order.

    A tied parameter (the last theta row) appears once per occurrence;
    gradient code shifts occurrences independently and sums.
    """
    return tuple(
        src
        for _, _, src in _program(config.n_qubits, config.n_layers, config.entangle)
        if src is not None
    )


def _forward(config, params, inputs, shift=None):
    """Run the circuit on a batch; returns states of shape (m, 2**n).

    ``inputs`` has shape (m, n_features). ``shift`` is (occurrence, delta):
    that occurrence's gate angle is offset by delta (parameter-shift hook).
    """
    inputs = np.ascontiguousarray(inputs, dtype=float)
    m = inputs.shape[0]
    n = config.n_qubits
    states = np.zeros((m, 1 << n), dtype=complex)
    states[:, 0] = 1.0
    occurrence = 0
    for kind, q, src in _program(n, config.n_layers, config.entangle):
        if kind == "cnot":
            kernels.apply_cnot(states, q, q + 1, n)
            continue
        if src[0] == "theta":
            angles = np.array([params.thetas[src[1], src[2]]])
        else:
            _, layer, qubit, g = src
            angles = params.betas[layer, qubit, g] * inputs[:, qubit % config.n_features]
            angles = np.ascontiguousarray(angles)
        if shift is not None and occurrence == shift[0]:
            angles = angles + shift[1]
        occurrence += 1
        if kind == "ry":
            kernels.apply_ry(states, angles, q, n)
        else:
            kernels.apply_rz(states, angles, q, n)
    return states


def _batch_expectation(config, states):
    from .sim import string_masks

    total = np.zeros(states.shape[0], dtype=complex)
    for weight, string in config.observable.terms:
        xlike, zlike, n_y = string_masks(string)
        total += weight * kernels.pauli_expectation(states, xlike, zlike, n_y)
    return total.real


def evaluate_batch(config, params, inputs, shift=None):
    """Expectation-readout outputs for a batch of inputs, shape (m,)."""
    return _batch_expectation(config, _forward(config, params, inputs, shift))


def probabilities_batch(config, params, inputs, shift=None):
    """Basis-state probabilities for a batch, shape (m, 2**n_qubits)."""
    return np.abs(_forward(config, params, inputs, shift)) ** 2


def _as_input_row(config, x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[0] != config.n_features:
        raise ValueError(
            f"expected {config.n_features} feature(s), got {x.shape[0]}"
        )
    return x.reshape(1, -1)


def evaluate(config, params, x):
    """f(x) = <0| U^dag(x) O U(x) |0> for a single input point."""
    return float(evaluate_batch(config, params, _as_input_row(config, x))[0])


def model_state(config, params, x):
    """Final StateVector for one input (verification and probability readout)."""
    from .sim import StateVector

    states = _forward(config, params, _as_input_row(config, x))
    return StateVector(config.n_qubits, states[0])


def predict_binary(config, params, x):
    """Sign readout: +1 when f(x) >= 0, else -1 (exact zero maps to +1)."""
    if config.readout != "expectation":
        raise ConfigError("binary prediction requires expectation readout")
    return 1 if evaluate(config, params, x) >= 0.0 else -1


def argmax_class(probs, n_classes):
    """Class readout: argmax over the first n_classes probabilities.

    Probability mass on the remaining basis states is ignored; exact ties
    break toward the lowest class index.
    """
    return int(np.argmax(probs[:n_classes]))


def predict_multiclass(config, params, x, n_classes):
    """Run the circuit and read the class via :func:`argmax_class`."""
    if config.readout != "probabilities":
        raise ConfigError("multiclass prediction requires probabilities readout")
    if n_classes > 1 << config.n_qubits:
        raise ConfigError(
            f"{n_classes} classes exceed {1 << config.n_qubits} basis states"
        )
    probs = probabilities_batch(config, params, _as_input_row(config, x))[0]
    return argmax_class(probs, n_classes)


def evaluate_reference(config, params, x):
    """Gate-by-gate evaluation through the public single-state operations.

    Slow path used to cross-check the batched kernels; composes
    variational_layer and feature_map_layer exactly as documented.
    """
    from .sim import zero_state

    x = np.atleast_1d(np.asarray(x, dtype=float))
    features = np.array([x[q % config.n_features] for q in range(config.n_qubits)])
    state = zero_state(config.n_qubits)
    for layer in range(config.n_layers):
        state = variational_layer(state, params.thetas[layer], config.entangle)
        state = feature_map_layer(state, features, params.betas[layer])
    state = variational_layer(state, params.thetas[-1], config.entangle)
    if config.readout == "probabilities":
        return probabilities(state)
    return expectation(state, config.observable)
