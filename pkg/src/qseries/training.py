"""Loss, gradients and the fitting loop.

The loss everywhere is the root-mean-square error

    loss = sqrt( mean (model(x_i) - target_i)**2 )

applied to scalar expectation outputs (regression, binary classification
against +-1 targets) or to basis-state probability vectors against one-hot
targets (multiclass). Gradients come from the parameter-shift rule, exact
for the RY/RZ half-angle rotations carrying every trainable parameter, with
a central finite-difference twin as the independent oracle.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, NumericError
from .model import (
    ParameterSet,
    evaluate_batch,
    parameter_sources,
    predict_binary,
    predict_multiclass,
    probabilities_batch,
)

OPTIMIZERS = ("gradient-descent", "adaptive-moment")
GRADIENT_METHODS = ("parameter-shift", "finite-difference")

PLATEAU_WINDOW = 20  # epochs
PLATEAU_RTOL = 1e-6  # relative improvement below this over the window stops


@dataclass(frozen=True)
class TrainConfig:
    """Optimization settings; defaults follow the package-wide experiments."""

    max_epochs: int = 500
    learning_rate: float = 0.05
    optimizer: str = "adaptive-moment"
    seed: int = 0
    gradient_method: str = "parameter-shift"
    batch: int | str = "full"
    freeze_betas: bool = False

    def __post_init__(self):
        if self.max_epochs < 1:
            raise ConfigError("max_epochs must be >= 1")
        if self.learning_rate <= 0:
            raise ConfigError("learning_rate must be positive")
        if self.optimizer not in OPTIMIZERS:
            raise ConfigError(f"optimizer must be one of {OPTIMIZERS}")
        if self.gradient_method not in GRADIENT_METHODS:
            raise ConfigError(f"gradient_method must be one of {GRADIENT_METHODS}")
        if self.batch != "full" and (not isinstance(self.batch, int) or self.batch < 1):
            raise ConfigError("batch must be 'full' or a positive size")


@dataclass(frozen=True)
class TrainReport:
    """Outcome of one fit: per-epoch loss history and the final parameters.

    ``target_scale``/``target_offset`` record the affine map applied to
    regression targets that fell outside [-1, 1] (the single-Z output
    range); predictions invert it as raw = scale * model + offset.
    """

    loss_history: tuple
    final_params: ParameterSet
    epochs_run: int
    target_scale: float = 1.0
    target_offset: float = 0.0

    def __post_init__(self):
        history = tuple(float(v) for v in self.loss_history)
        if not history:
            raise ValueError("loss_history must be non-empty")
        if any(not math.isfinite(v) or v < 0 for v in history):
            raise ValueError("loss_history entries must be finite and >= 0")
        object.__setattr__(self, "loss_history", history)

    def predict(self, config, inputs):
        """Expectation outputs mapped back to the raw target range."""
        raw = evaluate_batch(config, self.final_params, np.atleast_2d(inputs))
        return self.target_scale * raw + self.target_offset


# ---------------------------------------------------------------------------
# loss and gradients
# ---------------------------------------------------------------------------


def _outputs_and_targets(config, params, dataset, shift=None):
    """Model outputs and matching target matrix, both shaped (m, d)."""
    inputs = np.atleast_2d(dataset.inputs)
    if dataset.kind == "multiclass":
        if config.readout != "probabilities":
            raise ConfigError("multiclass training requires probabilities readout")
        n_classes = dataset.n_classes
        outputs = probabilities_batch(config, params, inputs, shift)[:, :n_classes]
        targets = np.zeros((len(dataset), n_classes))
        targets[np.arange(len(dataset)), dataset.targets.astype(int)] = 1.0
    else:
        outputs = evaluate_batch(config, params, inputs, shift)[:, np.newaxis]
        targets = np.asarray(dataset.targets, dtype=float)[:, np.newaxis]
    return outputs, targets


def rmse_loss(config, params, dataset):
    """Root-mean-square error of the model over a labeled dataset."""
    if len(dataset) == 0:
        raise ValueError("dataset must be non-empty")
    outputs, targets = _outputs_and_targets(config, params, dataset)
    return float(np.sqrt(np.mean((outputs - targets) ** 2)))


def parameter_shift_gradient(config, params, dataset):
    """Exact loss gradient via shifted-angle circuit evaluations.

    Each occurrence of a parameter-carrying gate is shifted by +-pi/2 and
    the per-occurrence derivatives are summed (the last theta row appears
    in two blocks); encoding-scale derivatives pick up the chain factor x
    since the gate angle is beta * x. Returns a ParameterSet-shaped pair.
    """
    return _shift_gradient(config, params, dataset, skip_betas=False)


def _shift_gradient(config, params, dataset, skip_betas):
    if len(dataset) == 0:
        raise ValueError("dataset must be non-empty")
    outputs, targets = _outputs_and_targets(config, params, dataset)
    residuals = outputs - targets
    loss = float(np.sqrt(np.mean(residuals**2)))
    grad_thetas = np.zeros_like(params.thetas)
    grad_betas = np.zeros_like(params.betas)
    if loss == 0.0:
        return ParameterSet(grad_thetas, grad_betas)

    inputs = np.atleast_2d(dataset.inputs)
    scale = 1.0 / (loss * residuals.size)
    for occurrence, src in enumerate(parameter_sources(config)):
        if skip_betas and src[0] == "beta":
            continue
        plus, _ = _outputs_and_targets(config, params, dataset, (occurrence, +np.pi / 2))
        minus, _ = _outputs_and_targets(config, params, dataset, (occurrence, -np.pi / 2))
        d_angle = (plus - minus) / 2.0
        if src[0] == "theta":
            _, layer, qubit = src
            grad_thetas[layer, qubit] += scale * float(np.sum(residuals * d_angle))
        else:
            _, layer, qubit, gate = src
            chain = inputs[:, qubit % config.n_features][:, np.newaxis]
            grad_betas[layer, qubit, gate] += scale * float(
                np.sum(residuals * d_angle * chain)
            )
    return ParameterSet(grad_thetas, grad_betas)


def finite_difference_gradient(config, params, dataset, h=1e-5):
    """Central-difference gradient of rmse_loss; oracle for the shift rule.

    An exactly-zero loss short-circuits to the zero vector, matching the
    shift rule: the RMSE cone has no two-sided derivative at a perfect fit
    and zero is its subgradient at the global minimum.
    """
    if h <= 0:
        raise ValueError("h must be positive")
    grad_thetas = np.zeros_like(params.thetas)
    grad_betas = np.zeros_like(params.betas)
    if rmse_loss(config, params, dataset) == 0.0:
        return ParameterSet(grad_thetas, grad_betas)

    def loss_at(thetas, betas):
        return rmse_loss(config, ParameterSet(thetas, betas), dataset)

    for idx in np.ndindex(*params.thetas.shape):
        plus = params.thetas.copy()
        minus = params.thetas.copy()
        plus[idx] += h
        minus[idx] -= h
        grad_thetas[idx] = (loss_at(plus, params.betas) - loss_at(minus, params.betas)) / (2 * h)
    for idx in np.ndindex(*params.betas.shape):
        plus = params.betas.copy()
        minus = params.betas.copy()
        plus[idx] += h
        minus[idx] -= h
        grad_betas[idx] = (loss_at(params.thetas, plus) - loss_at(params.thetas, minus)) / (2 * h)
    return ParameterSet(grad_thetas, grad_betas)


# ---------------------------------------------------------------------------
# fitting loop
# ---------------------------------------------------------------------------


def _normalize_regression_targets(dataset):
    """Affine map onto [-1, 1] when targets exceed the model output range."""
    from .signals import LabeledDataset

    targets = np.asarray(dataset.targets, dtype=float)
    if dataset.kind != "regression" or (targets.min() >= -1.0 and targets.max() <= 1.0):
        return dataset, 1.0, 0.0
    low, high = float(targets.min()), float(targets.max())
    scale = (high - low) / 2.0 or 1.0
    offset = (high + low) / 2.0
    mapped = LabeledDataset(
        inputs=dataset.inputs,
        targets=(targets - offset) / scale,
        kind="regression",
    )
    return mapped, scale, offset


def fit(config, init_params, dataset, train_config):
    """Gradient-descent/Adam loop over the full dataset or minibatches.

    Stops at ``max_epochs``, on an exact zero loss, or at a plateau: the
    best loss inside the trailing 20-epoch window improves on the best
    before it by less than 1e-6 relative. Stepping uses the squared-loss
    gradient (2 * loss * grad) so step sizes shrink smoothly near an exact
    fit instead of oscillating on the RMSE cone; recorded history is the
    plain RMSE on the full dataset after each epoch, and ``final_params``
    are the best-loss parameters seen (the adaptive optimizer may orbit a
    minimum, so the last epoch is not necessarily the best one). Raises
    NumericError if the loss turns NaN. Deterministic for a fixed
    TrainConfig.seed.
    """
    if len(dataset) == 0:
        raise ValueError("dataset must be non-empty")
    dataset, target_scale, target_offset = _normalize_regression_targets(dataset)

    if train_config.gradient_method == "parameter-shift":
        def gradient(cfg, prm, data):
            return _shift_gradient(cfg, prm, data, skip_betas=train_config.freeze_betas)
    else:
        gradient = finite_difference_gradient

    rng = np.random.default_rng(train_config.seed)
    params = init_params
    history = [rmse_loss(config, params, dataset)]
    if not math.isfinite(history[0]):
        raise NumericError(f"training aborted: initial loss is {history[0]}")

    adam_m = [np.zeros_like(params.thetas), np.zeros_like(params.betas)]
    adam_v = [np.zeros_like(params.thetas), np.zeros_like(params.betas)]
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    steps = 0
    epochs_run = 0
    best_loss = history[0]
    best_params = params

    for epoch in range(train_config.max_epochs):
        for batch in _batches(dataset, train_config, rng):
            batch_loss = rmse_loss(config, params, batch)
            grad = gradient(config, params, batch)
            # squared-loss gradient; same direction, smooth near zero loss
            pieces = [2.0 * batch_loss * grad.thetas, 2.0 * batch_loss * grad.betas]
            if train_config.freeze_betas:
                pieces[1] = np.zeros_like(pieces[1])
            updated = [params.thetas.copy(), params.betas.copy()]
            steps += 1
            for i, g in enumerate(pieces):
                if train_config.optimizer == "adaptive-moment":
                    adam_m[i] = beta1 * adam_m[i] + (1 - beta1) * g
                    adam_v[i] = beta2 * adam_v[i] + (1 - beta2) * g**2
                    m_hat = adam_m[i] / (1 - beta1**steps)
                    v_hat = adam_v[i] / (1 - beta2**steps)
                    updated[i] -= train_config.learning_rate * m_hat / (np.sqrt(v_hat) + eps)
                else:
                    updated[i] -= train_config.learning_rate * g
            params = ParameterSet(thetas=updated[0], betas=updated[1])

        epoch_loss = rmse_loss(config, params, dataset)
        if not math.isfinite(epoch_loss):
            raise NumericError(
                f"training diverged: loss became {epoch_loss} at epoch {epoch + 1}"
            )
        history.append(epoch_loss)
        epochs_run = epoch + 1
        if epoch_loss < best_loss:
            best_loss = epoch_loss
            best_params = params
        if epoch_loss == 0.0:
            break
        if len(history) > PLATEAU_WINDOW:
            best_before = min(history[: len(history) - PLATEAU_WINDOW])
            recent_best = min(history[-PLATEAU_WINDOW:])
            if best_before - recent_best < PLATEAU_RTOL * max(best_before, 1e-30):
                break

    return TrainReport(
        loss_history=tuple(history),
        final_params=best_params,
        epochs_run=epochs_run,
        target_scale=target_scale,
        target_offset=target_offset,
    )


def _batches(dataset, train_config, rng):
    from .signals import LabeledDataset

    if train_config.batch == "full" or train_config.batch >= len(dataset):
        yield dataset
        return
    order = rng.permutation(len(dataset))
    size = train_config.batch
    for start in range(0, len(dataset), size):
        pick = order[start:start + size]
        yield LabeledDataset(
            inputs=dataset.inputs[pick],
            targets=dataset.targets[pick],
            kind=dataset.kind,
            n_classes=dataset.n_classes,
        )


def classification_accuracy(config, params, dataset, mode):
    """Fraction of correct predictions on a labeled classification dataset."""
    if mode not in ("binary", "multiclass"):
        raise ValueError("mode must be 'binary' or 'multiclass'")
    inputs = np.atleast_2d(dataset.inputs)
    labels = np.asarray(dataset.targets)
    correct = 0
    for row, label in zip(inputs, labels):
        if mode == "binary":
            correct += int(predict_binary(config, params, row) == int(label))
        else:
            correct += int(
                predict_multiclass(config, params, row, dataset.n_classes)
                == int(label)
            )
    return correct / len(dataset)
