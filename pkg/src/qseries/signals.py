"""Signal and dataset generators plus CSV import/export.

Regression signals are sampled on a time grid t_k = k / sample_rate and
stored as angle inputs x_k = (2*pi*frequency*t_k) mod 2*pi, so one
fundamental period spans [0, 2*pi) and the signal's harmonics line up with
the model's integer frequency ladder. The default sample rate,
n_samples * frequency, places the whole grid inside exactly one period.

All generated targets lie in [-1, 1]. Jump discontinuities (square,
sawtooth) take the right-limit value when a sample lands exactly on them.
"""

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DataError

SIGNAL_KINDS = ("sine", "cosine", "log", "sawtooth", "square", "am")
DATASET_KINDS = ("regression", "binary", "multiclass")
CLASSIFICATION_SHAPES = ("circle", "square", "crown")

CIRCLE_RADIUS_SQ = 2.0 / np.pi  # disc of area 2: half of the [-1,1]^2 square
SQUARE_HALF_SIDE = np.sqrt(2.0) / 2.0  # axis-aligned square of area 2
CROWN_RADII = (0.4, 0.8)


@dataclass(frozen=True)
class SignalSpec:
    """One generated signal: kind, frequency (Hz), grid size and rate.

    ``sample_rate=None`` selects n_samples * frequency, i.e. one period.
    AM signals multiply two sines (carrier and modulator, Hz); their
    ``frequency`` is the fundamental used for the angle mapping and
    defaults to the modulator.
    """

    kind: str
    frequency: float | None = None
    n_samples: int = 100
    sample_rate: float | None = None
    am_carrier: float | None = None
    am_modulator: float | None = None

    def __post_init__(self):
        if self.kind not in SIGNAL_KINDS:
            raise ConfigError(f"kind must be one of {SIGNAL_KINDS}, got {self.kind!r}")
        if self.n_samples < 1:
            raise ConfigError("n_samples must be >= 1")
        if self.kind == "am":
            if self.am_carrier is None or self.am_modulator is None:
                raise ConfigError("am signals need am_carrier and am_modulator")
            if self.am_carrier <= 0 or self.am_modulator <= 0:
                raise ConfigError("am component frequencies must be positive")
        if self.frequency is None:
            fallback = self.am_modulator if self.kind == "am" else 1.0
            object.__setattr__(self, "frequency", float(fallback))
        if self.frequency <= 0:
            raise ConfigError("frequency must be positive")
        rate = self.effective_sample_rate
        limit = 2.0 * self.max_component_frequency
        if rate <= limit:
            raise ConfigError(
                f"sample rate {rate} Hz violates the Nyquist limit: "
                f"must exceed {limit} Hz for a {self.kind} signal at "
                f"{self.max_component_frequency} Hz"
            )

    @property
    def effective_sample_rate(self):
        if self.sample_rate is not None:
            return float(self.sample_rate)
        return float(self.n_samples * self.frequency)

    @property
    def max_component_frequency(self):
        """Highest frequency present: carrier + modulator for AM signals."""
        if self.kind == "am":
            return float(self.am_carrier + self.am_modulator)
        return float(self.frequency)


@dataclass(frozen=True)
class LabeledDataset:
    """Inputs (m, n_features) with regression targets or class labels."""

    inputs: np.ndarray = field(repr=False)
    targets: np.ndarray = field(repr=False)
    kind: str = "regression"
    n_classes: int | None = None

    def __post_init__(self):
        inputs = np.atleast_2d(np.asarray(self.inputs, dtype=float))
        targets = np.asarray(self.targets, dtype=float).reshape(-1)
        if inputs.shape[0] != targets.shape[0]:
            raise ValueError("inputs and targets must have the same length")
        if self.kind not in DATASET_KINDS:
            raise ValueError(f"kind must be one of {DATASET_KINDS}")
        n_classes = self.n_classes
        if self.kind == "binary":
            if n_classes is None:
                n_classes = 2
            if not np.isin(targets, (-1.0, 1.0)).all():
                raise ValueError("binary labels must be -1 or +1")
        if self.kind == "multiclass":
            if n_classes is None:
                raise ValueError("multiclass datasets must declare n_classes")
            if not ((targets >= 0) & (targets < n_classes) & (targets == targets.astype(int))).all():
                raise ValueError("multiclass labels must be integers in [0, n_classes)")
        inputs.flags.writeable = False
        targets.flags.writeable = False
        object.__setattr__(self, "inputs", inputs)
        object.__setattr__(self, "targets", targets)
        object.__setattr__(self, "n_classes", n_classes)

    def __len__(self):
        return self.inputs.shape[0]

    @property
    def n_features(self):
        return self.inputs.shape[1]

    def subset(self, indices):
        return LabeledDataset(
            inputs=self.inputs[indices],
            targets=self.targets[indices],
            kind=self.kind,
            n_classes=self.n_classes,
        )


def signal_function(spec):
    """The spec's target as a function of the angle x in [0, 2*pi).

    Used both by the sampler and for multivariate composition; ``log`` and
    ``am`` map the angle back to time over one fundamental period.
    """
    kind = spec.kind
    if kind == "sine":
        return np.sin
    if kind == "cosine":
        return np.cos
    if kind == "square":
        return lambda x: np.where(np.mod(x, 2.0 * np.pi) < np.pi, 1.0, -1.0)
    if kind == "sawtooth":
        return lambda x: np.mod(x, 2.0 * np.pi) / np.pi - 1.0
    if kind == "log":
        period = 1.0 / spec.frequency
        top = np.log1p(period)

        def log_wave(x):
            t = np.mod(x, 2.0 * np.pi) / (2.0 * np.pi * spec.frequency)
            return 2.0 * np.log1p(t) / top - 1.0

        return log_wave
    # am: product of carrier and modulator sines
    carrier_ratio = spec.am_carrier / spec.frequency
    modulator_ratio = spec.am_modulator / spec.frequency
    return lambda x: np.sin(carrier_ratio * x) * np.sin(modulator_ratio * x)


def generate_signal(spec):
    """Sample a signal onto its angle grid as a regression dataset."""
    rate = spec.effective_sample_rate
    t = np.arange(spec.n_samples) / rate
    x = np.mod(2.0 * np.pi * spec.frequency * t, 2.0 * np.pi)
    targets = np.asarray(signal_function(spec)(x), dtype=float)
    return LabeledDataset(inputs=x.reshape(-1, 1), targets=targets, kind="regression")


def generate_classification(kind, n, seed):
    """Labeled 2-D points, uniform on [-1, 1]^2, labels +-1 by region.

    circle: +1 inside the origin-centered disc of area 2 (balanced classes);
    square: +1 inside the axis-aligned square of area 2; crown: +1 between
    radii 0.4 and 0.8. Deterministic for a fixed seed.
    """
    if kind not in CLASSIFICATION_SHAPES:
        raise ConfigError(f"kind must be one of {CLASSIFICATION_SHAPES}, got {kind!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    points = rng.uniform(-1.0, 1.0, (n, 2))
    radius_sq = points[:, 0] ** 2 + points[:, 1] ** 2
    if kind == "circle":
        inside = radius_sq <= CIRCLE_RADIUS_SQ
    elif kind == "square":
        inside = (np.abs(points[:, 0]) <= SQUARE_HALF_SIDE) & (
            np.abs(points[:, 1]) <= SQUARE_HALF_SIDE
        )
    else:
        radius = np.sqrt(radius_sq)
        inside = (radius >= CROWN_RADII[0]) & (radius <= CROWN_RADII[1])
    labels = np.where(inside, 1.0, -1.0)
    return LabeledDataset(inputs=points, targets=labels, kind="binary", n_classes=2)


def compose_multivariate(specs, op):
    """Pointwise sum or product of univariate signals, one per variable."""
    if op not in ("sum", "product"):
        raise ValueError("op must be 'sum' or 'product'")
    if not 1 <= len(specs) <= 4:
        raise ConfigError("compose_multivariate supports 1 to 4 variables")
    components = [signal_function(spec) for spec in specs]

    def composed(*xs):
        if len(xs) != len(components):
            raise ValueError(f"expected {len(components)} variables, got {len(xs)}")
        values = [comp(x) for comp, x in zip(components, xs)]
        if op == "sum":
            return np.sum(values, axis=0)
        return np.prod(values, axis=0)

    return composed


# ---------------------------------------------------------------------------
# CSV interchange: header x1..xN,target; classification targets are integers
# ---------------------------------------------------------------------------


def save_dataset(dataset, path):
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow([f"x{i + 1}" for i in range(dataset.n_features)] + ["target"])
        integral = dataset.kind in ("binary", "multiclass")
        for row, target in zip(dataset.inputs, dataset.targets):
            cells = [repr(float(v)) for v in row]
            cells.append(str(int(target)) if integral else repr(float(target)))
            writer.writerow(cells)


def load_dataset(path, kind="regression", n_classes=None):
    """Read a dataset CSV; malformed rows raise DataError."""
    try:
        with open(path, newline="") as handle:
            reader = csv.reader(handle)
            rows = [row for row in reader if row]
    except OSError as exc:
        raise DataError(f"cannot read dataset file {path}: {exc}") from exc
    if not rows:
        raise DataError(f"dataset file {path} is empty")
    header = [cell.strip() for cell in rows[0]]
    if header[-1] != "target" or not all(
        name == f"x{i + 1}" for i, name in enumerate(header[:-1])
    ):
        raise DataError(
            f"dataset file {path} must start with header x1,...,xN,target"
        )
    n_features = len(header) - 1
    inputs, targets = [], []
    for line_no, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DataError(f"{path}:{line_no}: expected {len(header)} columns")
        try:
            inputs.append([float(cell) for cell in row[:-1]])
            targets.append(float(row[-1]))
        except ValueError as exc:
            raise DataError(f"{path}:{line_no}: {exc}") from exc
    try:
        return LabeledDataset(
            inputs=np.array(inputs),
            targets=np.array(targets),
            kind=kind,
            n_classes=n_classes,
        )
    except ValueError as exc:
        raise DataError(f"{path}: {exc}") from exc
