"""qseries: layered data-reuploading quantum models on a dense statevector
simulator, with exact Fourier-series analysis, parameter-shift training,
signal/dataset generators, and Trotter-Suzuki Hamiltonian evolution.

Hot statevector kernels run through a compiled Cython extension when built;
a pure-numpy twin is selected automatically otherwise (see
:func:`backend_name`).
"""

from .backend import backend_name
from .errors import ConfigError, DataError, NumericError, QSeriesError
from .fourier import (
    FourierSeries,
    FrequencySpectrum,
    analytic_model_series,
    decay_profile,
    evaluate_series,
    extract_coefficients,
    max_coefficient_difference,
    multivariate_extract,
    spectrum_from_eigenvalues,
)
from .hamiltonian import (
    EigenphaseSignal,
    EvolutionResult,
    PauliTermSum,
    StepsResult,
    eigenphase_signals,
    evolution_error,
    exact_evolution,
    load_pauli_sum,
    pauli_decompose_2x2,
    steps_for_epsilon,
    trotter2,
)
from .model import (
    ModelConfig,
    ParameterSet,
    evaluate,
    evaluate_batch,
    feature_map_layer,
    model_state,
    predict_binary,
    predict_multiclass,
    probabilities_batch,
    variational_layer,
)
from .signals import (
    LabeledDataset,
    SignalSpec,
    compose_multivariate,
    generate_classification,
    generate_signal,
    load_dataset,
    save_dataset,
    signal_function,
)
from .sim import (
    Gate,
    Observable,
    StateVector,
    amplitude_embed,
    apply_gate,
    expectation,
    probabilities,
    rotation_matrix,
    zero_state,
)
from .training import (
    TrainConfig,
    TrainReport,
    classification_accuracy,
    finite_difference_gradient,
    fit,
    parameter_shift_gradient,
    rmse_loss,
)

__version__ = "0.1.0"

__all__ = [
    "ConfigError", "DataError", "NumericError", "QSeriesError",
    "backend_name", "__version__",
    # sim
    "Gate", "Observable", "StateVector", "amplitude_embed", "apply_gate",
    "expectation", "probabilities", "rotation_matrix", "zero_state",
    # model
    "ModelConfig", "ParameterSet", "evaluate", "evaluate_batch",
    "feature_map_layer", "model_state", "predict_binary", "predict_multiclass",
    "probabilities_batch", "variational_layer",
    # fourier
    "FourierSeries", "FrequencySpectrum", "analytic_model_series",
    "decay_profile", "evaluate_series", "extract_coefficients",
    "max_coefficient_difference", "multivariate_extract",
    "spectrum_from_eigenvalues",
    # training
    "TrainConfig", "TrainReport", "classification_accuracy",
    "finite_difference_gradient", "fit", "parameter_shift_gradient",
    "rmse_loss",
    # signals
    "LabeledDataset", "SignalSpec", "compose_multivariate",
    "generate_classification", "generate_signal", "load_dataset",
    "save_dataset", "signal_function",
    # hamiltonian
    "EigenphaseSignal", "EvolutionResult", "PauliTermSum", "StepsResult",
    "eigenphase_signals", "evolution_error", "exact_evolution",
    "load_pauli_sum", "pauli_decompose_2x2", "steps_for_epsilon", "trotter2",
]
