"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines and timings. Numeric tolerances are part of the criteria; optimizer
settings (rates, epoch budgets, seeds) are the experiment configuration
pinned here for reproducibility.
"""

import time

import numpy as np
import pytest

from qseries import (
    LabeledDataset,
    ModelConfig,
    ParameterSet,
    PauliTermSum,
    TrainConfig,
    analytic_model_series,
    classification_accuracy,
    eigenphase_signals,
    evaluate,
    evolution_error,
    exact_evolution,
    extract_coefficients,
    finite_difference_gradient,
    fit,
    generate_classification,
    generate_signal,
    max_coefficient_difference,
    parameter_shift_gradient,
    steps_for_epsilon,
    trotter2,
    SignalSpec,
)

XZ = PauliTermSum(n_qubits=1, terms=((1.0, "X"), (1.0, "Z")))


def report(number, name, passed, details):
    print(f"[acceptance {number}] {name}: {'PASS' if passed else 'FAIL'} ({details})")
    assert passed, f"criterion {number} failed: {details}"


def test_01_fourier_series_truncation_and_analytic_oracle():
    start = time.perf_counter()
    worst_leak = 0.0
    worst_diff = 0.0
    for layers in (1, 2, 3, 4):
        config = ModelConfig(n_qubits=1, n_layers=layers)
        for draw in range(50):
            params = ParameterSet.initial(config, seed=1000 * layers + draw)
            series = extract_coefficients(
                lambda x: evaluate(config, params, [x]), K=layers + 5)
            leak = max(abs(series.coefficient(float(n)))
                       for n in range(-(layers + 5), layers + 6)
                       if abs(n) > layers)
            worst_leak = max(worst_leak, leak)
            diff = max_coefficient_difference(
                analytic_model_series(config, params), series)
            worst_diff = max(worst_diff, diff)
    elapsed = time.perf_counter() - start
    report(1, "partial-Fourier-series structure",
           worst_leak < 1e-9 and worst_diff < 1e-9,
           f"max out-of-band {worst_leak:.2e}, max analytic-vs-DFT "
           f"{worst_diff:.2e}, {elapsed:.1f}s")


def test_02_hermitian_symmetry():
    start = time.perf_counter()
    worst = 0.0
    for layers in (1, 2, 3, 4):
        config = ModelConfig(n_qubits=1, n_layers=layers)
        for draw in range(10):
            params = ParameterSet.initial(config, seed=7000 + 10 * layers + draw)
            series = extract_coefficients(
                lambda x: evaluate(config, params, [x]), K=layers + 5)
            worst = max(worst, series.hermitian_residue())
    elapsed = time.perf_counter() - start
    report(2, "Hermitian coefficient symmetry", worst < 1e-9,
           f"max |c(-n) - conj(c(n))| {worst:.2e}, {elapsed:.1f}s")


def test_03_gradient_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(303)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(1, 3))
        layers = int(rng.integers(1, 4))
        config = ModelConfig(n_qubits=n, n_layers=layers)
        params = ParameterSet(
            thetas=rng.uniform(-np.pi, np.pi, (layers, n)),
            betas=rng.uniform(-1.5, 1.5, (layers, n, 2)),
        )
        dataset = LabeledDataset(
            inputs=rng.uniform(0, 2 * np.pi, (6, 1)),
            targets=rng.uniform(-1, 1, 6),
        )
        shift = parameter_shift_gradient(config, params, dataset)
        differences = finite_difference_gradient(config, params, dataset, h=1e-5)
        scale = max(np.abs(shift.thetas).max(), np.abs(shift.betas).max(), 1e-12)
        deviation = max(
            np.abs(shift.thetas - differences.thetas).max(),
            np.abs(shift.betas - differences.betas).max(),
        ) / scale
        worst = max(worst, deviation)
    elapsed = time.perf_counter() - start
    report(3, "parameter-shift vs finite differences", worst < 1e-6,
           f"max relative deviation {worst:.2e}, {elapsed:.1f}s")


def test_04_exact_representability_of_cosine():
    start = time.perf_counter()
    config = ModelConfig(n_qubits=1, n_layers=1)
    params = ParameterSet.initial(config, seed=0)
    xs = np.linspace(0, 2 * np.pi, 30, endpoint=False).reshape(-1, 1)
    dataset = LabeledDataset(inputs=xs, targets=np.cos(xs[:, 0]))
    outcome = fit(config, params, dataset,
                  TrainConfig(max_epochs=500, learning_rate=0.02, seed=0))
    final = min(outcome.loss_history)
    elapsed = time.perf_counter() - start
    report(4, "single-layer model learns cos(x)",
           final < 1e-2 and outcome.epochs_run <= 500,
           f"RMSE {final:.2e} after {outcome.epochs_run} epochs, {elapsed:.1f}s")


def test_05_square_wave_layer_ordering():
    start = time.perf_counter()
    spec = SignalSpec(kind="square", frequency=20.0, n_samples=100)
    dataset = generate_signal(spec)
    results = {}
    for layers in (3, 20):
        config = ModelConfig(n_qubits=1, n_layers=layers)
        params = ParameterSet.initial(config, seed=7)
        outcome = fit(config, params, dataset,
                      TrainConfig(max_epochs=400, learning_rate=0.1, seed=7))
        results[layers] = min(outcome.loss_history)
    elapsed = time.perf_counter() - start
    report(5, "square-wave RMSE ordering by depth",
           results[20] < results[3],
           f"RMSE L=3 {results[3]:.3f} vs L=20 {results[20]:.3f}, {elapsed:.1f}s")


def test_06_circle_classifier_table_reproduction():
    start = time.perf_counter()
    full = generate_classification("circle", 400, seed=7)
    train = full.subset(slice(0, 200))
    test = full.subset(slice(200, None))
    accuracies = {}
    for layers in (1, 6):
        config = ModelConfig(n_qubits=2, n_layers=layers, n_features=2)
        params = ParameterSet.initial(config, seed=0)
        outcome = fit(config, params, train,
                      TrainConfig(max_epochs=300, learning_rate=0.05, seed=0))
        accuracies[layers] = classification_accuracy(
            config, outcome.final_params, test, "binary")
    elapsed = time.perf_counter() - start
    report(6, "circle classifier accuracy",
           accuracies[6] >= 0.85 and accuracies[6] - accuracies[1] >= 0.15,
           f"accuracy L=6 {accuracies[6]:.3f}, L=1 {accuracies[1]:.3f}, "
           f"{elapsed:.1f}s")


def test_07_trotter_second_order_slope():
    start = time.perf_counter()
    exact = exact_evolution(XZ, 1.0)
    r_values = np.array([8, 16, 32, 64])
    errors = np.array([
        evolution_error(trotter2(XZ, 1.0, int(r)), exact) for r in r_values
    ])
    slope = np.polyfit(np.log(r_values), np.log(errors), 1)[0]

    commuting = PauliTermSum(2, ((0.8, "ZI"), (-0.4, "IZ")))
    commuting_error = evolution_error(
        trotter2(commuting, 1.7, 1), exact_evolution(commuting, 1.7))
    elapsed = time.perf_counter() - start
    report(7, "second-order Trotter convergence",
           -2.3 <= slope <= -1.7 and commuting_error < 1e-10,
           f"slope {slope:.3f}, commuting error {commuting_error:.1e}, "
           f"{elapsed:.1f}s")


def test_08_epsilon_contract():
    start = time.perf_counter()
    exact = exact_evolution(XZ, 1.0)
    holds = True
    details = []
    for epsilon in (1e-2, 1e-3, 1e-4):
        result = steps_for_epsilon(XZ, 1.0, epsilon)
        half = int(np.ceil(result.r / 2))
        half_error = evolution_error(trotter2(XZ, 1.0, half), exact)
        holds = holds and result.error <= epsilon < half_error
        details.append(f"eps={epsilon:g}: r={result.r}")
    elapsed = time.perf_counter() - start
    report(8, "epsilon step-count contract", holds,
           ", ".join(details) + f", {elapsed:.1f}s")


def test_09_eigenphase_regression():
    start = time.perf_counter()
    h = PauliTermSum(1, ((1.0, "Z"),))
    t_grid = np.linspace(0, 2 * np.pi, 30, endpoint=False)
    signals = eigenphase_signals(h, t_grid)
    plus_branch = next(s for s in signals if s.eigenvalue > 0)
    dataset = LabeledDataset(inputs=t_grid.reshape(-1, 1),
                             targets=plus_branch.cos_values)
    config = ModelConfig(n_qubits=1, n_layers=1)
    params = ParameterSet.initial(config, seed=0)
    outcome = fit(config, params, dataset,
                  TrainConfig(max_epochs=500, learning_rate=0.02, seed=0))
    final = min(outcome.loss_history)
    elapsed = time.perf_counter() - start
    report(9, "cos(t) eigenphase regression", final < 1e-2,
           f"RMSE {final:.2e}, {elapsed:.1f}s")


def test_10_high_frequency_limitation_ordering():
    start = time.perf_counter()
    spec = SignalSpec(kind="am", n_samples=100, am_carrier=10.0, am_modulator=1.0)
    dataset = generate_signal(spec)
    results = {}
    for layers in (5, 30):
        config = ModelConfig(n_qubits=1, n_layers=layers)
        params = ParameterSet.initial(config, seed=11)
        outcome = fit(config, params, dataset,
                      TrainConfig(max_epochs=300, learning_rate=0.1, seed=11))
        results[layers] = min(outcome.loss_history)
    elapsed = time.perf_counter() - start
    report(10, "AM bandwidth-vs-depth ordering",
           results[30] < results[5],
           f"RMSE L=5 {results[5]:.3f} vs L=30 {results[30]:.3f}, {elapsed:.1f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
