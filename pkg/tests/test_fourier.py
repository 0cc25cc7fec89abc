"""Fourier machinery: spectra, extraction, analytic oracle, decay."""

import numpy as np
import pytest

from qseries import (
    ConfigError,
    FourierSeries,
    ModelConfig,
    ParameterSet,
    analytic_model_series,
    decay_profile,
    evaluate,
    evaluate_series,
    extract_coefficients,
    max_coefficient_difference,
    multivariate_extract,
    spectrum_from_eigenvalues,
)


class TestSpectrum:
    def test_single_half_unit_gate(self):
        spectrum = spectrum_from_eigenvalues([[-0.5, 0.5]], n_layers=1)
        assert spectrum.frequencies == (-1.0, 0.0, 1.0)

    @pytest.mark.parametrize("layers", [1, 2, 3, 5])
    def test_layered_half_unit_gate_gives_integer_ladder(self, layers):
        spectrum = spectrum_from_eigenvalues([[-0.5, 0.5]], n_layers=layers)
        assert spectrum.frequencies == tuple(float(k) for k in range(-layers, layers + 1))

    def test_single_eigenvalue_collapses_to_zero(self):
        spectrum = spectrum_from_eigenvalues([[0.77]], n_layers=4)
        assert spectrum.frequencies == (0.0,)

    def test_symmetric_and_contains_zero(self):
        spectrum = spectrum_from_eigenvalues([[-0.5, 0.5], [-1.0, 0.25]], n_layers=2)
        assert 0.0 in spectrum
        for freq in spectrum.frequencies:
            assert -freq in spectrum

    def test_empty_list_rejected(self):
        with pytest.raises(ValueError):
            spectrum_from_eigenvalues([[]], n_layers=1)


class TestExtraction:
    def test_cosine(self):
        series = extract_coefficients(np.cos, K=2)
        assert series.coefficient(1.0) == pytest.approx(0.5, abs=1e-10)
        assert series.coefficient(-1.0) == pytest.approx(0.5, abs=1e-10)
        for n in (0.0, 2.0, -2.0):
            assert abs(series.coefficient(n)) < 1e-10

    def test_constant(self):
        series = extract_coefficients(lambda x: 1.0, K=3)
        assert series.coefficient(0.0) == pytest.approx(1.0, abs=1e-12)
        assert all(abs(series.coefficient(float(n))) < 1e-12
                   for n in range(1, 4))

    def test_model_spectrum_truncates_at_layer_count(self):
        config = ModelConfig(n_qubits=1, n_layers=3)
        params = ParameterSet.initial(config, seed=123)
        series = extract_coefficients(
            lambda x: evaluate(config, params, [x]), K=8)
        leaked = max(abs(series.coefficient(float(n)))
                     for n in range(-8, 9) if abs(n) > 3)
        assert leaked < 1e-9

    def test_sampling_grid_reproduced_exactly(self):
        # inverse-DFT unitarity: synthesis at the grid returns the samples
        rng = np.random.default_rng(3)

        def f(x):
            return float(np.tanh(np.sin(x) + 0.3 * np.cos(2 * x)))

        K = 6
        series = extract_coefficients(f, K)
        grid = 2 * np.pi * np.arange(2 * K + 1) / (2 * K + 1)
        for x in grid:
            assert evaluate_series(series, x).real == pytest.approx(f(x), abs=1e-10)
            assert abs(evaluate_series(series, x).imag) < 1e-10
        del rng


class TestEvaluateSeries:
    def test_constant_series(self):
        series = FourierSeries(coefficients={0.0: 1.0 + 0j})
        for x in (0.0, 1.0, -3.3):
            assert evaluate_series(series, x) == pytest.approx(1.0)

    def test_cosine_pair_at_zero(self):
        series = FourierSeries(coefficients={1.0: 0.5, -1.0: 0.5})
        assert evaluate_series(series, 0.0) == pytest.approx(1.0)

    def test_band_limited_round_trip(self):
        def f(x):
            return 0.3 + 0.4 * np.cos(x) - 0.2 * np.sin(3 * x) + 0.1 * np.cos(2 * x)

        series = extract_coefficients(f, K=3)
        rng = np.random.default_rng(44)
        for x in rng.uniform(0, 2 * np.pi, 100):
            assert evaluate_series(series, x).real == pytest.approx(f(x), abs=1e-8)


class TestMultivariate:
    def test_single_axis_cosine_in_two_variables(self):
        series = multivariate_extract(lambda x1, x2: np.cos(x1), K=1, n_vars=2)
        assert series.coefficient((1.0, 0.0)) == pytest.approx(0.5, abs=1e-10)
        assert series.coefficient((-1.0, 0.0)) == pytest.approx(0.5, abs=1e-10)
        others = [abs(c) for key, c in series.coefficients.items()
                  if key not in ((1.0, 0.0), (-1.0, 0.0))]
        assert max(others) < 1e-10

    def test_product_of_cosines(self):
        series = multivariate_extract(
            lambda x1, x2: np.cos(x1) * np.cos(x2), K=1, n_vars=2)
        for corner in ((1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)):
            assert series.coefficient(corner) == pytest.approx(0.25, abs=1e-10)

    def test_two_qubit_model_truncation(self):
        config = ModelConfig(n_qubits=2, n_layers=2, n_features=2)
        params = ParameterSet.initial(config, seed=8)

        def f(x1, x2):
            return evaluate(config, params, [x1, x2])

        series = multivariate_extract(f, K=4, n_vars=2)
        leaked = max(
            (abs(c) for key, c in series.coefficients.items()
             if max(abs(k) for k in key) > 2),
            default=0.0,
        )
        assert leaked < 1e-9

    def test_budget_guard(self):
        with pytest.raises(ConfigError):
            multivariate_extract(lambda *xs: 0.0, K=40, n_vars=4)

    def test_multivariate_synthesis_round_trip(self):
        def f(x1, x2):
            return np.cos(x1) * np.cos(x2) + 0.5 * np.sin(x2)

        series = multivariate_extract(f, K=1, n_vars=2)
        rng = np.random.default_rng(2)
        for x in rng.uniform(0, 2 * np.pi, (20, 2)):
            value = evaluate_series(series, x)
            assert value.real == pytest.approx(f(*x), abs=1e-9)
            assert abs(value.imag) < 1e-9

    def test_decay_profile_groups_tuple_keys_by_norm(self):
        series = FourierSeries(
            coefficients={(1.0, 0.0): 0.5, (0.0, 1.0): 0.25, (1.0, 1.0): 0.1})
        profile = dict(decay_profile(series))
        assert profile[1.0] == pytest.approx(0.5)
        assert profile[round(np.sqrt(2.0), 9)] == pytest.approx(0.1)


class TestAnalyticSeries:
    def test_zero_scales_leave_only_dc(self):
        config = ModelConfig(n_qubits=1, n_layers=2)
        rng = np.random.default_rng(1)
        params = ParameterSet(
            thetas=rng.uniform(-np.pi, np.pi, (2, 1)), betas=np.zeros((2, 1, 2)))
        series = analytic_model_series(config, params)
        nonzero = {w for w, c in series.coefficients.items() if abs(c) > 1e-14}
        assert nonzero <= {0.0}

    def test_matches_extraction_on_random_models(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            config = ModelConfig(n_qubits=1, n_layers=1)
            params = ParameterSet(
                thetas=rng.uniform(-np.pi, np.pi, (1, 1)),
                betas=np.array([[[1.0, 0.0]]]),
            )
            exact = analytic_model_series(config, params)
            sampled = extract_coefficients(
                lambda x: evaluate(config, params, [x]), K=2)
            assert max_coefficient_difference(exact, sampled) < 1e-9

    def test_matches_extraction_with_both_encodings_active(self):
        # non-default scales widen the spectrum to 2 per layer; the analytic
        # propagation must keep tracking it
        rng = np.random.default_rng(20)
        config = ModelConfig(n_qubits=1, n_layers=2)
        params = ParameterSet(
            thetas=rng.uniform(-np.pi, np.pi, (2, 1)),
            betas=np.ones((2, 1, 2)),
        )
        exact = analytic_model_series(config, params)
        sampled = extract_coefficients(
            lambda x: evaluate(config, params, [x]), K=6)
        assert max_coefficient_difference(exact, sampled) < 1e-9

    def test_dc_coefficient_is_real(self):
        config = ModelConfig(n_qubits=1, n_layers=1)
        params = ParameterSet.initial(config, seed=99)
        series = analytic_model_series(config, params)
        assert abs(series.coefficient(0.0).imag) < 1e-12

    def test_two_qubit_multivariate_agreement(self):
        config = ModelConfig(n_qubits=2, n_layers=1, n_features=2)
        params = ParameterSet.initial(config, seed=4)
        exact = analytic_model_series(config, params)
        sampled = multivariate_extract(
            lambda x1, x2: evaluate(config, params, [x1, x2]), K=2, n_vars=2)
        assert max_coefficient_difference(exact, sampled) < 1e-9

    def test_size_guard(self):
        config = ModelConfig(n_qubits=4, n_layers=1)
        with pytest.raises(ConfigError):
            analytic_model_series(config, ParameterSet.initial(config, seed=0))


class TestHermitianSymmetry:
    def test_extracted_series_of_real_functions(self):
        rng = np.random.default_rng(30)
        for _ in range(15):
            config = ModelConfig(n_qubits=1, n_layers=int(rng.integers(1, 4)))
            params = ParameterSet.initial(config, seed=int(rng.integers(1e6)))
            series = extract_coefficients(
                lambda x: evaluate(config, params, [x]), K=6)
            assert series.hermitian_residue() < 1e-9


class TestDecayProfile:
    def test_square_wave_envelope(self):
        # analytic square-wave magnitudes: |c_n| = 2/(pi n) for odd n
        coeffs = {}
        for n in range(-15, 16):
            if n % 2 != 0:
                coeffs[float(n)] = 2.0 / (np.pi * n) * (-1j)
        profile = dict(decay_profile(FourierSeries(coefficients=coeffs)))
        for n in (1, 3, 5, 7, 9, 11, 13, 15):
            assert profile[float(n)] == pytest.approx(2.0 / (np.pi * n), rel=1e-12)

    def test_cosine_profile_stops_at_one(self):
        series = extract_coefficients(np.cos, K=5)
        profile = dict(decay_profile(series))
        assert profile[1.0] == pytest.approx(0.5, abs=1e-10)
        for mag, value in profile.items():
            if mag > 1.0:
                assert value < 1e-10

    def test_sawtooth_envelope(self):
        # analytic sawtooth magnitudes: |c_n| = 1/(pi |n|)
        coeffs = {float(n): 1j * ((-1) ** n) / (np.pi * n)
                  for n in range(-12, 13) if n != 0}
        profile = dict(decay_profile(FourierSeries(coefficients=coeffs)))
        for n in (1, 2, 3, 4, 6, 12):
            assert profile[float(n)] == pytest.approx(1.0 / (np.pi * n), rel=1e-12)
