"""Pauli-sum evolution: decomposition, Trotter products, error search."""

import numpy as np
import pytest

from qseries import (
    ConfigError,
    DataError,
    NumericError,
    PauliTermSum,
    eigenphase_signals,
    evolution_error,
    exact_evolution,
    load_pauli_sum,
    pauli_decompose_2x2,
    steps_for_epsilon,
    trotter2,
)
from qseries.hamiltonian import pauli_string_matrix

X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1.0, -1.0]).astype(complex)

XZ = PauliTermSum(n_qubits=1, terms=((1.0, "X"), (1.0, "Z")))
COMMUTING = PauliTermSum(n_qubits=2, terms=((0.8, "ZI"), (-0.4, "IZ")))


class TestPauliDecompose:
    def test_identity(self):
        assert pauli_decompose_2x2(np.eye(2)) == (1, 0, 0, 0)

    def test_x(self):
        assert pauli_decompose_2x2(X) == (0, 1, 0, 0)

    def test_hadamard(self):
        h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        a, b, d, g = pauli_decompose_2x2(h)
        assert (a, d) == (0, 0)
        assert b == pytest.approx(2**-0.5)
        assert g == pytest.approx(2**-0.5)

    def test_reconstruction_of_random_matrices(self):
        rng = np.random.default_rng(0)
        for _ in range(1000):
            m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            a, b, d, g = pauli_decompose_2x2(m)
            rebuilt = a * np.eye(2) + b * X + d * Y + g * Z
            assert np.abs(rebuilt - m).max() < 1e-12

    def test_hermitian_gives_real_components(self):
        rng = np.random.default_rng(1)
        m = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        m = m + m.conj().T
        for component in pauli_decompose_2x2(m):
            assert abs(component.imag) < 1e-12


class TestExactEvolution:
    def test_z_is_diagonal_phase(self):
        t = 0.83
        result = exact_evolution(PauliTermSum(1, ((1.0, "Z"),)), t)
        expected = np.diag([np.exp(-1j * t), np.exp(1j * t)])
        np.testing.assert_allclose(result.unitary, expected, atol=1e-12)

    def test_zero_time_is_identity(self):
        result = exact_evolution(XZ, 0.0)
        np.testing.assert_allclose(result.unitary, np.eye(2), atol=1e-12)

    def test_x_quarter_period(self):
        result = exact_evolution(PauliTermSum(1, ((1.0, "X"),)), np.pi / 2)
        np.testing.assert_allclose(result.unitary, -1j * X, atol=1e-12)

    def test_size_guard(self):
        with pytest.raises(ConfigError):
            exact_evolution(PauliTermSum(7, ((1.0, "I" * 7),)), 1.0)


class TestTrotter2:
    def test_commuting_terms_are_exact_for_any_r(self):
        exact = exact_evolution(COMMUTING, 1.7)
        for r in (1, 2, 5):
            approx = trotter2(COMMUTING, 1.7, r)
            assert evolution_error(approx, exact) < 1e-10

    def test_single_term_is_exact(self):
        h = PauliTermSum(2, ((0.9, "XY"),))
        assert evolution_error(trotter2(h, 1.3, 1), exact_evolution(h, 1.3)) < 1e-12

    def test_second_order_error_ratio(self):
        exact = exact_evolution(XZ, 1.0)
        for r in (4, 8, 16):
            ratio = (
                evolution_error(trotter2(XZ, 1.0, 2 * r), exact)
                / evolution_error(trotter2(XZ, 1.0, r), exact)
            )
            assert 0.15 < ratio < 0.35

    def test_as_printed_variant_is_first_order(self):
        exact = exact_evolution(XZ, 1.0)
        symmetric = evolution_error(trotter2(XZ, 1.0, 16), exact)
        repeated = evolution_error(trotter2(XZ, 1.0, 16, symmetric=False), exact)
        assert repeated > 5 * symmetric
        # the repeated-forward product halves its error per doubling only
        ratio = (
            evolution_error(trotter2(XZ, 1.0, 32, symmetric=False), exact)
            / repeated
        )
        assert 0.4 < ratio < 0.6

    def test_unitarity(self):
        rng = np.random.default_rng(5)
        letters = np.array(list("IXYZ"))
        for _ in range(20):
            strings = ["".join(rng.choice(letters, 2)) for _ in range(2)]
            h = PauliTermSum(2, tuple((float(rng.standard_normal()), s)
                                      for s in strings))
            result = trotter2(h, float(rng.uniform(0.1, 2.0)), int(rng.integers(1, 9)))
            assert result.unitarity_residue() < 1e-9
            assert exact_evolution(h, 0.7).unitarity_residue() < 1e-9

    def test_convergence_profile_random_hamiltonians(self):
        rng = np.random.default_rng(9)
        letters = np.array(list("IXYZ"))
        tested = 0
        while tested < 5:
            strings = ["".join(rng.choice(letters, 2)) for _ in range(2)]
            coeffs = rng.uniform(0.3, 1.2, 2)
            a = coeffs[0] * pauli_string_matrix(strings[0])
            b = coeffs[1] * pauli_string_matrix(strings[1])
            if np.abs(a @ b - b @ a).max() < 0.1:
                continue  # commuting draws converge instantly; slope undefined
            tested += 1
            h = PauliTermSum(2, ((coeffs[0], strings[0]), (coeffs[1], strings[1])))
            exact = exact_evolution(h, 1.0)
            r_values = [1, 2, 4, 8, 16, 32, 64]
            errors = [evolution_error(trotter2(h, 1.0, r), exact) for r in r_values]
            assert all(e2 <= e1 + 1e-12 for e1, e2 in zip(errors, errors[1:]))
            slope = np.polyfit(np.log(r_values[-4:]), np.log(errors[-4:]), 1)[0]
            assert slope <= -1.8


class TestEvolutionError:
    def test_identical_inputs(self):
        result = exact_evolution(XZ, 0.5)
        assert evolution_error(result, result) == 0.0

    def test_sign_flip_has_norm_two(self):
        from qseries import EvolutionResult

        plus = EvolutionResult(unitary=np.eye(2, dtype=complex), t=0.0, r=0)
        minus = EvolutionResult(unitary=-np.eye(2, dtype=complex), t=0.0, r=0)
        assert evolution_error(plus, minus) == pytest.approx(2.0)

    def test_moderate_step_count_is_accurate(self):
        error = evolution_error(trotter2(XZ, 1.0, 10), exact_evolution(XZ, 1.0))
        assert error < 0.01

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evolution_error(exact_evolution(XZ, 1.0),
                            exact_evolution(COMMUTING, 1.0))


class TestStepsForEpsilon:
    def test_commuting_needs_one_step(self):
        result = steps_for_epsilon(COMMUTING, 2.0, 1e-6)
        assert result.r == 1

    @pytest.mark.parametrize("epsilon", [1e-2, 1e-3, 1e-4])
    def test_contract(self, epsilon):
        exact = exact_evolution(XZ, 1.0)
        result = steps_for_epsilon(XZ, 1.0, epsilon)
        assert result.error <= epsilon
        if result.r > 1:
            half = int(np.ceil(result.r / 2))
            assert evolution_error(trotter2(XZ, 1.0, half), exact) > epsilon

    def test_monotone_in_epsilon(self):
        small = steps_for_epsilon(XZ, 1.0, 5e-4).r
        large = steps_for_epsilon(XZ, 1.0, 1e-3).r
        assert small >= large

    def test_unreachable_epsilon_raises(self):
        with pytest.raises(NumericError):
            steps_for_epsilon(XZ, 1.0, 1e-30)


class TestEigenphaseSignals:
    def test_z_at_zero_time(self):
        signals = eigenphase_signals(PauliTermSum(1, ((1.0, "Z"),)), [0.0])
        assert {round(s.eigenvalue) for s in signals} == {-1, 1}
        for s in signals:
            assert s.cos_values[0] == pytest.approx(1.0)
            assert s.sin_values[0] == pytest.approx(0.0)

    def test_z_at_quarter_period(self):
        signals = eigenphase_signals(PauliTermSum(1, ((1.0, "Z"),)), [np.pi / 2])
        for s in signals:
            assert s.cos_values[0] == pytest.approx(0.0, abs=1e-12)
            assert abs(s.sin_values[0]) == pytest.approx(1.0)


class TestTextFormat:
    def test_parse_and_matrix(self, tmp_path):
        path = tmp_path / "h.txt"
        path.write_text("# a comment\n0.5 XZ\n-0.25 ZI\n\n1.0 YY\n")
        h = load_pauli_sum(path)
        assert h.n_qubits == 2
        assert h.n_terms == 3
        hermitian_residue = np.abs(h.matrix() - h.matrix().conj().T).max()
        assert hermitian_residue < 1e-12

    def test_bad_coefficient(self, tmp_path):
        path = tmp_path / "h.txt"
        path.write_text("abc XZ\n")
        with pytest.raises(DataError):
            load_pauli_sum(path)

    def test_inconsistent_lengths(self, tmp_path):
        path = tmp_path / "h.txt"
        path.write_text("1.0 XZ\n1.0 X\n")
        with pytest.raises(DataError):
            load_pauli_sum(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError):
            load_pauli_sum(tmp_path / "absent.txt")
