"""Tests for the four-qubit period-finding pipeline.

Stage goldens are checked against hand-enumerable states; the delay modes
are checked against the closed-form two-path amplitudes and against a
brute-force matrix pipeline rebuilt here from first principles.
"""

import numpy as np
import pytest

from spinpulse import (
    ConfigurationError,
    EnergyTable,
    PeriodExtractionError,
    QuantumState,
    diagonal_energies,
    dft_x,
    extract_period,
    modexp_oracle,
    register_index,
    register_values,
    run_shor,
    sample_x,
    superpose_x,
    trace_paths,
)

from conftest import random_state

index_of = register_index


def brute_force_pipeline(mode, tau1, tau2, energies):
    """Oracle: assemble the full 16x16 pipeline from explicit matrices."""
    h = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    w = np.kron(np.kron(h, h), np.eye(4))
    o = np.zeros((16, 16))
    for x in range(4):
        fx = 3**x % 4
        for y in range(4):
            o[index_of(x, (y + fx) % 4), index_of(x, y)] = 1.0
    k = np.arange(4)
    f = 0.5 * np.exp(2j * np.pi * np.outer(k, k) / 4)
    fmat = np.kron(f, np.eye(4))
    d1 = np.diag(np.exp(-1j * energies * tau1))
    d2 = np.diag(np.exp(-1j * energies * tau2))
    psi = np.zeros(16, dtype=complex)
    psi[0] = 1.0
    if mode == "instantaneous":
        return fmat @ o @ w @ psi
    if mode == "bare-delay":
        return fmat @ d2 @ o @ d1 @ w @ psi
    dd1 = d1
    dd2 = np.diag(np.exp(-1j * energies * (tau1 + tau2)))
    o_dressed = dd1 @ o @ dd1.conj().T
    f_dressed = dd2 @ fmat @ dd2.conj().T
    return f_dressed @ d2 @ o_dressed @ d1 @ w @ psi


class TestStages:
    def test_superpose_ground_state(self):
        out = superpose_x(QuantumState.basis(4, 0))
        expected = np.zeros(16)
        expected[[index_of(x, 0) for x in range(4)]] = 0.5
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)

    def test_superpose_is_involution(self):
        state = QuantumState.basis(4, 0)
        twice = superpose_x(superpose_x(state))
        np.testing.assert_allclose(twice.amplitudes, state.amplitudes, atol=1e-15)

    def test_superpose_preserves_norm(self, rng):
        out = superpose_x(QuantumState(random_state(rng, 16)))
        assert abs(out.norm - 1.0) < 1e-12

    def test_oracle_function_values(self):
        # y(x) = 3^x mod 4 cycles 1, 3, 1, 3
        state = superpose_x(QuantumState.basis(4, 0))
        out = modexp_oracle(state)
        expected = np.zeros(16)
        for x, y in ((0, 1), (1, 3), (2, 1), (3, 3)):
            expected[index_of(x, y)] = 0.5
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)

    def test_oracle_on_nonzero_y(self):
        # x = 1, y = 0 -> y = 3
        out = modexp_oracle(QuantumState.basis(4, index_of(1, 0)))
        assert out.probabilities[index_of(1, 3)] == pytest.approx(1.0)

    def test_oracle_is_permutation(self):
        from spinpulse.shor import _oracle_matrix

        u = _oracle_matrix(3, 4)
        assert np.all(u.sum(axis=0) == 1.0)
        assert np.all(u.sum(axis=1) == 1.0)
        assert np.all((u == 0.0) | (u == 1.0))

    def test_oracle_rejects_noncoprime_base(self):
        with pytest.raises(ConfigurationError, match="coprime"):
            modexp_oracle(QuantumState.basis(4, 0), base=2)

    def test_dft_single_x_value(self):
        # |x=0> spreads evenly with unit phases
        out = dft_x(QuantumState.basis(4, index_of(0, 1)))
        expected = np.zeros(16, dtype=complex)
        for k in range(4):
            expected[index_of(k, 1)] = 0.5
        np.testing.assert_allclose(out.amplitudes, expected, atol=1e-15)

    def test_dft_inverse_roundtrip(self, rng):
        state = QuantumState(random_state(rng, 16))
        back = dft_x(dft_x(state), inverse=True)
        np.testing.assert_allclose(back.amplitudes, state.amplitudes, atol=1e-12)


class TestRunShor:
    def test_instantaneous_final_state(self):
        run = run_shor("instantaneous")
        expected = np.zeros(16, dtype=complex)
        expected[index_of(0, 1)] = 0.5
        expected[index_of(0, 3)] = 0.5
        expected[index_of(2, 1)] = 0.5
        expected[index_of(2, 3)] = -0.5
        np.testing.assert_allclose(run.final_state.amplitudes, expected, atol=1e-12)
        np.testing.assert_allclose(run.x_distribution, [0.5, 0.0, 0.5, 0.0], atol=1e-12)

    def test_bare_delay_two_path_amplitudes(self, rng):
        energies = EnergyTable(rng.uniform(-5, 5, size=16))
        tau1, tau2 = rng.uniform(0, 3, size=2)
        run = run_shor("bare-delay", delays=(tau1, tau2), energies=energies)
        e = energies.energy
        phase_a = np.exp(-1j * (e(0, 0) * tau1 + e(0, 1) * tau2))
        phase_b = np.exp(-1j * (e(2, 0) * tau1 + e(2, 1) * tau2))
        expected_00 = 0.25 * (phase_a + phase_b)
        expected_01 = 0.25 * (phase_a - phase_b)
        assert run.final_state.amplitudes[index_of(0, 1)] == pytest.approx(
            expected_00, abs=1e-12
        )
        assert run.final_state.amplitudes[index_of(1, 1)] == pytest.approx(
            expected_01, abs=1e-12
        )

    def test_bare_delay_revived_state_probability(self):
        # phases arranged so the two paths differ by pi: P(|01,01>) = 1/4
        table = np.zeros((4, 4))
        table[2, 0] = np.pi  # E_20, delays (1, anything)
        energies = EnergyTable.from_xy_table(table)
        run = run_shor("bare-delay", delays=(1.0, 2.0), energies=energies)
        assert run.final_state.probabilities[index_of(1, 1)] == pytest.approx(
            0.25, abs=1e-12
        )

    def test_bare_delay_interference_formula(self, rng):
        # P(|01,01>) = (1 - cos(dphi)) / 8
        for _ in range(20):
            energies = EnergyTable(rng.uniform(-4, 4, size=16))
            tau1, tau2 = rng.uniform(0, 5, size=2)
            run = run_shor("bare-delay", delays=(tau1, tau2), energies=energies)
            e = energies.energy
            dphi = (e(2, 0) - e(0, 0)) * tau1 + (e(2, 1) - e(0, 1)) * tau2
            expected = (1 - np.cos(dphi)) / 8
            assert run.final_state.probabilities[index_of(1, 1)] == pytest.approx(
                expected, abs=1e-12
            )

    def test_bare_delay_reduces_to_instantaneous(self):
        energies = EnergyTable(np.arange(16.0))
        run = run_shor("bare-delay", delays=(0.0, 0.0), energies=energies)
        ideal = run_shor("instantaneous")
        np.testing.assert_allclose(
            run.final_state.amplitudes, ideal.final_state.amplitudes, atol=0
        )

    def test_natural_phase_restores_distribution(self, rng):
        ideal = run_shor("instantaneous")
        for _ in range(20):
            energies = EnergyTable(rng.uniform(-5, 5, size=16))
            delays = tuple(rng.uniform(0, 4, size=2))
            run = run_shor("natural-phase", delays=delays, energies=energies)
            np.testing.assert_allclose(
                run.x_distribution, ideal.x_distribution, atol=1e-10
            )

    def test_natural_phase_amplitudes_differ_only_by_state_phases(self, rng):
        energies = EnergyTable(rng.uniform(-5, 5, size=16))
        delays = (1.3, 2.1)
        run = run_shor("natural-phase", delays=delays, energies=energies)
        ideal = run_shor("instantaneous")
        expected = np.exp(-1j * energies.values * sum(delays)) * ideal.final_state.amplitudes
        np.testing.assert_allclose(run.final_state.amplitudes, expected, atol=1e-12)

    def test_all_modes_match_brute_force(self, rng):
        values = rng.uniform(-5, 5, size=16)
        energies = EnergyTable(values)
        tau1, tau2 = 0.7, 1.9
        for mode in ("instantaneous", "bare-delay", "natural-phase"):
            run = run_shor(mode, delays=(tau1, tau2), energies=energies)
            oracle = brute_force_pipeline(mode, tau1, tau2, values)
            np.testing.assert_allclose(run.final_state.amplitudes, oracle, atol=1e-12)

    def test_unitarity(self, rng):
        energies = EnergyTable(rng.uniform(-5, 5, size=16))
        run = run_shor("bare-delay", delays=(2.0, 3.0), energies=energies)
        assert abs(run.final_state.norm - 1.0) < 1e-12

    def test_delay_mode_requires_energies(self):
        with pytest.raises(ConfigurationError, match="energy"):
            run_shor("bare-delay", delays=(1.0, 1.0))

    def test_unknown_mode(self):
        with pytest.raises(ConfigurationError, match="mode"):
            run_shor("adiabatic")


class TestEnergyTable:
    def test_from_spin_system(self, ensemble_system):
        table = EnergyTable.from_spin_system(ensemble_system)
        np.testing.assert_allclose(table.values, diagonal_energies(ensemble_system))
        assert table.source == "derived-from-spin-system"

    def test_xy_indexing(self):
        table = EnergyTable.from_xy_table(np.arange(16.0).reshape(4, 4))
        assert table.energy(2, 1) == 9.0

    def test_wrong_size(self):
        with pytest.raises(ConfigurationError):
            EnergyTable(np.zeros(8))


class TestTracePaths:
    def test_two_paths_into_constructive_state(self, rng):
        energies = EnergyTable(rng.uniform(-3, 3, size=16))
        run = run_shor("bare-delay", delays=(1.0, 2.0), energies=energies, trace=True)
        terms = run.trace.terms[index_of(0, 1)]
        assert len(terms) == 2
        paths = {t.states for t in terms}
        assert paths == {
            (0, index_of(0, 0), index_of(0, 1), index_of(0, 1)),
            (0, index_of(2, 0), index_of(2, 1), index_of(0, 1)),
        }

    def test_instantaneous_paths_share_phase(self):
        run = run_shor("instantaneous")
        trace = trace_paths(run)
        terms = trace.terms[index_of(0, 1)]
        assert len(terms) == 2
        phases = [t.phase for t in terms]
        assert phases[0] == pytest.approx(phases[1], abs=1e-12)

    def test_coherent_sums_reproduce_amplitudes(self, rng):
        energies = EnergyTable(rng.uniform(-5, 5, size=16))
        run = run_shor("bare-delay", delays=(0.8, 1.7), energies=energies)
        trace = trace_paths(run)
        for index in range(16):
            assert trace.amplitude(index) == pytest.approx(
                run.final_state.amplitudes[index], abs=1e-12
            )

    def test_path_magnitudes_quarter(self, rng):
        energies = EnergyTable(rng.uniform(-5, 5, size=16))
        run = run_shor("bare-delay", delays=(1.0, 1.0), energies=energies)
        trace = trace_paths(run)
        for terms in trace.terms.values():
            for term in terms:
                assert term.magnitude == pytest.approx(0.25, abs=1e-12)


class TestExtractPeriod:
    def test_ideal_distribution(self):
        result = extract_period([0.5, 0.0, 0.5, 0.0])
        assert result.period == 2
        assert result.factor == 2
        assert result.x_measured == 2
        assert result.note is None

    def test_no_support_raises(self):
        with pytest.raises(PeriodExtractionError, match="no support"):
            extract_period([1.0, 0.0, 0.0, 0.0])

    def test_corrupted_distribution_reports_diagnostic(self):
        # support on x = 1 -> period 4, z = 9, gcd(8, 4) = 4: not proper
        result = extract_period([0.4, 0.3, 0.2, 0.1])
        assert result.period == 4
        assert result.factor == 4
        assert result.x_measured == 1
        assert result.note is not None

    def test_fractional_period_raises(self):
        with pytest.raises(PeriodExtractionError, match="fractional"):
            extract_period([0.5, 0.0, 0.0, 0.5])

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError, match="normalized"):
            extract_period([0.5, 0.0, 0.0, 0.0])


class TestRegisterCoordinates:
    def test_roundtrip(self):
        for index in range(16):
            x, y = register_values(index)
            assert register_index(x, y) == index

    def test_example_encoding(self):
        # x = 1, y = 3 lives in |01,11>
        assert register_index(1, 3) == 0b0111

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            register_index(4, 0)
        with pytest.raises(ValueError):
            register_values(16)


class TestSampling:
    def test_deterministic_with_seed(self):
        dist = [0.5, 0.0, 0.5, 0.0]
        assert sample_x(dist, 100, seed=7) == sample_x(dist, 100, seed=7)

    def test_counts_total(self):
        counts = sample_x([0.5, 0.0, 0.5, 0.0], 200, seed=1)
        assert sum(counts.values()) == 200
        assert set(counts) <= {0, 2}
