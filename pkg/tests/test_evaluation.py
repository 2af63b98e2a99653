"""Tests for the allowed homomorphic operations."""

import math

import numpy as np
import pytest
from scipy.linalg import expm

from phasekey.encoding import AmplitudeVector, phase_rotate, phase_rotate_fock
from phasekey.evaluation import (
    Interferometer,
    NonlinearPhaseSpec,
    apply_interferometer,
    beamsplitter_fock,
    cat_state_target,
    haar_random_unitary,
    interferometer_fock,
    kerr_cat_reference,
    nonlinear_phase_evolve,
)
from phasekey.fock import (
    FockVector,
    coherent_fock,
    overlap,
    total_photon_numbers,
    truncation_bound,
)


def _random_fock(rng, n_max, modes):
    dim = (n_max + 1) ** modes
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return FockVector(cutoff=n_max, modes=modes, amps=amps / np.linalg.norm(amps))


class TestInterferometer:
    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError):
            Interferometer(np.array([[1.0, 0.1], [0.0, 1.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError):
            Interferometer(np.ones((2, 3)))

    def test_haar_unitarity(self):
        u = haar_random_unitary(4, 3)
        assert np.abs(u.u.conj().T @ u.u - np.eye(4)).max() < 1e-12

    def test_haar_single_mode_is_a_phase(self):
        u = haar_random_unitary(1, 5)
        assert abs(abs(u.u[0, 0]) - 1.0) < 1e-12

    def test_haar_deterministic_and_seed_sensitive(self):
        np.testing.assert_array_equal(haar_random_unitary(3, 9).u,
                                      haar_random_unitary(3, 9).u)
        assert np.abs(haar_random_unitary(3, 9).u - haar_random_unitary(3, 10).u).max() > 1e-3


class TestApplyInterferometer:
    def test_identity(self):
        v = AmplitudeVector(np.array([0.3, -0.8j]))
        got = apply_interferometer(Interferometer(np.eye(2)), v)
        np.testing.assert_array_equal(got.amps, v.amps)

    def test_balanced_splitter_merges_equal_inputs(self):
        u = Interferometer(np.array([[1, 1], [1, -1]]) / math.sqrt(2))
        alpha = 0.9
        got = apply_interferometer(u, AmplitudeVector(np.array([alpha, alpha])))
        np.testing.assert_allclose(got.amps, [math.sqrt(2) * alpha, 0.0], atol=1e-15)

    def test_balanced_splitter_against_fock_evolution(self):
        # the same matrix applied in the number basis must land on the
        # coherent state of the mapped amplitudes
        alpha = 0.9
        u = Interferometer(np.array([[1, 1], [1, -1]]) / math.sqrt(2))
        n_max = truncation_bound(2 * alpha ** 2, 1e-12) + 6
        evolved = interferometer_fock(u, coherent_fock([alpha, alpha], n_max))
        target = coherent_fock([math.sqrt(2) * alpha, 0.0], n_max)
        assert abs(overlap(evolved, target)) >= 1 - 1e-9

    def test_commutes_with_phase_rotation(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            m = int(rng.integers(1, 5))
            u = haar_random_unitary(m, int(rng.integers(2 ** 32)))
            v = AmplitudeVector(rng.standard_normal(m) + 1j * rng.standard_normal(m))
            theta = float(rng.uniform(0, 2 * math.pi))
            left = apply_interferometer(u, phase_rotate(v, theta))
            right = phase_rotate(apply_interferometer(u, v), theta)
            assert np.abs(left.amps - right.amps).max() <= 1e-12

    def test_energy_conservation(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            u = haar_random_unitary(4, int(rng.integers(2 ** 32)))
            v = AmplitudeVector(rng.standard_normal(4) + 1j * rng.standard_normal(4))
            got = apply_interferometer(u, v)
            assert got.total_energy() == pytest.approx(v.total_energy(), abs=1e-12)

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            apply_interferometer(Interferometer(np.eye(3)), AmplitudeVector(np.ones(2)))


class TestNonlinearPhase:
    def test_zero_time_is_identity(self):
        psi = coherent_fock([0.8], 10)
        spec = NonlinearPhaseSpec(terms={(2,): 1.0}, t=0.0)
        np.testing.assert_array_equal(nonlinear_phase_evolve(spec, psi).amps, psi.amps)

    def test_single_mode_kerr_fixes_low_occupations(self):
        # phases -tK(n^2 - n) vanish at n = 0 and n = 1
        psi = coherent_fock([1.1], 12)
        spec = NonlinearPhaseSpec(terms={(1,): -0.7, (2,): 0.7}, t=1.3)
        evolved = nonlinear_phase_evolve(spec, psi)
        np.testing.assert_allclose(evolved.amps[:2], psi.amps[:2], atol=1e-15)
        assert abs(evolved.amps[2] - psi.amps[2]) > 1e-3

    def test_cross_kerr_phase_on_number_state(self):
        n_max = 4
        amps = np.zeros((n_max + 1) ** 2, dtype=complex)
        amps[2 * (n_max + 1) + 3] = 1.0
        psi = FockVector(cutoff=n_max, modes=2, amps=amps)
        spec = NonlinearPhaseSpec(terms={(1, 1): 0.4}, t=0.9)
        evolved = nonlinear_phase_evolve(spec, psi)
        got = evolved.amps[2 * (n_max + 1) + 3]
        assert got == pytest.approx(np.exp(-1j * 0.4 * 0.9 * 6), abs=1e-14)

    def test_number_distribution_preserved(self):
        psi = coherent_fock([0.9, -0.5], 6)
        spec = NonlinearPhaseSpec(terms={(2, 0): 0.3, (1, 1): -0.2}, t=2.0)
        evolved = nonlinear_phase_evolve(spec, psi)
        np.testing.assert_allclose(np.abs(evolved.amps) ** 2, np.abs(psi.amps) ** 2,
                                   atol=1e-14)

    def test_validation(self):
        with pytest.raises(ValueError):
            NonlinearPhaseSpec(terms={(0, 0): 1.0})
        with pytest.raises(ValueError):
            NonlinearPhaseSpec(terms={(-1,): 1.0})
        with pytest.raises(ValueError):
            NonlinearPhaseSpec(terms={})
        with pytest.raises(ValueError):
            NonlinearPhaseSpec(terms={(1,): 1.0, (1, 1): 2.0})


class TestKerrCat:
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
    def test_cat_identity(self, alpha):
        n_max = truncation_bound(alpha ** 2, 1e-12) + 4
        evolved = kerr_cat_reference(alpha, n_max)
        target = cat_state_target(alpha, n_max)
        assert abs(overlap(evolved, target)) >= 1 - 1e-8

    def test_vacuum_input(self):
        evolved = kerr_cat_reference(0.0, 5)
        assert abs(evolved.amps[0]) == pytest.approx(1.0, abs=1e-15)
        np.testing.assert_allclose(evolved.amps[1:], 0.0, atol=1e-15)

    def test_number_distribution_unchanged(self):
        alpha = 1.2
        n_max = truncation_bound(alpha ** 2, 1e-12)
        evolved = kerr_cat_reference(alpha, n_max)
        plain = coherent_fock([alpha], n_max)
        np.testing.assert_allclose(np.abs(evolved.amps) ** 2, np.abs(plain.amps) ** 2,
                                   atol=1e-16)

    def test_matches_general_phase_gate(self):
        alpha = 0.8
        n_max = 12
        spec = NonlinearPhaseSpec(terms={(2,): 1.0}, t=math.pi / 2)
        via_gate = nonlinear_phase_evolve(spec, coherent_fock([alpha], n_max))
        np.testing.assert_allclose(via_gate.amps, kerr_cat_reference(alpha, n_max).amps,
                                   atol=1e-14)


class TestBeamsplitterFock:
    def test_zero_angle_is_identity(self):
        psi = coherent_fock([0.5, -0.3], 5)
        np.testing.assert_array_equal(beamsplitter_fock(0.0, psi).amps, psi.amps)

    def test_single_photon_block_against_expm(self):
        n_max = 3
        amps = np.zeros((n_max + 1) ** 2, dtype=complex)
        amps[1 * (n_max + 1) + 0] = 1.0
        psi = FockVector(cutoff=n_max, modes=2, amps=amps)
        got = beamsplitter_fock(math.pi / 4, psi)
        # oracle: the n = 1 sector generator is [[0, -1], [1, 0]] in the
        # ordered basis (|0,1>, |1,0>)
        block = expm(math.pi / 4 * np.array([[0.0, -1.0], [1.0, 0.0]]))
        want01, want10 = block @ np.array([0.0, 1.0])
        assert got.amps[0 * (n_max + 1) + 1] == pytest.approx(want01, abs=1e-12)
        assert got.amps[1 * (n_max + 1) + 0] == pytest.approx(want10, abs=1e-12)
        assert abs(abs(got.amps[1 * (n_max + 1) + 0]) - 1 / math.sqrt(2)) < 1e-12

    def test_total_photon_distribution_invariant(self):
        rng = np.random.default_rng(8)
        psi = _random_fock(rng, 5, 2)
        evolved = beamsplitter_fock(1.1, psi)
        t = total_photon_numbers(5, 2)
        for n in range(11):
            before = float(np.sum(np.abs(psi.amps[t == n]) ** 2))
            after = float(np.sum(np.abs(evolved.amps[t == n]) ** 2))
            assert after == pytest.approx(before, abs=1e-10)

    def test_coherent_amplitude_map(self):
        # exp(theta (a^dag b - a b^dag)) sends |beta, gamma> to the coherent
        # state of the rotated amplitudes
        theta = 0.37
        beta, gamma = 0.6, -0.8
        n_max = truncation_bound(1.0, 1e-12) + 8
        evolved = beamsplitter_fock(theta, coherent_fock([beta, gamma], n_max))
        rot = np.array([[math.cos(theta), math.sin(theta)],
                        [-math.sin(theta), math.cos(theta)]])
        target = coherent_fock(rot @ np.array([beta, gamma]), n_max)
        assert abs(overlap(evolved, target)) >= 1 - 1e-9

    def test_norm_preserved(self):
        rng = np.random.default_rng(9)
        psi = _random_fock(rng, 6, 2)
        assert beamsplitter_fock(0.8, psi).squared_norm() == pytest.approx(1.0, abs=1e-12)

    def test_mode_count_guard(self):
        with pytest.raises(ValueError):
            beamsplitter_fock(0.5, coherent_fock([1.0], 4))


class TestInterferometerFock:
    def test_matches_beamsplitter_for_rotations(self):
        theta = 0.61
        rot = Interferometer(np.array([[math.cos(theta), math.sin(theta)],
                                       [-math.sin(theta), math.cos(theta)]]))
        rng = np.random.default_rng(10)
        psi = _random_fock(rng, 5, 2)
        via_lift = interferometer_fock(rot, psi)
        via_blocks = beamsplitter_fock(theta, psi)
        np.testing.assert_allclose(via_lift.amps, via_blocks.amps, atol=1e-10)

    @pytest.mark.parametrize("m", [2, 3])
    def test_coherent_amplitude_map(self, m):
        u = haar_random_unitary(m, 77 + m)
        amps_in = np.array([0.5, -0.4, 0.3][:m])
        n_max = truncation_bound(float(np.sum(np.abs(amps_in) ** 2)), 1e-12) + 6
        evolved = interferometer_fock(u, coherent_fock(amps_in, n_max))
        target = coherent_fock(u.u @ amps_in, n_max)
        assert abs(overlap(evolved, target)) >= 1 - 1e-9

    def test_permutation_matrix(self):
        u = Interferometer(np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=float))
        amps_in = np.array([0.4, -0.2, 0.1])
        n_max = truncation_bound(float(np.sum(np.abs(amps_in) ** 2)), 1e-12) + 6
        evolved = interferometer_fock(u, coherent_fock(amps_in, n_max))
        target = coherent_fock(u.u @ amps_in, n_max)
        assert abs(overlap(evolved, target)) >= 1 - 1e-10

    def test_norm_preserved(self):
        rng = np.random.default_rng(12)
        psi = _random_fock(rng, 4, 2)
        u = haar_random_unitary(2, 44)
        assert interferometer_fock(u, psi).squared_norm() == pytest.approx(1.0, abs=1e-12)


class TestFockLevelCommutation:
    def test_global_phase_commutes_with_nonlinear_gate(self):
        rng = np.random.default_rng(13)
        spec = NonlinearPhaseSpec(terms={(2, 0): 0.5, (1, 1): -0.3}, t=1.7)
        for _ in range(5):
            psi = _random_fock(rng, 4, 2)
            theta = float(rng.uniform(0, 2 * math.pi))
            left = nonlinear_phase_evolve(spec, phase_rotate_fock(psi, theta))
            right = phase_rotate_fock(nonlinear_phase_evolve(spec, psi), theta)
            assert np.abs(left.amps - right.amps).max() <= 1e-10

    def test_global_phase_commutes_with_beamsplitter(self):
        rng = np.random.default_rng(14)
        for _ in range(5):
            psi = _random_fock(rng, 4, 2)
            theta = float(rng.uniform(0, 2 * math.pi))
            left = beamsplitter_fock(0.75, phase_rotate_fock(psi, theta))
            right = phase_rotate_fock(beamsplitter_fock(0.75, psi), theta)
            assert np.abs(left.amps - right.amps).max() <= 1e-10
