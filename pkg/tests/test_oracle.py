"""Brute-force multimode simulator and the closed-form cross-validation."""

import math

import numpy as np
import pytest

from cvqutrit import fock, ideal, noise, oracle, pipeline


class TestSplitterMatrix:
    def test_single_mode(self):
        assert np.array_equal(oracle.splitter_matrix(1), [[1.0]])

    def test_balanced_two_mode(self):
        u = oracle.splitter_matrix(2)
        root = 1 / math.sqrt(2)
        assert np.allclose(u, [[root, root], [root, -root]], atol=1e-15)

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_unitary(self, n):
        u = oracle.splitter_matrix(n)
        assert np.max(np.abs(u @ u.conj().T - np.eye(n))) < 1e-13
        assert np.allclose(u[0], 1 / math.sqrt(n), atol=1e-15)


class TestApplySplitter:
    def test_vacuum_fixed(self):
        state = oracle.MultimodeState({(0, 0): 1.0 + 0j}, 2, 4, 4)
        out = oracle.apply_splitter(state, oracle.splitter_matrix(2))
        assert out.amplitudes == {(0, 0): 1.0 + 0j}

    def test_single_photon_balanced_split(self):
        state = oracle.MultimodeState({(1, 0): 1.0 + 0j}, 2, 4, 4)
        out = oracle.apply_splitter(state, oracle.splitter_matrix(2))
        root = 1 / math.sqrt(2)
        assert out.amplitudes[(1, 0)] == pytest.approx(root, abs=1e-15)
        assert out.amplitudes[(0, 1)] == pytest.approx(root, abs=1e-15)

    def test_two_photon_bunching(self):
        state = oracle.MultimodeState({(2, 0): 1.0 + 0j}, 2, 4, 4)
        out = oracle.apply_splitter(state, oracle.splitter_matrix(2))
        assert out.amplitudes[(2, 0)] == pytest.approx(0.5, abs=1e-15)
        assert out.amplitudes[(1, 1)] == pytest.approx(1 / math.sqrt(2), abs=1e-15)
        assert out.amplitudes[(0, 2)] == pytest.approx(0.5, abs=1e-15)

    def test_norm_and_photon_number_conserved(self):
        rng = np.random.default_rng(11)
        amps = {}
        for key in [(2, 1, 1), (0, 3, 1), (1, 1, 2), (4, 0, 0)]:
            amps[key] = complex(rng.normal(), rng.normal())
        state = oracle.MultimodeState(amps, 3, 4, 4)
        out = oracle.apply_splitter(state, oracle.splitter_matrix(3))
        assert out.norm_sq() == pytest.approx(state.norm_sq(), abs=1e-12)
        assert all(sum(k) == 4 for k in out.amplitudes)

    def test_rejects_non_unitary(self):
        state = oracle.MultimodeState({(0, 0): 1.0 + 0j}, 2, 2, 2)
        with pytest.raises(ValueError):
            oracle.apply_splitter(state, np.ones((2, 2)))


class TestSimulateIdealExact:
    def test_single_arm_truncates_only(self):
        out, ps = oracle.simulate_ideal_exact(fock.coherent(1.0, 6), 1)
        assert ps == pytest.approx(2.5 * math.exp(-1.0), abs=1e-10)
        src = fock.coherent(1.0, 2)
        assert np.allclose(out.coeffs, src.coeffs, atol=1e-12)

    @pytest.mark.parametrize("n_arms", [1, 2, 3])
    @pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
    def test_coherent_matches_closed_form(self, n_arms, alpha):
        src = fock.coherent(alpha, 8)
        got, ps = oracle.simulate_ideal_exact(src, n_arms)
        expected = src.coeffs[: 2 * n_arms + 1] * ideal.qutrit_weights(n_arms)
        assert np.max(np.abs(got.coeffs - expected)) < 1e-10
        assert ps == pytest.approx(float(np.sum(np.abs(expected) ** 2)), abs=1e-10)

    def test_disagrees_with_uncorrected_weights(self):
        src = fock.coherent(1.0, 8)
        got, _ = oracle.simulate_ideal_exact(src, 1)
        uncorrected = src.coeffs[:3] * ideal.qutrit_weights(1, corrected=False)
        ratio = (uncorrected[2] / got.coeffs[2]).real
        assert ratio == pytest.approx(2.0, abs=1e-10)

    def test_cat_state_generic_input(self):
        src = fock.cat(1.0, 8)
        got, ps = oracle.simulate_ideal_exact(src, 3)
        profile = ideal.transfer_profile_qutrit(3)
        out_ref, ps_ref, f_ref = ideal.teleport_pure(src, profile)
        assert ps == pytest.approx(ps_ref, abs=1e-10)
        assert np.allclose(
            got.coeffs / math.sqrt(ps), out_ref.coeffs, atol=1e-10
        )
        overlap = np.vdot(src.coeffs[:7], got.coeffs)
        assert abs(overlap) ** 2 / ps == pytest.approx(f_ref, abs=1e-10)

    def test_two_level_baseline(self):
        src = fock.coherent(0.8, 6)
        got, _ = oracle.simulate_ideal_exact(src, 2, per_arm_cutoff=1)
        expected = src.coeffs[:3] * ideal.transfer_profile_qubit(2).weights
        assert np.max(np.abs(got.coeffs - expected)) < 1e-10

    def test_unitary_completion_invariance(self):
        # only the equal-weight row/column of the splitter can matter
        src = fock.coherent(1.2, 8)
        row = np.full(3, 1 / math.sqrt(3), dtype=complex)
        householder = oracle.unitary_from_first_row(row)
        ref, ps_ref = oracle.simulate_ideal_exact(src, 3)
        alt, ps_alt = oracle.simulate_ideal_exact(src, 3, unitary=householder)
        assert np.allclose(alt.coeffs, ref.coeffs, atol=1e-12)
        assert ps_alt == pytest.approx(ps_ref, abs=1e-12)

    def test_projection_only_removes_amplitude(self):
        src = fock.coherent(1.0, 8)
        n_arms = 2
        state = oracle._initial_state(src.coeffs, n_arms, 6)
        before = state.norm_sq()
        u = oracle.splitter_matrix(n_arms)
        split = oracle.apply_splitter(state, u)
        truncated = oracle._truncate(split, 2)
        assert truncated.norm_sq() <= split.norm_sq() + 1e-14
        recombined = oracle.apply_splitter(truncated, u.conj().T)
        surviving = oracle._project_tail_vacuum(recombined)
        ps = sum(abs(a) ** 2 for a in surviving.values())
        assert ps <= truncated.norm_sq() + 1e-14
        assert ps <= before + 1e-14

    def test_caps_enforced(self):
        with pytest.raises(ValueError):
            oracle.simulate_ideal_exact(fock.coherent(1.0, 8), 5)
        with pytest.raises(ValueError):
            oracle.simulate_ideal_exact(fock.coherent(1.0, 9), 2)


class TestSimulateNoisyExact:
    def test_noiseless_is_rank_one(self):
        kraus = noise.kraus_set("depolarizing", 0.0)
        mat = oracle.simulate_noisy_exact(0.8, 2, kraus)
        amps, _ = oracle.simulate_ideal_exact(fock.coherent(0.8, 6), 2)
        assert np.allclose(mat, np.outer(amps.coeffs, amps.coeffs.conj()), atol=1e-12)

    def test_vacuum_bit_flip_two_arms(self):
        kraus = noise.kraus_set("bit_flip", 0.1)
        mat = oracle.simulate_noisy_exact(0.0, 2, kraus)
        assert mat[0, 0].real == pytest.approx(0.81, abs=1e-12)

    @pytest.mark.parametrize("n_arms", [1, 2])
    @pytest.mark.parametrize("kind", noise.KINDS)
    @pytest.mark.parametrize("p", [0.05, 0.2])
    @pytest.mark.parametrize("alpha", [0.5, 1.0])
    def test_matches_convolution_pipeline(self, n_arms, kind, p, alpha):
        kraus = noise.kraus_set(kind, p)
        ref = oracle.simulate_noisy_exact(alpha, n_arms, kraus)
        out = pipeline.recombine(
            pipeline.arm_output(pipeline.arm_input(alpha, n_arms), kraus), n_arms
        )
        assert np.max(np.abs(out.matrix - ref)) <= 1e-10
        assert out.success_prob == pytest.approx(
            complex(np.trace(ref)).real, abs=1e-10
        )

    @pytest.mark.parametrize("kind", noise.KINDS)
    @pytest.mark.parametrize("p", [0.05, 0.2])
    def test_three_arm_agreement(self, kind, p):
        kraus = noise.kraus_set(kind, p)
        for alpha in (0.6, 1.4):
            ref = oracle.simulate_noisy_exact(alpha, 3, kraus)
            out = pipeline.recombine(
                pipeline.arm_output(pipeline.arm_input(alpha, 3), kraus), 3
            )
            assert np.max(np.abs(out.matrix - ref)) <= 1e-10

    def test_caps_enforced(self):
        with pytest.raises(ValueError):
            oracle.simulate_noisy_exact(0.5, 4, noise.kraus_set("bit_flip", 0.1))


class TestUnitaryFromFirstRow:
    def test_first_row_reproduced(self):
        row = np.array([0.5, 0.5, 0.5, 0.5], dtype=complex)
        u = oracle.unitary_from_first_row(row)
        assert np.allclose(u[0], row, atol=1e-14)
        assert np.max(np.abs(u @ u.conj().T - np.eye(4))) < 1e-12

    def test_identity_shortcut(self):
        row = np.zeros(3, dtype=complex)
        row[0] = 1.0
        assert np.array_equal(oracle.unitary_from_first_row(row), np.eye(3))

    def test_rejects_non_unit_row(self):
        with pytest.raises(ValueError):
            oracle.unitary_from_first_row(np.ones(3, dtype=complex))
