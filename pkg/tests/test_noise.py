"""Kraus channels, the noisy resource state, and logarithmic negativity."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cvqutrit import noise

# independent matrix literals for cross-checks (not taken from the package)
CYCLE_UP = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
CYCLE_DOWN = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=complex)
OMEGA = np.exp(2j * np.pi / 3)
CLOCK = np.diag([1, OMEGA, OMEGA**2])


def reference_depolarizing_ops(p):
    s, c = CYCLE_DOWN, CLOCK
    units = [s, c, s @ s, s @ c, s @ s @ c, s @ c @ c, s @ s @ c @ c, c @ c]
    return [np.sqrt(1 - p) * np.eye(3)] + [np.sqrt(p / 8) * u for u in units]


class TestKrausSet:
    def test_noiseless_bit_flip_is_identity(self):
        ops = noise.kraus_set("bit_flip", 0.0).operators
        assert np.array_equal(ops[0], np.eye(3))
        assert np.all(ops[1] == 0)
        assert np.all(ops[2] == 0)

    def test_operator_counts(self):
        assert noise.kraus_set("bit_flip", 0.5).operators.shape[0] == 3
        assert noise.kraus_set("phase_flip", 0.5).operators.shape[0] == 3
        assert noise.kraus_set("depolarizing", 0.5).operators.shape[0] == 9

    def test_depolarizing_completeness(self):
        ops = noise.kraus_set("depolarizing", 0.4).operators
        total = sum(op.conj().T @ op for op in ops)
        assert np.max(np.abs(total - np.eye(3))) < 1e-14

    def test_phase_flip_matrix_entry(self):
        ops = noise.kraus_set("phase_flip", 0.3).operators
        assert ops[1][1, 1] == pytest.approx(-math.sqrt(0.15), abs=1e-15)
        assert ops[2][2, 2] == pytest.approx(-math.sqrt(0.15), abs=1e-15)

    def test_bit_flip_permutations(self):
        ops = noise.kraus_set("bit_flip", 0.5).operators
        assert np.allclose(ops[1], 0.5 * CYCLE_UP)
        assert np.allclose(ops[2], 0.5 * CYCLE_DOWN)

    def test_depolarizing_matches_reference_products(self):
        got = noise.kraus_set("depolarizing", 0.32).operators
        for op, ref in zip(got, reference_depolarizing_ops(0.32)):
            assert np.allclose(op, ref, atol=1e-15)

    @pytest.mark.parametrize("bad", [-0.1, 1.1])
    def test_rejects_probability(self, bad):
        with pytest.raises(ValueError):
            noise.kraus_set("bit_flip", bad)

    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            noise.kraus_set("amplitude_damping", 0.1)

    @given(p=st.floats(0.0, 1.0))
    @settings(max_examples=60, deadline=None)
    def test_completeness_everywhere(self, p):
        for kind in noise.KINDS:
            ops = noise.kraus_set(kind, p).operators
            total = sum(op.conj().T @ op for op in ops)
            assert np.max(np.abs(total - np.eye(3))) <= 1e-12


class TestApplyChannel:
    def test_phase_flip_fixes_vacuum(self):
        rho = np.diag([1.0, 0.0, 0.0]).astype(complex)
        out = noise.apply_channel(rho, noise.kraus_set("phase_flip", 0.37))
        assert np.array_equal(out, rho)

    def test_bit_flip_on_vacuum(self):
        rho = np.diag([1.0, 0.0, 0.0]).astype(complex)
        out = noise.apply_channel(rho, noise.kraus_set("bit_flip", 0.1))
        assert np.allclose(out, np.diag([0.9, 0.05, 0.05]), atol=1e-15)

    def test_depolarizing_mixes_completely_at_eight_ninths(self):
        # the eight-unitary set gives the exactly-mixing point at p = 8/9,
        # verified against the independent per-branch sum below
        rho = np.diag([0.0, 1.0, 0.0]).astype(complex)
        out = noise.apply_channel(rho, noise.kraus_set("depolarizing", 8 / 9))
        assert np.allclose(out, np.eye(3) / 3, atol=1e-12)

    def test_depolarizing_full_strength_branch_sum(self):
        rho = np.diag([0.0, 1.0, 0.0]).astype(complex)
        expected = sum(
            op @ rho @ op.conj().T for op in reference_depolarizing_ops(1.0)
        )
        out = noise.apply_channel(rho, noise.kraus_set("depolarizing", 1.0))
        assert np.allclose(out, expected, atol=1e-14)
        assert np.allclose(np.diag(out).real, [3 / 8, 1 / 4, 3 / 8], atol=1e-14)

    @given(p=st.floats(0.0, 1.0), seed=st.integers(0, 2**31 - 1))
    @settings(max_examples=40, deadline=None)
    def test_linear_and_trace_preserving(self, p, seed):
        rng = np.random.default_rng(seed)
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        for kind in noise.KINDS:
            kraus = noise.kraus_set(kind, p)
            out_a = noise.apply_channel(a, kraus)
            out_b = noise.apply_channel(b, kraus)
            out_sum = noise.apply_channel(a + 2.0 * b, kraus)
            assert np.allclose(out_sum, out_a + 2.0 * out_b, atol=1e-12)
            assert np.trace(out_a) == pytest.approx(np.trace(a), abs=1e-12)


class TestEffectiveResource:
    def test_noiseless_is_pure_maximally_entangled(self):
        rho = noise.effective_resource("depolarizing", 0.0).rho
        phi = np.zeros(9)
        phi[[0, 4, 8]] = 1 / math.sqrt(3)
        assert np.allclose(rho, np.outer(phi, phi), atol=1e-15)

    def test_density_matrix_class(self):
        rho = noise.effective_resource("bit_flip", 0.2).rho
        assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
        assert min(noise.hermitian_eigenvalues(rho)) >= -1e-10

    def test_phase_flip_keeps_vacuum_pair_weight(self):
        rho = noise.effective_resource("phase_flip", 0.2).rho
        assert rho[0, 0] == pytest.approx(1 / 3, abs=1e-14)

    @pytest.mark.parametrize("p", [k / 10 for k in range(11)])
    def test_positive_for_all_strengths(self, p):
        for kind in noise.KINDS:
            rho = noise.effective_resource(kind, p).rho
            assert min(noise.hermitian_eigenvalues(rho)) >= -1e-10


class TestPartialTranspose:
    def test_involution_is_exact(self):
        rng = np.random.default_rng(7)
        rho = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        double = noise.partial_transpose(noise.partial_transpose(rho))
        assert np.array_equal(double, rho)

    def test_swaps_first_factor_indices(self):
        rho = np.zeros((9, 9), dtype=complex)
        rho[3 * 1 + 0, 3 * 2 + 2] = 1.0  # |1,0><2,2|
        pt = noise.partial_transpose(rho)
        assert pt[3 * 2 + 0, 3 * 1 + 2] == 1.0


class TestHermitianEigenvalues:
    def test_identity(self):
        assert np.allclose(
            noise.hermitian_eigenvalues(np.eye(9, dtype=complex)), np.ones(9)
        )

    def test_diagonal_sorted(self):
        got = noise.hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert np.allclose(got, [1.0, 2.0, 3.0], atol=1e-13)

    def test_partial_transpose_of_maximally_entangled(self):
        rho = noise.effective_resource("bit_flip", 0.0).rho
        eigs = noise.hermitian_eigenvalues(noise.partial_transpose(rho))
        expected = np.array([-1 / 3] * 3 + [1 / 3] * 6)
        assert np.allclose(eigs, expected, atol=1e-12)
        assert np.sum(np.abs(eigs)) == pytest.approx(3.0, abs=1e-12)

    @given(seed=st.integers(0, 2**31 - 1), dim=st.integers(2, 12))
    @settings(max_examples=40, deadline=None)
    def test_against_numpy_eigvalsh(self, seed, dim):
        rng = np.random.default_rng(seed)
        raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        herm = (raw + raw.conj().T) / 2
        got = noise.hermitian_eigenvalues(herm)
        assert np.allclose(got, np.linalg.eigvalsh(herm), atol=1e-10)

    def test_rejects_non_hermitian(self):
        bad = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
        with pytest.raises(ValueError):
            noise.hermitian_eigenvalues(bad)

    def test_rejects_oversized(self):
        with pytest.raises(ValueError):
            noise.hermitian_eigenvalues(np.eye(65, dtype=complex))


class TestLogNegativity:
    def test_noiseless_value(self):
        for kind in noise.KINDS:
            assert noise.log_negativity(kind, 0.0) == pytest.approx(
                math.log2(3.0), abs=1e-9
            )

    def test_bit_flip_equals_depolarizing(self):
        for p in np.arange(0.0, 0.2001, 0.01):
            assert noise.log_negativity("bit_flip", float(p)) == pytest.approx(
                noise.log_negativity("depolarizing", float(p)), abs=1e-9
            )

    def test_phase_flip_decays_slowest(self):
        assert noise.log_negativity("phase_flip", 0.1) >= noise.log_negativity(
            "bit_flip", 0.1
        )

    def test_monotone_decay(self):
        grid = np.arange(0.0, 0.2001, 0.01)
        for kind in noise.KINDS:
            values = [noise.log_negativity(kind, float(p)) for p in grid]
            assert np.all(np.diff(values) <= 1e-9)
