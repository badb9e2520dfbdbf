"""End-to-end noisy teleportation of a coherent input.

A coherent state splits into N identical attenuated copies, one per arm.
Each arm truncates its copy to three levels and runs it through the noise
channel; recombination with vacuum post-selection on all but one output port
then produces an unnormalized (2N+1) x (2N+1) output density matrix whose
trace is the success probability.

Because the arms are identical and independent, the recombined matrix is an
N-fold two-index convolution power of the single-arm matrix (after pulling
out per-photon scale factors), which costs O(N^3) instead of enumerating the
exponentially many per-arm photon assignments.  The brute-force enumeration
lives in :mod:`cvqutrit.oracle` and the test suite holds the two routes to
each other at 1e-10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import conv_power
from .errors import NoSuccessfulBranchError
from .fock import coherent, expectation
from .noise import KrausSet, apply_channel, hermitian_eigenvalues, kraus_set

_MIN_PS = 1e-300

_SQRT_FACT3 = np.array([1.0, 1.0, math.sqrt(2.0)])


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class ArmState:
    """Unnormalized 3x3 state of one teleporter arm."""

    rho: np.ndarray
    alpha_per_arm: complex
    n_arms: int

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=np.complex128)
        if rho.shape != (3, 3):
            raise ValueError("arm state must be 3x3")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError("arm state must be Hermitian within 1e-12")
        tr = complex(np.trace(rho)).real
        if tr <= 0.0:
            raise NoSuccessfulBranchError(
                "arm state carries no amplitude (input outside the photon window)"
            )
        if tr > 1.0 + 1e-12:
            raise ValueError(f"arm trace must lie in (0, 1], got {tr}")
        if min(hermitian_eigenvalues(rho)) < -1e-10:
            raise ValueError("arm state has a negative eigenvalue")
        object.__setattr__(self, "rho", _readonly(rho))


@dataclass(frozen=True)
class OutputDensity:
    """Unnormalized recombined output-port state and its derived weight."""

    matrix: np.ndarray
    success_prob: float
    n_arms: int

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=np.complex128)
        size = 2 * self.n_arms + 1
        if mat.shape != (size, size):
            raise ValueError(f"output matrix must be {size}x{size}")
        if np.max(np.abs(mat - mat.conj().T)) > 1e-10:
            raise ValueError("output matrix must be Hermitian within 1e-10")
        if not self.success_prob > 0.0:
            raise NoSuccessfulBranchError("zero success probability")
        if min(hermitian_eigenvalues(mat / self.success_prob)) < -1e-9:
            raise ValueError("normalized output has a negative eigenvalue")
        object.__setattr__(self, "matrix", _readonly(mat))


def arm_input(alpha: complex, n_arms: int) -> ArmState:
    """Three-level truncation of the attenuated coherent share of one arm.

    t_n = exp(-|alpha|^2/(2N)) (alpha/sqrt(N))^n / sqrt(n!), n = 0..2; the
    arm state is the (unnormalized) projector onto t.
    """
    if n_arms < 1:
        raise ValueError("arm count must be >= 1")
    alpha = complex(alpha)
    a = alpha / math.sqrt(n_arms)
    scale = math.exp(-abs(alpha) ** 2 / (2.0 * n_arms))
    t = scale * np.array([1.0, a, a * a / math.sqrt(2.0)], dtype=np.complex128)
    return ArmState(np.outer(t, t.conj()), a, n_arms)


def arm_output(arm: ArmState, kraus: KrausSet) -> ArmState:
    """Arm state after the noise channel; trace is preserved."""
    return ArmState(apply_channel(arm.rho, kraus), arm.alpha_per_arm, arm.n_arms)


def recombine(arm: ArmState, n_arms: int) -> OutputDensity:
    """Recombine N identical arms into the post-selected output port.

    D_pq = sqrt(p! q!) / sqrt(N^{p+q}) * sum over per-arm photon assignments
    (n_i, m_i <= 2 summing to p resp. q) of prod_i rho_{n_i m_i}/sqrt(n_i! m_i!),
    evaluated as sqrt(p! q!) times the N-fold convolution power of
    B_nm = rho_nm / (sqrt(n! m!) N^{(n+m)/2}).
    """
    if n_arms != arm.n_arms:
        raise ValueError("arm count mismatch between arm state and request")
    N = n_arms
    scale = np.array([1.0, math.sqrt(N), N])  # N^{n/2}
    block = arm.rho / np.outer(_SQRT_FACT3 * scale, _SQRT_FACT3 * scale)
    size = 2 * N + 1
    conv = conv_power(np.ascontiguousarray(block), N, size)
    sqrt_fact = np.empty(size, dtype=np.float64)
    sqrt_fact[0] = 1.0
    for k in range(1, size):
        sqrt_fact[k] = sqrt_fact[k - 1] * math.sqrt(k)
    mat = conv * np.outer(sqrt_fact, sqrt_fact)
    ps = complex(np.trace(mat)).real
    if not ps > _MIN_PS:
        raise NoSuccessfulBranchError("vanishing success probability")
    return OutputDensity(mat, ps, N)


def noisy_metrics(alpha: complex, n_arms: int, kind: str, p_noise: float):
    """(Ps, F) of the full noisy pipeline for a coherent input.

    Fidelity is measured against the original coherent state, using its
    coefficients over the 0..2N photon window of the output port.
    """
    return noisy_metrics_with(alpha, n_arms, kraus_set(kind, p_noise))


def noisy_metrics_with(alpha: complex, n_arms: int, kraus: KrausSet):
    """(Ps, F) of the noisy pipeline, with a prebuilt Kraus set."""
    out = recombine(arm_output(arm_input(alpha, n_arms), kraus), n_arms)
    target = coherent(alpha, 2 * n_arms)
    fidelity = expectation(out.matrix, target) / out.success_prob
    return out.success_prob, fidelity
