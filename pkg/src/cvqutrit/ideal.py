"""Noiseless teleportation through N parallel teleporter arms, closed form.

An input Fock component |m> survives the split / per-arm-truncate / recombine
pipeline with a real weight A_m that depends only on m, the arm count N and
the per-arm level count (3 for qutrit channels, 2 for the two-level
baseline).  Everything downstream (output state, success probability,
fidelity) is a termwise multiply by those weights.

The qutrit weight is

    A_m = (m! / N^m) N! sum_k 2^{-k} / (k! (m-2k)! (N-m+k)!),
    k = max(0, m-N) .. floor(m/2),

where the 2^{-k} accounts for the 1/2! amplitude of a doubly occupied arm.
A variant WITHOUT that factor is kept behind ``corrected=False`` purely so
the verification tool can demonstrate, against the exact brute-force
simulator, that the variant is wrong (already at N=1 it gives A_2 = 2 where
a single three-level teleporter plainly just truncates, A_2 = 1).

Weights are evaluated with running products of ratios only -- no standalone
factorials -- so they stay finite and accurate through N = 64, m = 2N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoSuccessfulBranchError
from .fock import FockVector

_TOL = 1e-12

MAX_ARMS = 64


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class TransferProfile:
    """Per-photon-number survival weights of an N-arm teleporter array."""

    n_arms: int
    channel_dim: int
    weights: np.ndarray

    def __post_init__(self):
        if self.channel_dim not in (2, 3):
            raise ValueError("channel_dim must be 2 or 3")
        arr = np.asarray(self.weights, dtype=np.float64)
        expected = 2 * self.n_arms if self.channel_dim == 3 else self.n_arms
        if arr.shape != (expected + 1,):
            raise ValueError(
                f"profile for N={self.n_arms}, dim={self.channel_dim} "
                f"must have {expected + 1} weights, got {arr.shape}"
            )
        if arr[0] != 1.0:
            raise ValueError("zero-photon weight must be exactly 1")
        if abs(arr[1] - 1.0) > _TOL:
            raise ValueError("one-photon weight must be 1 within 1e-12")
        if self.channel_dim == 3 and abs(arr[2] - 1.0) > _TOL:
            raise ValueError("two-photon weight must be 1 within 1e-12")
        if np.any(arr <= 0.0) or np.any(arr > 1.0 + _TOL):
            raise ValueError("weights must lie in (0, 1]")
        object.__setattr__(self, "weights", _readonly(arr))

    @property
    def max_photons(self) -> int:
        return len(self.weights) - 1


def _check_arms(n_arms: int) -> None:
    if not 1 <= n_arms <= MAX_ARMS:
        raise ValueError(f"arm count must be in [1, {MAX_ARMS}], got {n_arms}")


def qutrit_weights(n_arms: int, corrected: bool = True) -> np.ndarray:
    """Raw weight array A_0..A_{2N} for three-level arms.

    ``corrected=False`` drops the 2^{-k} double-occupancy factor; that
    variant violates A_m <= 1 and exists only for comparison.
    """
    _check_arms(n_arms)
    N = n_arms
    out = np.empty(2 * N + 1, dtype=np.float64)
    for m in range(2 * N + 1):
        # leading term k = max(0, m - N), assembled from bounded factors
        if m <= N:
            term = 1.0
            for j in range(m):
                term *= (N - j) / N
        else:
            term = 1.0
            for j in range(N):
                term *= (m - j) / N
            for j in range(m - N):
                term *= (N - j) / (2 * N) if corrected else (N - j) / N
        total = term
        k = max(0, m - N)
        while 2 * (k + 1) <= m:
            ratio = (m - 2 * k) * (m - 2 * k - 1) / ((k + 1) * (N - m + k + 1))
            if corrected:
                ratio /= 2.0
            term *= ratio
            total += term
            k += 1
        out[m] = total
    return out


def transfer_profile_qutrit(n_arms: int) -> TransferProfile:
    """Transfer profile of N parallel three-level teleporters."""
    return TransferProfile(n_arms, 3, qutrit_weights(n_arms))


def transfer_profile_qubit(n_arms: int) -> TransferProfile:
    """Two-level baseline: A_m = N! / ((N-m)! N^m), each arm passes 0 or 1."""
    _check_arms(n_arms)
    N = n_arms
    out = np.empty(N + 1, dtype=np.float64)
    term = 1.0
    out[0] = term
    for m in range(1, N + 1):
        term *= (N - m + 1) / N
        out[m] = term
    return TransferProfile(n_arms, 2, out)


def teleport_pure(state: FockVector, profile: TransferProfile):
    """Teleport a pure state; returns (normalized output, Ps, F).

    Unnormalized output amplitudes are o_m = c_m A_m for m within the photon
    window (zero beyond); Ps = sum |o_m|^2 and F = |<in|out>|^2 against the
    *untruncated-in-window* input.
    """
    mmax = profile.max_photons
    n = min(len(state.coeffs), mmax + 1)
    raw = np.zeros(mmax + 1, dtype=np.complex128)
    raw[:n] = state.coeffs[:n] * profile.weights[:n]
    ps = float(np.sum(np.abs(raw) ** 2))
    if ps <= 0.0:
        raise NoSuccessfulBranchError(
            "input has no support inside the supported photon window"
        )
    overlap = complex(np.vdot(state.coeffs[:n], raw[:n]))
    fidelity = abs(overlap) ** 2 / ps
    out = FockVector(raw / np.sqrt(ps), normalized=True)
    return out, ps, fidelity


def teleport_tmsv(lam: float, profile: TransferProfile):
    """Teleport one mode of a two-mode squeezed vacuum; returns (Ps, F).

    With Schmidt coefficients c_n = sqrt(1-l^2) l^n the untouched mode rides
    along, so Ps = sum c_n^2 A_n^2 and F = (sum c_n^2 A_n)^2 / Ps with both
    sums cut at the photon window.
    """
    lam = float(lam)
    if abs(lam) >= 1.0:
        raise ValueError("squeezing parameter must satisfy |lambda| < 1")
    mmax = profile.max_photons
    c_sq = np.empty(mmax + 1, dtype=np.float64)
    term = 1.0 - lam**2
    for n in range(mmax + 1):
        c_sq[n] = term
        term *= lam**2
    w = profile.weights
    ps = float(np.sum(c_sq * w**2))
    if ps <= 0.0:
        raise NoSuccessfulBranchError("no surviving amplitude")
    fidelity = float(np.sum(c_sq * w)) ** 2 / ps
    return ps, fidelity
