"""Single-mode Fock-space vectors and the standard input-state families.

All generators return the *truncated but un-renormalized* expansion: the
coefficient of |m> is the exact infinite-series coefficient, and whatever
weight lies above the cutoff is simply absent.  That truncation deficit is
physical here -- it feeds straight into success probabilities downstream --
so nothing ever silently renormalizes.

Factorial-like quantities are built from running products of ratios; no
standalone m! is ever evaluated, which keeps everything finite well past
m = 60.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_NORM_TOL = 1e-12
_HERM_TOL = 1e-10


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FockVector:
    """Amplitudes over the photon-number basis |0> .. |cutoff|.

    ``normalized=True`` asserts unit norm (checked to 1e-12); generators leave
    it False because truncated expansions deliberately carry a norm deficit.
    """

    coeffs: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D sequence")
        object.__setattr__(self, "coeffs", _readonly(arr))
        if self.normalized and abs(self.norm_sq() - 1.0) > _NORM_TOL:
            raise ValueError(
                f"state flagged normalized but |psi|^2 = {self.norm_sq()!r}"
            )

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))


@dataclass(frozen=True)
class SchmidtDiagonalState:
    """Two-mode state sum_n c_n |n, n> with real Schmidt coefficients c_n."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coeffs must be a non-empty 1-D sequence")
        if float(np.sum(arr**2)) > 1.0 + _NORM_TOL:
            raise ValueError("Schmidt weights exceed 1")
        object.__setattr__(self, "coeffs", _readonly(arr))

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1


def coherent(alpha: complex, cutoff: int) -> FockVector:
    """Coherent state |alpha>, truncated at ``cutoff`` photons.

    c_m = exp(-|alpha|^2 / 2) alpha^m / sqrt(m!), built by the running
    recurrence c_m = c_{m-1} * alpha / sqrt(m).
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    alpha = complex(alpha)
    out = np.zeros(cutoff + 1, dtype=np.complex128)
    term = complex(math.exp(-abs(alpha) ** 2 / 2.0))
    out[0] = term
    for m in range(1, cutoff + 1):
        term = term * alpha / math.sqrt(m)
        out[m] = term
    return FockVector(out)


def cat(alpha: float, cutoff: int) -> FockVector:
    """Even superposition of |alpha> and |-alpha> (real alpha), truncated.

    Only even photon numbers carry weight:
    c_m = 2 exp(-alpha^2/2) alpha^m / sqrt(m!) / sqrt(2 + 2 exp(-2 alpha^2)).
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    alpha = float(alpha)
    norm = math.sqrt(2.0 + 2.0 * math.exp(-2.0 * alpha**2))
    out = np.zeros(cutoff + 1, dtype=np.complex128)
    term = 2.0 * math.exp(-(alpha**2) / 2.0) / norm
    out[0] = term
    for m in range(1, cutoff + 1):
        term = term * alpha / math.sqrt(m)
        if m % 2 == 0:
            out[m] = term
    return FockVector(out)


def squeezed_vacuum(xi: float, cutoff: int) -> FockVector:
    """Squeezed vacuum with squeezing parameter xi, |xi| < 1, truncated.

    c_{2n} = (1-xi^2)^{1/4} (-1)^n sqrt((2n)!) xi^n / (2^n n!); odd entries
    vanish.  Consecutive even terms obey
    c_{2n} = -c_{2n-2} * xi * sqrt((2n-1)/(2n)).
    """
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    xi = float(xi)
    if abs(xi) >= 1.0:
        raise ValueError("squeezing parameter must satisfy |xi| < 1")
    out = np.zeros(cutoff + 1, dtype=np.complex128)
    term = (1.0 - xi**2) ** 0.25
    out[0] = term
    for n in range(1, cutoff // 2 + 1):
        term = -term * xi * math.sqrt((2 * n - 1) / (2 * n))
        out[2 * n] = term
    return FockVector(out)


def tmsv(lam: float, cutoff: int) -> SchmidtDiagonalState:
    """Two-mode squeezed vacuum Schmidt coefficients c_n = sqrt(1-l^2) l^n."""
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    lam = float(lam)
    if abs(lam) >= 1.0:
        raise ValueError("squeezing parameter must satisfy |lambda| < 1")
    out = np.empty(cutoff + 1, dtype=np.float64)
    term = math.sqrt(1.0 - lam**2)
    for n in range(cutoff + 1):
        out[n] = term
        term *= lam
    return SchmidtDiagonalState(out)


def inner(u: FockVector, v: FockVector) -> complex:
    """<u|v>; the shorter vector is zero-padded."""
    n = min(len(u.coeffs), len(v.coeffs))
    return complex(np.vdot(u.coeffs[:n], v.coeffs[:n]))


def expectation(rho: np.ndarray, psi: FockVector) -> float:
    """<psi|rho|psi> for Hermitian rho over the Fock basis.

    psi is zero-padded or clipped to rho's dimension.  The imaginary part is
    asserted negligible (< 1e-10) and discarded.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise ValueError("rho must be a square matrix")
    if np.max(np.abs(rho - rho.conj().T)) > _HERM_TOL:
        raise ValueError("rho is not Hermitian within 1e-10")
    n = rho.shape[0]
    vec = np.zeros(n, dtype=np.complex128)
    m = min(n, len(psi.coeffs))
    vec[:m] = psi.coeffs[:m]
    val = complex(vec.conj() @ rho @ vec)
    if abs(val.imag) > _HERM_TOL:
        raise ValueError(f"expectation has imaginary part {val.imag!r}")
    return val.real


def default_cutoff(mean_photons: float, n_arms: int) -> int:
    """Truncation level that keeps the Poisson-like tail below ~1e-12.

    max(2 N, ceil(nbar + 8 sqrt(nbar) + 10)); the 2N floor guarantees the
    whole photon window of an N-arm teleporter is represented.
    """
    nbar = max(float(mean_photons), 0.0)
    return max(2 * n_arms, math.ceil(nbar + 8.0 * math.sqrt(nbar) + 10.0))
