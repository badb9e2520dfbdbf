"""Qutrit noise channels, the noisy entanglement resource, and its negativity.

Three channel families act on a single three-level system:

* ``bit_flip``     -- cyclic level permutations with probability p (split
                      evenly between the two cyclic directions),
* ``phase_flip``   -- sign flips on |1> or |2> with probability p/2 each,
* ``depolarizing`` -- the eight non-identity shift/clock unitaries with
                      probability p/8 each.

Each is represented by its Kraus operators K_i with sum_i K_i^dag K_i = 1.
Applying the receiver-side channel to the maximally entangled pair
(|00> + |11> + |22>)/sqrt(3) gives the effective shared resource whose
logarithmic negativity quantifies the surviving entanglement.

Eigenvalues come from a cyclic-Jacobi solver on the 2n x 2n real embedding of
the Hermitian matrix -- small dense problems, no external solver needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._kernels import jacobi_diag
from .errors import ConvergenceError

_COMPLETENESS_TOL = 1e-12
_HERM_TOL = 1e-10
_TRACE_FIX_TOL = 1e-12

KINDS = ("bit_flip", "phase_flip", "depolarizing")

MAX_EIG_DIM = 64
JACOBI_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100

_ID3 = np.eye(3, dtype=np.complex128)
# cyclic raising permutation: |0>->|1>, |1>->|2>, |2>->|0>
_CYCLE_UP = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=np.complex128)
# cyclic lowering permutation: |0>->|2>, |1>->|0>, |2>->|1>
_CYCLE_DOWN = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]], dtype=np.complex128)
_SIGN_1 = np.diag([1.0, -1.0, 1.0]).astype(np.complex128)
_SIGN_2 = np.diag([1.0, 1.0, -1.0]).astype(np.complex128)
_OMEGA = np.exp(2j * np.pi / 3.0)
_SHIFT = _CYCLE_DOWN  # lowering shift, the standard qutrit shift matrix
_CLOCK = np.diag([1.0, _OMEGA, _OMEGA**2]).astype(np.complex128)


@dataclass(frozen=True)
class KrausSet:
    """A named single-qutrit noise model and its Kraus operators."""

    kind: str
    p_noise: float
    operators: np.ndarray  # (k, 3, 3) complex

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown noise kind {self.kind!r}")
        ops = np.asarray(self.operators, dtype=np.complex128)
        expected = 9 if self.kind == "depolarizing" else 3
        if ops.shape != (expected, 3, 3):
            raise ValueError(
                f"{self.kind} needs {expected} operators, got {ops.shape}"
            )
        total = np.zeros((3, 3), dtype=np.complex128)
        for op in ops:
            total += op.conj().T @ op
        if np.max(np.abs(total - _ID3)) > _COMPLETENESS_TOL:
            raise ValueError("Kraus completeness sum deviates from identity")
        ops = np.array(ops, copy=True)
        ops.flags.writeable = False
        object.__setattr__(self, "operators", ops)


@dataclass(frozen=True)
class ResourceState:
    """Two-qutrit shared state, 9x9 density matrix over |ij> (row-major)."""

    rho: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=np.complex128)
        if rho.shape != (9, 9):
            raise ValueError("resource state must be 9x9")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-12:
            raise ValueError("resource state must be Hermitian within 1e-12")
        if abs(complex(np.trace(rho)) - 1.0) > 1e-12:
            raise ValueError("resource state must have unit trace")
        if min(hermitian_eigenvalues(rho)) < -1e-10:
            raise ValueError("resource state has a negative eigenvalue")
        rho = np.array(rho, copy=True)
        rho.flags.writeable = False
        object.__setattr__(self, "rho", rho)


def kraus_set(kind: str, p_noise: float) -> KrausSet:
    """Build the Kraus operators of the requested channel at strength p."""
    p = float(p_noise)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise probability must lie in [0, 1], got {p}")
    if kind == "bit_flip":
        ops = [
            np.sqrt(1.0 - p) * _ID3,
            np.sqrt(p / 2.0) * _CYCLE_UP,
            np.sqrt(p / 2.0) * _CYCLE_DOWN,
        ]
    elif kind == "phase_flip":
        ops = [
            np.sqrt(1.0 - p) * _ID3,
            np.sqrt(p / 2.0) * _SIGN_1,
            np.sqrt(p / 2.0) * _SIGN_2,
        ]
    elif kind == "depolarizing":
        s, c = _SHIFT, _CLOCK
        units = [s, c, s @ s, s @ c, s @ s @ c, s @ c @ c, s @ s @ c @ c, c @ c]
        ops = [np.sqrt(1.0 - p) * _ID3] + [np.sqrt(p / 8.0) * u for u in units]
    else:
        raise ValueError(f"unknown noise kind {kind!r}")
    return KrausSet(kind, p, np.array(ops))


def apply_channel(rho: np.ndarray, kraus: KrausSet) -> np.ndarray:
    """sum_i K_i rho K_i^dag, for any 3x3 input (normalization-agnostic).

    The map preserves the trace identically in exact arithmetic; when
    round-off drifts it by an ulp or two the output is rescaled back, so
    fixed points like the vacuum stay fixed points bit-for-bit.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (3, 3):
        raise ValueError("channel input must be a 3x3 matrix")
    out = np.zeros((3, 3), dtype=np.complex128)
    for op in kraus.operators:
        out += op @ rho @ op.conj().T
    tr_in = complex(np.trace(rho))
    tr_out = complex(np.trace(out))
    if tr_out != tr_in and tr_out != 0.0:
        if abs(tr_in / tr_out - 1.0) < _TRACE_FIX_TOL:
            # multiply then divide: (x * tr_in) / tr_out is exact when the
            # output has a single diagonal entry, unlike x * (tr_in / tr_out)
            out *= tr_in
            out /= tr_out
    return out


def effective_resource(kind: str, p_noise: float) -> ResourceState:
    """Maximally entangled qutrit pair after receiver-side noise.

    rho = sum_i (1 x K_i) |Phi><Phi| (1 x K_i)^dag with
    |Phi> = (|00> + |11> + |22>)/sqrt(3).
    """
    kraus = kraus_set(kind, p_noise)
    phi = np.zeros(9, dtype=np.complex128)
    phi[0] = phi[4] = phi[8] = 1.0 / np.sqrt(3.0)
    rho = np.zeros((9, 9), dtype=np.complex128)
    for op in kraus.operators:
        branch = np.kron(_ID3, op) @ phi
        rho += np.outer(branch, branch.conj())
    return ResourceState(rho)


def partial_transpose(rho: np.ndarray, dims=(3, 3)) -> np.ndarray:
    """Transpose the first tensor factor of a bipartite matrix."""
    da, db = dims
    rho = np.asarray(rho)
    if rho.shape != (da * db, da * db):
        raise ValueError(f"matrix incompatible with dims {dims}")
    blocks = rho.reshape(da, db, da, db)
    return np.ascontiguousarray(blocks.transpose(2, 1, 0, 3)).reshape(
        da * db, da * db
    )


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, ascending.

    Runs cyclic Jacobi sweeps on the 2n x 2n real symmetric embedding
    [[Re H, -Im H], [Im H, Re H]], whose spectrum is that of H doubled, then
    collapses the pairs.  Accurate to ~1e-13 for the unit-scale matrices used
    here; capped at n = 64.
    """
    mat = np.asarray(matrix, dtype=np.complex128)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    n = mat.shape[0]
    if n > MAX_EIG_DIM:
        raise ValueError(f"matrix dimension {n} exceeds {MAX_EIG_DIM}")
    if np.max(np.abs(mat - mat.conj().T)) > _HERM_TOL:
        raise ValueError("matrix is not Hermitian within 1e-10")
    herm = (mat + mat.conj().T) / 2.0  # exactly Hermitian embedding input
    re, im = herm.real.copy(), herm.imag.copy()
    embed = np.empty((2 * n, 2 * n), dtype=np.float64)
    embed[:n, :n] = re
    embed[:n, n:] = -im
    embed[n:, :n] = im
    embed[n:, n:] = re
    sweeps = jacobi_diag(embed, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ConvergenceError(
            f"Jacobi sweeps did not converge within {JACOBI_MAX_SWEEPS}"
        )
    doubled = np.sort(np.diag(embed))
    return (doubled[0::2] + doubled[1::2]) / 2.0


def log_negativity(kind: str, p_noise: float) -> float:
    """log2 trace norm of the partially transposed noisy resource state."""
    rho = effective_resource(kind, p_noise).rho
    eigs = hermitian_eigenvalues(partial_transpose(rho))
    return float(np.log2(np.sum(np.abs(eigs))))
