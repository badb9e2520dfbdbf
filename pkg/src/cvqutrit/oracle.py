"""Exact brute-force multimode simulator used as ground truth.

States live in a sparse map from occupation tuples (n_1..n_N) to complex
amplitudes.  A linear-optical unitary U acts by rewriting every creation
operator, a_i^dag -> sum_j U_ji b_j^dag, and expanding the resulting
monomials multinomially -- exponential in photon number by construction,
exact up to float rounding, and entirely independent of the closed-form
combinatorics it is used to check.

The full pipeline mirrors the physical scheme: place the input in the first
mode, split, truncate every mode to the per-arm photon window, (optionally
run each arm through a noise channel,) recombine through the inverse
splitter, and post-select vacuum on every output port but the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .fock import FockVector
from .noise import KrausSet

PRUNE = 1e-16

MAX_MODES_IDEAL = 4
MAX_MODES_NOISY = 3
MAX_INPUT_CUTOFF = 8
GUARD_LEVELS = 2

_UNITARY_TOL = 1e-12


@dataclass
class MultimodeState:
    """Sparse pure state over N bosonic modes."""

    amplitudes: dict
    n_modes: int
    cutoff: int  # per-mode photon cap currently in force
    total_cap: int

    def __post_init__(self):
        for key in self.amplitudes:
            if len(key) != self.n_modes:
                raise ValueError(f"occupation tuple {key} has wrong length")
            if sum(key) > self.total_cap:
                raise ValueError(f"occupation tuple {key} exceeds photon cap")
            if max(key) > self.cutoff:
                raise ValueError(f"occupation tuple {key} exceeds mode cutoff")

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())


@dataclass
class MultimodeDensity:
    """Sparse density operator over N bosonic modes, keyed by ket/bra tuples."""

    entries: dict
    n_modes: int
    cutoff: int
    total_cap: int = field(default=10**9)

    def trace(self) -> complex:
        return sum(v for (k, b), v in self.entries.items() if k == b)


def splitter_matrix(n_modes: int) -> np.ndarray:
    """Discrete-Fourier-transform N-splitter, U_jk = exp(2 pi i jk/N)/sqrt(N)."""
    if n_modes < 1:
        raise ValueError("mode count must be >= 1")
    j, k = np.meshgrid(range(n_modes), range(n_modes), indexing="ij")
    return np.exp(2j * np.pi * j * k / n_modes) / np.sqrt(n_modes)


def unitary_from_first_row(row: np.ndarray) -> np.ndarray:
    """Householder completion of a unit row vector to a full unitary.

    The reflection H = 1 - 2 w w^dag / |w|^2, w = conj(row) - e_0, is unitary
    and Hermitian with first column conj(row), hence first row ``row``.  Used
    to confirm that only the post-selected row of the recombiner matters.
    """
    v = np.asarray(row, dtype=np.complex128)
    if abs(np.vdot(v, v) - 1.0) > _UNITARY_TOL:
        raise ValueError("row must be a unit vector")
    w = v.conj()
    w[0] -= 1.0
    nsq = float(np.vdot(w, w).real)
    if nsq < 1e-30:
        return np.eye(len(v), dtype=np.complex128)
    return np.eye(len(v), dtype=np.complex128) - 2.0 * np.outer(w, w.conj()) / nsq


def _compositions(total: int, slots: int):
    """All tuples of `slots` nonnegative integers summing to `total`."""
    if slots == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, slots - 1):
            yield (first,) + rest


def _expand_ket(key: tuple, unitary: np.ndarray) -> dict:
    """Image of the basis ket |key> under the mode rewrite of ``unitary``.

    Tracks coefficients of creation-operator monomials mode by mode, then
    restores the sqrt(m!) ket normalizations at the end.
    """
    n = len(key)
    cur = {(0,) * n: 1.0 + 0.0j}
    for i, occ in enumerate(key):
        if occ == 0:
            continue
        terms = []
        for comp in _compositions(occ, n):
            coeff = complex(math.factorial(occ))
            for j, reps in enumerate(comp):
                if reps:
                    coeff *= unitary[j, i] ** reps / math.factorial(reps)
            terms.append((comp, coeff))
        nxt: dict = {}
        for partial, amp in cur.items():
            for comp, coeff in terms:
                tgt = tuple(partial[j] + comp[j] for j in range(n))
                nxt[tgt] = nxt.get(tgt, 0.0j) + amp * coeff
        cur = nxt
    norm_in = math.sqrt(math.prod(math.factorial(v) for v in key))
    out = {}
    for tgt, amp in cur.items():
        norm_out = math.sqrt(math.prod(math.factorial(v) for v in tgt))
        out[tgt] = amp * norm_out / norm_in
    return out


def apply_splitter(state: MultimodeState, unitary: np.ndarray) -> MultimodeState:
    """Evolve a sparse multimode state through a linear-optical unitary."""
    unitary = np.asarray(unitary, dtype=np.complex128)
    if unitary.shape != (state.n_modes, state.n_modes):
        raise ValueError("unitary size does not match mode count")
    if np.max(np.abs(unitary @ unitary.conj().T - np.eye(state.n_modes))) > _UNITARY_TOL:
        raise ValueError("matrix is not unitary within 1e-12")
    cache: dict = {}
    out: dict = {}
    for key, amp in state.amplitudes.items():
        if key not in cache:
            cache[key] = _expand_ket(key, unitary)
        for tgt, coeff in cache[key].items():
            out[tgt] = out.get(tgt, 0.0j) + amp * coeff
    out = {k: v for k, v in out.items() if abs(v) > PRUNE}
    return MultimodeState(out, state.n_modes, state.total_cap, state.total_cap)


def _truncate(state: MultimodeState, per_mode: int) -> MultimodeState:
    kept = {k: v for k, v in state.amplitudes.items() if max(k) <= per_mode}
    return MultimodeState(kept, state.n_modes, per_mode, state.total_cap)


def _project_tail_vacuum(state: MultimodeState) -> dict:
    """Amplitudes of keys whose modes 2..N are empty, keyed by mode-1 count."""
    out = {}
    for key, amp in state.amplitudes.items():
        if all(v == 0 for v in key[1:]):
            out[key[0]] = amp
    return out


def _initial_state(coeffs: np.ndarray, n_modes: int, total_cap: int) -> MultimodeState:
    amps = {}
    for m, c in enumerate(coeffs):
        if m > total_cap:
            break
        if abs(c) > PRUNE:
            amps[(m,) + (0,) * (n_modes - 1)] = complex(c)
    return MultimodeState(amps, n_modes, total_cap, total_cap)


def simulate_ideal_exact(
    state: FockVector,
    n_arms: int,
    per_arm_cutoff: int = 2,
    unitary: np.ndarray | None = None,
):
    """Brute-force noiseless pipeline; returns (output FockVector, Ps).

    Split -> per-mode truncation to ``per_arm_cutoff`` photons -> inverse
    split -> vacuum post-selection on modes 2..N.  The returned amplitudes
    are unnormalized; Ps is the squared norm of the surviving branch.
    """
    if not 1 <= n_arms <= MAX_MODES_IDEAL:
        raise ValueError(f"arm count must be in [1, {MAX_MODES_IDEAL}]")
    if per_arm_cutoff not in (1, 2):
        raise ValueError("per-arm cutoff must be 1 or 2")
    if state.cutoff > MAX_INPUT_CUTOFF:
        raise ValueError(f"input cutoff must be <= {MAX_INPUT_CUTOFF}")
    total_cap = min(per_arm_cutoff * n_arms, state.cutoff) + GUARD_LEVELS
    if unitary is None:
        unitary = splitter_matrix(n_arms)
    ms = _initial_state(state.coeffs, n_arms, total_cap)
    ms = apply_splitter(ms, unitary)
    ms = _truncate(ms, per_arm_cutoff)
    ms = apply_splitter(ms, unitary.conj().T)
    surviving = _project_tail_vacuum(ms)
    out = np.zeros(per_arm_cutoff * n_arms + 1, dtype=np.complex128)
    for m, amp in surviving.items():
        if m < len(out):
            out[m] = amp
    ps = float(np.sum(np.abs(out) ** 2))
    return FockVector(out), ps


def _density_from_pure(state: MultimodeState) -> MultimodeDensity:
    entries = {}
    for k1, a1 in state.amplitudes.items():
        for k2, a2 in state.amplitudes.items():
            entries[(k1, k2)] = a1 * np.conj(a2)
    return MultimodeDensity(entries, state.n_modes, state.cutoff, state.total_cap)


def _channel_on_mode(rho: MultimodeDensity, kraus: KrausSet, mode: int) -> MultimodeDensity:
    """Apply sum_i K_i . K_i^dag to one mode of a (truncated) density."""
    ops = kraus.operators
    transfer = np.zeros((3, 3, 3, 3), dtype=np.complex128)  # [a, b, n, m]
    for op in ops:
        transfer += np.einsum("an,bm->abnm", op, op.conj())
    out: dict = {}
    for (ket, bra), val in rho.entries.items():
        n_i, m_i = ket[mode], bra[mode]
        for a, b in product(range(3), range(3)):
            w = transfer[a, b, n_i, m_i]
            if w == 0.0:
                continue
            k2 = ket[:mode] + (a,) + ket[mode + 1:]
            b2 = bra[:mode] + (b,) + bra[mode + 1:]
            key = (k2, b2)
            out[key] = out.get(key, 0.0j) + w * val
    out = {k: v for k, v in out.items() if abs(v) > PRUNE}
    return MultimodeDensity(out, rho.n_modes, rho.cutoff, rho.total_cap)


def _splitter_on_density(rho: MultimodeDensity, unitary: np.ndarray) -> MultimodeDensity:
    cache: dict = {}

    def expand(key):
        if key not in cache:
            cache[key] = _expand_ket(key, unitary)
        return cache[key]

    half: dict = {}
    for (ket, bra), val in rho.entries.items():
        for tgt, coeff in expand(ket).items():
            key = (tgt, bra)
            half[key] = half.get(key, 0.0j) + coeff * val
    out: dict = {}
    for (ket, bra), val in half.items():
        for tgt, coeff in expand(bra).items():
            key = (ket, tgt)
            out[key] = out.get(key, 0.0j) + np.conj(coeff) * val
    out = {k: v for k, v in out.items() if abs(v) > PRUNE}
    return MultimodeDensity(out, rho.n_modes, rho.total_cap, rho.total_cap)


def simulate_noisy_exact(
    alpha: complex, n_arms: int, kraus: KrausSet
) -> np.ndarray:
    """Brute-force noisy pipeline for a coherent input.

    Identical to :func:`simulate_ideal_exact` up to the per-arm truncation,
    after which the state is carried as a density operator, each arm passes
    through the noise channel, and the recombined first-mode block is
    returned as an unnormalized (2N+1) x (2N+1) matrix.
    """
    if not 1 <= n_arms <= MAX_MODES_NOISY:
        raise ValueError(f"arm count must be in [1, {MAX_MODES_NOISY}]")
    total_cap = 2 * n_arms + GUARD_LEVELS
    unitary = splitter_matrix(n_arms)
    coeffs = _coherent_coeffs(alpha, total_cap)
    ms = _initial_state(coeffs, n_arms, total_cap)
    ms = apply_splitter(ms, unitary)
    ms = _truncate(ms, 2)
    rho = _density_from_pure(ms)
    for mode in range(n_arms):
        rho = _channel_on_mode(rho, kraus, mode)
    rho = _splitter_on_density(rho, unitary.conj().T)
    size = 2 * n_arms + 1
    out = np.zeros((size, size), dtype=np.complex128)
    for (ket, bra), val in rho.entries.items():
        if all(v == 0 for v in ket[1:]) and all(v == 0 for v in bra[1:]):
            p, q = ket[0], bra[0]
            if p < size and q < size:
                out[p, q] = val
    return out


def _coherent_coeffs(alpha: complex, cutoff: int) -> np.ndarray:
    """Coherent-state amplitudes, written out locally to stay self-contained."""
    alpha = complex(alpha)
    out = np.zeros(cutoff + 1, dtype=np.complex128)
    term = complex(math.exp(-abs(alpha) ** 2 / 2.0))
    out[0] = term
    for m in range(1, cutoff + 1):
        term = term * alpha / math.sqrt(m)
        out[m] = term
    return out
