"""Self-verification: closed-form results against the brute-force simulator.

Runs every cross-check the package stands on and prints one PASS/FAIL line
per check with the worst deviation observed.  The weight-arbitration check
demonstrates, against the exact simulator, that the transfer-weight sum
NEEDS the 2^{-k} double-occupancy factor: without it the two-photon weight
of a single three-level teleporter comes out as 2 instead of 1.

Exit status 0 means every check passed.
"""

from __future__ import annotations

import sys

import numpy as np

from . import noise
from .fock import cat, coherent, expectation
from .ideal import (
    qutrit_weights,
    teleport_pure,
    transfer_profile_qubit,
    transfer_profile_qutrit,
)
from .oracle import simulate_ideal_exact, simulate_noisy_exact
from .pipeline import arm_input, arm_output, noisy_metrics, recombine
from .sweeps import grid_points


class _Report:
    def __init__(self, stream):
        self.stream = stream
        self.failures = 0

    def line(self, text: str):
        print(text, file=self.stream)

    def check(self, name: str, ok: bool, detail: str):
        status = "PASS" if ok else "FAIL"
        if not ok:
            self.failures += 1
        print(f"{status}  {name:<38} {detail}", file=self.stream)


def _check_kraus_completeness(rep: _Report):
    worst = 0.0
    eye = np.eye(3)
    for kind in noise.KINDS:
        for p in np.linspace(0.0, 1.0, 21):
            ops = noise.kraus_set(kind, float(p)).operators
            total = sum(op.conj().T @ op for op in ops)
            worst = max(worst, float(np.max(np.abs(total - eye))))
    rep.check("kraus completeness", worst <= 1e-12, f"max dev {worst:.2e}")


def _check_weight_boundary(rep: _Report):
    worst = 0.0
    ok = True
    for n in range(1, 21):
        prof = transfer_profile_qutrit(n)
        if prof.max_photons != 2 * n:
            ok = False
        worst = max(worst, float(np.max(np.abs(prof.weights[:3] - 1.0))))
    rep.check(
        "low-photon weights (N=1..20)",
        ok and worst <= 1e-12,
        f"max |A_0..A_2 - 1| = {worst:.2e}",
    )


def _check_weight_monotonicity(rep: _Report):
    worst = 0.0
    short = 1.0
    for m in range(2, 9):
        prev = None
        for n in range(max(1, (m + 1) // 2), 41):
            a_m = qutrit_weights(n)[m]
            if prev is not None and a_m < prev - 1e-12:
                worst = max(worst, prev - a_m)
            prev = a_m
        short = min(short, prev)
    rep.check(
        "weight growth toward 1 (m<=8, N<=40)",
        worst == 0.0 and short > 0.9,
        f"max drop {worst:.2e}; A_8(40) = {short:.4f}",
    )


def _oracle_weights(n_arms: int, alpha: float = 1.0) -> np.ndarray:
    """Transfer weights extracted from the brute-force simulator."""
    src = coherent(alpha, 8)
    out, _ = simulate_ideal_exact(src, n_arms, per_arm_cutoff=2)
    return (out.coeffs / src.coeffs[: len(out.coeffs)]).real


def _check_weight_arbitration(rep: _Report, show_table: bool):
    corrected_worst = 0.0
    rows = []
    for n in (1, 2, 3):
        reference = _oracle_weights(n)
        good = qutrit_weights(n, corrected=True)
        bad = qutrit_weights(n, corrected=False)
        corrected_worst = max(corrected_worst, float(np.max(np.abs(good - reference))))
        for m in range(2 * n + 1):
            rows.append((n, m, reference[m], good[m], bad[m]))
    ref1 = _oracle_weights(1)
    bad1 = qutrit_weights(1, corrected=False)
    dev_at_12 = abs(bad1[2] - ref1[2])
    ratio_at_12 = bad1[2] / ref1[2]
    rep.check(
        "weight-sum arbitration",
        corrected_worst <= 1e-10 and dev_at_12 > 0.5,
        f"corrected max dev {corrected_worst:.2e}; uncorrected dev "
        f"{dev_at_12:.3f} at (N=1, m=2), ratio {ratio_at_12:.2f}",
    )
    if show_table:
        rep.line("    N  m   brute-force   with 2^-k     without 2^-k")
        for n, m, ref, good, bad in rows:
            rep.line(
                f"    {n}  {m}   {ref:<12.9f}  {good:<12.9f}  {bad:<12.9f}"
            )


def _check_ideal_equivalence(rep: _Report):
    worst = 0.0
    cases = [("coherent", a) for a in (0.5, 1.0, 1.5)] + [("cat", 1.0)]
    for n in (1, 2, 3):
        weights = qutrit_weights(n)
        for family, amp in cases:
            src = coherent(amp, 8) if family == "coherent" else cat(amp, 8)
            expect = src.coeffs[: 2 * n + 1] * weights
            got, _ = simulate_ideal_exact(src, n, per_arm_cutoff=2)
            worst = max(worst, float(np.max(np.abs(got.coeffs - expect))))
    rep.check(
        "ideal brute-force equivalence", worst <= 1e-10, f"max dev {worst:.2e}"
    )


def _check_noisy_equivalence(rep: _Report):
    worst = 0.0
    for n in (1, 2):
        for kind in noise.KINDS:
            for p in (0.05, 0.2):
                kraus = noise.kraus_set(kind, p)
                for alpha in (0.5, 1.0):
                    out = recombine(arm_output(arm_input(alpha, n), kraus), n)
                    ref = simulate_noisy_exact(alpha, n, kraus)
                    worst = max(worst, float(np.max(np.abs(out.matrix - ref))))
                    ps_ref = complex(np.trace(ref)).real
                    target = coherent(alpha, 2 * n)
                    f_ref = expectation((ref + ref.conj().T) / 2, target) / ps_ref
                    f_out = expectation(out.matrix, target) / out.success_prob
                    worst = max(worst, abs(out.success_prob - ps_ref), abs(f_out - f_ref))
    rep.check(
        "noisy brute-force equivalence", worst <= 1e-10, f"max dev {worst:.2e}"
    )


def _check_noiseless_limit(rep: _Report):
    worst = 0.0
    for n in (1, 2, 3, 5):
        profile = transfer_profile_qutrit(n)
        for alpha in np.arange(0.25, 2.01, 0.25):
            alpha = float(alpha)
            _, ps_ref, f_ref = teleport_pure(coherent(alpha, 4 * n + 20), profile)
            for kind in noise.KINDS:
                ps, f = noisy_metrics(alpha, n, kind, 0.0)
                worst = max(worst, abs(ps - ps_ref), abs(f - f_ref))
    rep.check(
        "noiseless-limit consistency", worst <= 1e-12, f"max dev {worst:.2e}"
    )


def _check_negativity(rep: _Report):
    ps = grid_points(0.0, 0.2, 41)
    curves = {
        kind: np.array([noise.log_negativity(kind, p) for p in ps])
        for kind in noise.KINDS
    }
    dev0 = max(abs(curves[k][0] - np.log2(3.0)) for k in noise.KINDS)
    pair_dev = float(np.max(np.abs(curves["bit_flip"] - curves["depolarizing"])))
    phase_margin = float(
        np.min(
            np.minimum(
                curves["phase_flip"] - curves["bit_flip"],
                curves["phase_flip"] - curves["depolarizing"],
            )
        )
    )
    increase = max(float(np.max(np.diff(curves[k]))) for k in noise.KINDS)
    ok = (
        dev0 <= 1e-9
        and pair_dev <= 1e-9
        and phase_margin >= -1e-9
        and increase <= 1e-9
    )
    rep.check(
        "entanglement decay",
        ok,
        f"E(0) dev {dev0:.2e}; |bit-depol| {pair_dev:.2e}; "
        f"phase margin {phase_margin:.2e}; max rise {increase:.2e}",
    )


def _check_channel_ordering(rep: _Report):
    prof3 = transfer_profile_qutrit(3)
    prof2 = transfer_profile_qubit(10)
    worst_f = worst_ps = np.inf
    for alpha in grid_points(0.05, 1.5, 30):
        _, ps3, f3 = teleport_pure(coherent(alpha, 40), prof3)
        _, ps2, f2 = teleport_pure(coherent(alpha, 40), prof2)
        worst_f = min(worst_f, f3 - f2)
        worst_ps = min(worst_ps, ps3 - ps2)
    rep.check(
        "3-level N=3 beats 2-level N=10",
        worst_f >= -1e-9 and worst_ps >= -1e-9,
        f"min fidelity margin {worst_f:.2e}; min success margin {worst_ps:.2e}",
    )


def _check_bitflip_peak(rep: _Report):
    f = {a: noisy_metrics(a, 3, "bit_flip", 0.3)[1] for a in (0.2, 1.2, 2.5)}
    ok = f[1.2] > f[0.2] and f[1.2] > f[2.5]
    rep.check(
        "bit-flip fidelity peak (N=3, p=0.3)",
        ok,
        f"F(0.2)={f[0.2]:.4f}  F(1.2)={f[1.2]:.4f}  F(2.5)={f[2.5]:.4f}",
    )


def _check_phaseflip_dominance(rep: _Report):
    margin = np.inf
    for alpha in (0.2, 0.5, 1.0):
        for p in grid_points(0.0, 0.5, 11):
            f_phase = noisy_metrics(alpha, 3, "phase_flip", p)[1]
            f_other = max(
                noisy_metrics(alpha, 3, "bit_flip", p)[1],
                noisy_metrics(alpha, 3, "depolarizing", p)[1],
            )
            margin = min(margin, f_phase - f_other)
    exact = True
    for p in grid_points(0.0, 0.5, 11):
        ps, f = noisy_metrics(0.0, 3, "phase_flip", p)
        exact = exact and ps == 1.0 and f == 1.0
    rep.check(
        "phase-flip least destructive",
        margin >= -1e-9 and exact,
        f"min margin {margin:.2e}; vacuum fixed point exact: {exact}",
    )


def _check_physicality(rep: _Report):
    worst_eig = 0.0
    worst_range = 0.0
    for kind in noise.KINDS:
        kraus = noise.kraus_set(kind, 0.3)
        for alpha in (0.2, 0.8, 1.6, 2.4):
            out = recombine(arm_output(arm_input(alpha, 3), kraus), 3)
            eigs = noise.hermitian_eigenvalues(out.matrix / out.success_prob)
            worst_eig = min(worst_eig, float(eigs[0]))
            target = coherent(alpha, 6)
            f = expectation(out.matrix, target) / out.success_prob
            worst_range = max(
                worst_range, f - 1.0, -f, out.success_prob - 1.0, -out.success_prob
            )
    rep.check(
        "output-state physicality",
        worst_eig >= -1e-9 and worst_range <= 1e-9,
        f"min eigenvalue {worst_eig:.2e}; range excess {worst_range:.2e}",
    )


def run_verify(show_uncorrected_table: bool = False, stream=None) -> int:
    """Run all checks; print the report; return 0 iff everything passed."""
    rep = _Report(stream if stream is not None else sys.stdout)
    rep.line("cvqutrit verification: closed form vs brute force")
    rep.line("=" * 50)
    checks = [
        ("kraus completeness", _check_kraus_completeness),
        ("low-photon weights", _check_weight_boundary),
        ("weight growth toward 1", _check_weight_monotonicity),
        (
            "weight-sum arbitration",
            lambda r: _check_weight_arbitration(r, show_uncorrected_table),
        ),
        ("ideal brute-force equivalence", _check_ideal_equivalence),
        ("noisy brute-force equivalence", _check_noisy_equivalence),
        ("noiseless-limit consistency", _check_noiseless_limit),
        ("entanglement decay", _check_negativity),
        ("3-level N=3 beats 2-level N=10", _check_channel_ordering),
        ("bit-flip fidelity peak", _check_bitflip_peak),
        ("phase-flip least destructive", _check_phaseflip_dominance),
        ("output-state physicality", _check_physicality),
    ]
    for label, fn in checks:
        try:
            fn(rep)
        except Exception as exc:  # a crashed check is a failed check
            rep.check(label, False, f"raised {exc!r}")
    rep.line("=" * 50)
    if rep.failures:
        rep.line(f"{rep.failures} check(s) FAILED")
        return 1
    rep.line("all checks passed")
    return 0
