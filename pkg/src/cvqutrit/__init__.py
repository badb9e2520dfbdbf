"""Continuous-variable teleportation through parallel qutrit teleporters.

Closed-form fidelity and success probability for ideal and noisy
interferometric teleportation, three single-qutrit noise channels with their
entanglement decay, and an exact brute-force multimode simulator that
cross-validates every closed-form result.
"""

from ._backend import backend_name
from .errors import ConvergenceError, NoSuccessfulBranchError
from .fock import (
    FockVector,
    SchmidtDiagonalState,
    cat,
    coherent,
    default_cutoff,
    expectation,
    inner,
    squeezed_vacuum,
    tmsv,
)
from .ideal import (
    TransferProfile,
    teleport_pure,
    teleport_tmsv,
    transfer_profile_qubit,
    transfer_profile_qutrit,
)
from .noise import (
    KrausSet,
    ResourceState,
    apply_channel,
    effective_resource,
    hermitian_eigenvalues,
    kraus_set,
    log_negativity,
    partial_transpose,
)
from .oracle import (
    MultimodeDensity,
    MultimodeState,
    apply_splitter,
    simulate_ideal_exact,
    simulate_noisy_exact,
    splitter_matrix,
    unitary_from_first_row,
)
from .pipeline import (
    ArmState,
    OutputDensity,
    arm_input,
    arm_output,
    noisy_metrics,
    recombine,
)
from .sweeps import SweepRecord, SweepSpec, run_ideal, run_negativity, run_noisy
from .verify import run_verify

__version__ = "0.1.0"

__all__ = [
    "ArmState",
    "ConvergenceError",
    "FockVector",
    "KrausSet",
    "MultimodeDensity",
    "MultimodeState",
    "NoSuccessfulBranchError",
    "OutputDensity",
    "ResourceState",
    "SchmidtDiagonalState",
    "SweepRecord",
    "SweepSpec",
    "TransferProfile",
    "apply_channel",
    "apply_splitter",
    "arm_input",
    "arm_output",
    "backend_name",
    "cat",
    "coherent",
    "default_cutoff",
    "effective_resource",
    "expectation",
    "hermitian_eigenvalues",
    "inner",
    "kraus_set",
    "log_negativity",
    "noisy_metrics",
    "partial_transpose",
    "recombine",
    "run_ideal",
    "run_negativity",
    "run_noisy",
    "run_verify",
    "simulate_ideal_exact",
    "simulate_noisy_exact",
    "splitter_matrix",
    "squeezed_vacuum",
    "teleport_pure",
    "teleport_tmsv",
    "tmsv",
    "transfer_profile_qubit",
    "transfer_profile_qutrit",
    "unitary_from_first_row",
]
