"""Parameter sweeps and their CSV serialization.

Every sweep produces a flat list of records with a fixed schema

    param,N,channel_dim,noise_kind,p_noise,fidelity,success_prob

formatted to 12 significant digits with LF line endings, so output files are
byte-deterministic and trivially plottable.  Grid values are canonicalized to
their 12-significant-digit representation *before* evaluation, which makes
the emitted file a complete, exact description of what was computed: parsing
a row and re-evaluating it reproduces the row.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import fock, ideal, noise, pipeline

STATES = ("coherent", "cat", "squeezed", "tmsv")
MODES = ("ideal", "noisy", "negativity", "verify")

CSV_HEADER = "param,N,channel_dim,noise_kind,p_noise,fidelity,success_prob"

# default grids, overridable from the CLI: (min, max, points)
DEFAULT_AMPLITUDE_GRID = (0.0, 3.0, 61)      # amplitude sweeps, step 0.05
DEFAULT_SQUEEZING_GRID = (0.0, 0.9, 46)      # squeezing sweeps, step 0.02
DEFAULT_NOISY_P_GRID = (0.0, 0.5, 51)        # noise-strength list, step 0.01
DEFAULT_NEGATIVITY_P_GRID = (0.0, 0.2, 41)   # negativity sweep, step 0.005


def canonical(x: float) -> float:
    """Round-trip a float through its 12-significant-digit form."""
    return float(f"{float(x):.12g}")


def fmt(x: float) -> str:
    """12-significant-digit text form used in CSV cells."""
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return f"{x:.12g}"


def grid_points(lo: float, hi: float, steps: int) -> list[float]:
    """`steps` evenly spaced canonicalized points on [lo, hi]."""
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if lo > hi:
        raise ValueError("grid minimum exceeds maximum")
    if steps == 1:
        return [canonical(lo)]
    span = hi - lo
    return [canonical(lo + span * i / (steps - 1)) for i in range(steps)]


@dataclass(frozen=True)
class SweepSpec:
    """Everything needed to reproduce one sweep."""

    mode: str
    state: str = "coherent"
    dims: tuple = (3,)
    n_list: tuple = (3,)
    param_min: float = 0.0
    param_max: float = 0.0
    steps: int = 1
    noise_kind: str | None = None
    p_list: tuple = ()

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.state not in STATES:
            raise ValueError(f"unknown state {self.state!r}")
        for d in self.dims:
            if d not in (2, 3):
                raise ValueError("channel dimension must be 2 or 3")
        for n in self.n_list:
            if not 1 <= int(n) <= ideal.MAX_ARMS:
                raise ValueError(f"arm count {n} out of range")
        if self.param_min > self.param_max:
            raise ValueError("param_min exceeds param_max")
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if self.state in ("squeezed", "tmsv"):
            if max(abs(self.param_min), abs(self.param_max)) >= 1.0:
                raise ValueError(
                    f"{self.state} sweeps need |parameter| < 1"
                )
        if self.noise_kind is not None and self.noise_kind not in noise.KINDS:
            raise ValueError(f"unknown noise kind {self.noise_kind!r}")
        for p in self.p_list:
            if not 0.0 <= p <= 1.0:
                raise ValueError("noise probabilities must lie in [0, 1]")

    def grid(self) -> list[float]:
        return grid_points(self.param_min, self.param_max, self.steps)


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated grid point."""

    param: float
    n_arms: int
    channel_dim: int
    noise_kind: str
    p_noise: float
    fidelity: float
    success_prob: float

    def to_csv(self) -> str:
        return ",".join(
            (
                fmt(self.param),
                str(self.n_arms),
                str(self.channel_dim),
                self.noise_kind,
                fmt(self.p_noise),
                fmt(self.fidelity),
                fmt(self.success_prob),
            )
        )

    @classmethod
    def from_csv(cls, line: str) -> "SweepRecord":
        cells = line.strip().split(",")
        if len(cells) != 7:
            raise ValueError(f"malformed record {line!r}")
        return cls(
            param=float(cells[0]),
            n_arms=int(cells[1]),
            channel_dim=int(cells[2]),
            noise_kind=cells[3],
            p_noise=float(cells[4]),
            fidelity=float(cells[5]),
            success_prob=float(cells[6]),
        )


def _profile(channel_dim: int, n_arms: int) -> ideal.TransferProfile:
    if channel_dim == 3:
        return ideal.transfer_profile_qutrit(n_arms)
    return ideal.transfer_profile_qubit(n_arms)


def ideal_point(state: str, param: float, n_arms: int, channel_dim: int):
    """(fidelity, success probability) of one noiseless grid point."""
    profile = _profile(channel_dim, n_arms)
    if state == "tmsv":
        ps, f = ideal.teleport_tmsv(param, profile)
        return f, ps
    if state == "coherent":
        mean = param**2
        vec = fock.coherent(param, fock.default_cutoff(mean, n_arms))
    elif state == "cat":
        mean = param**2
        vec = fock.cat(param, fock.default_cutoff(mean, n_arms))
    elif state == "squeezed":
        mean = param**2 / (1.0 - param**2)
        vec = fock.squeezed_vacuum(param, fock.default_cutoff(mean, n_arms))
    else:
        raise ValueError(f"unknown state {state!r}")
    _, ps, f = ideal.teleport_pure(vec, profile)
    return f, ps


def noisy_point(param: float, n_arms: int, kind: str, p_noise: float):
    """(fidelity, success probability) of one noisy grid point."""
    ps, f = pipeline.noisy_metrics(param, n_arms, kind, p_noise)
    return f, ps


def evaluate_record(mode: str, state: str, rec: SweepRecord):
    """Recompute (fidelity, success_prob) for a parsed record."""
    if mode == "ideal":
        return ideal_point(state, rec.param, rec.n_arms, rec.channel_dim)
    if mode == "noisy":
        return noisy_point(rec.param, rec.n_arms, rec.noise_kind, rec.p_noise)
    if mode == "negativity":
        return noise.log_negativity(rec.noise_kind, rec.p_noise), 0.0
    raise ValueError(f"mode {mode!r} has no evaluable records")


def run_ideal(spec: SweepSpec) -> list[SweepRecord]:
    """Noiseless sweep over the Cartesian product grid x n_list x dims."""
    if spec.mode != "ideal":
        raise ValueError("spec mode must be 'ideal'")
    records = []
    for dim in sorted(set(spec.dims)):
        for n in sorted(set(spec.n_list)):
            for param in spec.grid():
                f, ps = ideal_point(spec.state, param, n, dim)
                records.append(
                    SweepRecord(param, n, dim, "none", 0.0, f, ps)
                )
    return records


def run_noisy(spec: SweepSpec) -> list[SweepRecord]:
    """Noisy sweep; coherent input only, three-level channels only."""
    if spec.mode != "noisy":
        raise ValueError("spec mode must be 'noisy'")
    if spec.state != "coherent":
        raise ValueError(
            "noisy sweeps support only the coherent input state"
        )
    if any(d != 3 for d in spec.dims):
        raise ValueError("noisy sweeps support only channel dimension 3")
    if spec.noise_kind is None:
        raise ValueError("noisy sweeps need a noise kind")
    p_values = [canonical(p) for p in (spec.p_list or grid_points(*DEFAULT_NOISY_P_GRID))]
    records = []
    for n in sorted(set(spec.n_list)):
        for p in p_values:
            for param in spec.grid():
                f, ps = noisy_point(param, n, spec.noise_kind, p)
                records.append(
                    SweepRecord(param, n, 3, spec.noise_kind, p, f, ps)
                )
    return records


def run_negativity(spec: SweepSpec) -> list[SweepRecord]:
    """Entanglement decay sweep; fidelity column carries the negativity.

    Rows are tagged N=1, dim=3 (the resource is a property of a single
    teleporter channel) with success_prob fixed at 0.
    """
    if spec.mode != "negativity":
        raise ValueError("spec mode must be 'negativity'")
    kinds = (spec.noise_kind,) if spec.noise_kind else noise.KINDS
    p_values = [canonical(p) for p in (spec.p_list or grid_points(*DEFAULT_NEGATIVITY_P_GRID))]
    records = []
    for kind in kinds:
        for p in p_values:
            en = noise.log_negativity(kind, p)
            records.append(SweepRecord(p, 1, 3, kind, p, en, 0.0))
    return records


def to_csv(records) -> str:
    """Serialize records to the fixed-schema CSV text (LF endings)."""
    lines = [CSV_HEADER]
    lines.extend(rec.to_csv() for rec in records)
    return "\n".join(lines) + "\n"


def from_csv(text: str) -> list[SweepRecord]:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError("missing or malformed CSV header")
    return [SweepRecord.from_csv(ln) for ln in lines[1:]]
