"""Command-line front end.

Sweep modes emit the fixed-schema CSV to stdout or ``--out``; ``verify``
runs the brute-force cross-validation suite and reports PASS/FAIL lines.

Exit codes: 0 success, 1 verification failure, 2 usage error.

An optional config file (plain ``key=value`` lines, ``#`` comments) can
pre-fill any flag; explicit flags win.  Example::

    mode=ideal
    state=cat
    dim=2,3
    n=3,10
"""

from __future__ import annotations

import argparse
import sys

from . import sweeps
from .verify import run_verify

USAGE_ERROR = 2


def _int_list(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _read_config(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line without '=': {raw.rstrip()!r}")
            key, value = line.split("=", 1)
            values[key.strip()] = value.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvqutrit",
        description=(
            "Fidelity and success probability of continuous-variable "
            "teleportation through parallel three-level teleporters."
        ),
    )
    parser.add_argument("--config", help="key=value file pre-filling any flag")
    parser.add_argument(
        "--mode",
        choices=sweeps.MODES,
        help="ideal sweep, noisy sweep, negativity sweep, or self-verification",
    )
    parser.add_argument(
        "--state",
        choices=sweeps.STATES,
        default="coherent",
        help="input state family (ideal mode; noisy mode is coherent-only)",
    )
    parser.add_argument(
        "--dim", type=_int_list, default=(3,),
        help="channel dimensions, comma separated (2 and/or 3)",
    )
    parser.add_argument(
        "--n", type=_int_list, default=(3,),
        help="teleporter arm counts, comma separated",
    )
    parser.add_argument(
        "--noise",
        choices=("bit_flip", "phase_flip", "depolarizing"),
        help="noise model (required for noisy mode; optional for negativity)",
    )
    parser.add_argument(
        "--p", type=_float_list, default=None,
        help="noise probabilities, comma separated",
    )
    parser.add_argument("--param-min", type=float, help="sweep grid start")
    parser.add_argument("--param-max", type=float, help="sweep grid end")
    parser.add_argument("--steps", type=int, help="number of grid points")
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument(
        "--uncorrected-table",
        action="store_true",
        help="verify mode: also print the per-weight table comparing the "
        "corrected and uncorrected closed-form sums against brute force",
    )
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list) -> list:
    """Fold --config values in as parser defaults; flags still win."""
    probe = argparse.ArgumentParser(add_help=False)
    probe.add_argument("--config")
    found, _ = probe.parse_known_args(argv)
    if not found.config:
        return argv
    values = _read_config(found.config)
    defaults = {}
    converters = {
        "dim": _int_list,
        "n": _int_list,
        "p": _float_list,
        "param-min": float,
        "param-max": float,
        "steps": int,
        "uncorrected-table": lambda v: v.lower() in ("1", "true", "yes"),
    }
    for key, value in values.items():
        dest = key.replace("-", "_")
        conv = converters.get(key, str)
        defaults[dest] = conv(value)
    parser.set_defaults(**defaults)
    return argv


def _default_grid(mode: str, state: str):
    if mode == "ideal" and state in ("squeezed", "tmsv"):
        return sweeps.DEFAULT_SQUEEZING_GRID
    return sweeps.DEFAULT_AMPLITUDE_GRID


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
    except (OSError, ValueError) as exc:
        parser.exit(USAGE_ERROR, f"{parser.prog}: config error: {exc}\n")
    args = parser.parse_args(argv)

    if args.mode is None:
        parser.exit(USAGE_ERROR, f"{parser.prog}: --mode is required\n")

    if args.mode == "verify":
        return run_verify(show_uncorrected_table=args.uncorrected_table)

    lo, hi, steps = _default_grid(args.mode, args.state)
    if args.param_min is not None:
        lo = args.param_min
    if args.param_max is not None:
        hi = args.param_max
    if args.steps is not None:
        steps = args.steps

    try:
        spec = sweeps.SweepSpec(
            mode=args.mode,
            state=args.state,
            dims=tuple(args.dim),
            n_list=tuple(args.n),
            param_min=lo,
            param_max=hi,
            steps=steps,
            noise_kind=args.noise,
            p_list=tuple(args.p) if args.p is not None else (),
        )
        if args.mode == "ideal":
            records = sweeps.run_ideal(spec)
        elif args.mode == "noisy":
            records = sweeps.run_noisy(spec)
        else:
            records = sweeps.run_negativity(spec)
    except ValueError as exc:
        parser.exit(USAGE_ERROR, f"{parser.prog}: {exc}\n")

    text = sweeps.to_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
