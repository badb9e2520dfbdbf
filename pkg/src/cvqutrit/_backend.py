"""Kernel backend selection: numba-jitted loops or the pure-numpy fallback.

The hot inner loops (cyclic Jacobi sweeps, repeated two-index convolution)
ship in two functionally identical flavours.  Selection happens once at
import time:

* ``CVQUTRIT_BACKEND=numpy``  -- force the pure-numpy fallback
* ``CVQUTRIT_BACKEND=numba``  -- require numba (ImportError if missing)
* unset                       -- numba when importable, numpy otherwise

Both flavours produce bit-compatible results for the sizes used here; the
test suite asserts parity and ``benchmarks/bench_kernels.py`` compares their
speed.
"""

import os

_env = os.environ.get("CVQUTRIT_BACKEND", "").strip().lower()

if _env not in ("", "numba", "numpy"):
    raise ValueError(
        f"CVQUTRIT_BACKEND must be 'numba' or 'numpy', got {_env!r}"
    )

if _env == "numpy":
    HAVE_NUMBA = False
else:
    try:
        import numba  # noqa: F401
        HAVE_NUMBA = True
    except ImportError:
        if _env == "numba":
            raise
        HAVE_NUMBA = False

BACKEND = "numba" if HAVE_NUMBA else "numpy"


def backend_name() -> str:
    """Active kernel backend, either ``"numba"`` or ``"numpy"``."""
    return BACKEND
