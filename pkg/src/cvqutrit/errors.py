"""Exception types shared across the package."""


class NoSuccessfulBranchError(ValueError):
    """Raised when post-selection leaves no surviving amplitude.

    Happens when the input state has no support inside the photon window the
    teleporter array can pass, so the success probability is (numerically)
    zero and the output state is undefined.
    """


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver exhausts its sweep budget."""
