"""Hot numeric kernels, in numba and pure-numpy flavours.

``conv_power``  -- N-fold two-index convolution of a small complex block,
                   the inner loop of the multi-arm output-state assembly.
``jacobi_diag`` -- cyclic Jacobi sweeps on a real symmetric matrix, the
                   inner loop of the Hermitian eigensolver.

The two flavours perform the same floating-point operations in the same
order, so they agree bit for bit; the test suite asserts that, and
``benchmarks/bench_kernels.py`` compares their speed.  The module-level
names ``conv_power`` / ``jacobi_diag`` point at the flavour chosen by
:mod:`cvqutrit._backend`.
"""

import numpy as np

from ._backend import HAVE_NUMBA


def conv_power_numpy(block: np.ndarray, reps: int, size: int) -> np.ndarray:
    """``reps``-fold 2-D convolution power of ``block`` on a (size, size) grid.

    Entry (p, q) of the result is the sum over all ways of writing p and q as
    sums of ``reps`` row/column index pairs of ``block``, of the product of
    the corresponding block entries.  Indices that would overflow the grid
    are dropped (callers never need them).
    """
    acc = np.zeros((size, size), dtype=np.complex128)
    acc[0, 0] = 1.0
    d0, d1 = block.shape
    for _ in range(reps):
        new = np.zeros_like(acc)
        for n in range(min(d0, size)):
            for m in range(min(d1, size)):
                b = block[n, m]
                if b != 0.0:
                    new[n:, m:] += b * acc[: size - n, : size - m]
        acc = new
    return acc


def jacobi_diag_numpy(mat: np.ndarray, tol: float, max_sweeps: int) -> int:
    """Cyclic Jacobi diagonalization of a real symmetric matrix, in place.

    Sweeps rotate every super-diagonal pair; convergence is declared when the
    Frobenius norm of the off-diagonal part drops below ``tol``.  Returns the
    number of sweeps used, or -1 if ``max_sweeps`` did not suffice.
    """
    n = mat.shape[0]
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for i in range(n - 1):
            for j in range(i + 1, n):
                off += 2.0 * mat[i, j] * mat[i, j]
        if np.sqrt(off) < tol:
            return sweep
        if sweep == max_sweeps:
            return -1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = mat[p, q]
                if apq == 0.0:
                    continue
                tau = (mat[q, q] - mat[p, p]) / (2.0 * apq)
                if tau > 1e150 or tau < -1e150:  # tau*tau would overflow
                    t = 1.0 / (2.0 * tau)
                elif tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                colp = mat[:, p].copy()
                colq = mat[:, q].copy()
                mat[:, p] = c * colp - s * colq
                mat[:, q] = s * colp + c * colq
                rowp = mat[p, :].copy()
                rowq = mat[q, :].copy()
                mat[p, :] = c * rowp - s * rowq
                mat[q, :] = s * rowp + c * rowq
                mat[p, q] = 0.0
                mat[q, p] = 0.0
    return -1


if HAVE_NUMBA:
    from numba import njit

    @njit(cache=True)
    def conv_power_numba(block, reps, size):  # pragma: no cover - numba twin
        acc = np.zeros((size, size), dtype=np.complex128)
        acc[0, 0] = 1.0
        d0, d1 = block.shape
        for _ in range(reps):
            new = np.zeros((size, size), dtype=np.complex128)
            # same (n, m)-major accumulation order as the numpy flavour,
            # keeping the two backends bit-identical
            for n in range(min(d0, size)):
                for m in range(min(d1, size)):
                    b = block[n, m]
                    if b != 0.0:
                        for p in range(size - n):
                            for q in range(size - m):
                                new[p + n, q + m] += b * acc[p, q]
            acc = new
        return acc

    @njit(cache=True)
    def jacobi_diag_numba(mat, tol, max_sweeps):  # pragma: no cover - numba twin
        n = mat.shape[0]
        for sweep in range(max_sweeps + 1):
            off = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    off += 2.0 * mat[i, j] * mat[i, j]
            if np.sqrt(off) < tol:
                return sweep
            if sweep == max_sweeps:
                return -1
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = mat[p, q]
                    if apq == 0.0:
                        continue
                    tau = (mat[q, q] - mat[p, p]) / (2.0 * apq)
                    if tau > 1e150 or tau < -1e150:  # tau*tau would overflow
                        t = 1.0 / (2.0 * tau)
                    elif tau >= 0.0:
                        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                    else:
                        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                    c = 1.0 / np.sqrt(1.0 + t * t)
                    s = t * c
                    for i in range(n):
                        sip = mat[i, p]
                        siq = mat[i, q]
                        mat[i, p] = c * sip - s * siq
                        mat[i, q] = s * sip + c * siq
                    for i in range(n):
                        spi = mat[p, i]
                        sqi = mat[q, i]
                        mat[p, i] = c * spi - s * sqi
                        mat[q, i] = s * spi + c * sqi
                    mat[p, q] = 0.0
                    mat[q, p] = 0.0
        return -1

    conv_power = conv_power_numba
    jacobi_diag = jacobi_diag_numba
else:
    conv_power = conv_power_numpy
    jacobi_diag = jacobi_diag_numpy
