"""Tridiagonal operators: storage, matvec, and the Thomas solver.

The matvec and solver below are deliberately plain Python loops.  They sit on
the per-step hot path of the integrators, and the complexity benchmark checks
that one integration step costs O(M) wall time; loop kernels keep the cost
proportional to the system size even for the small M used there, where
vectorised calls would be dominated by fixed dispatch overhead.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["TridiagonalOperator", "SingularSystemError", "tridiag_matvec", "thomas_solve"]


class SingularSystemError(ValueError):
    """Zero pivot met during elimination; the system has no unique solution."""


@dataclass(frozen=True)
class TridiagonalOperator:
    """Square tridiagonal matrix.

    ``sub[i]`` is entry (i+1, i), ``diag[i]`` entry (i, i), ``sup[i]`` entry
    (i, i+1); sub and sup have length ``size - 1``.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray

    def __post_init__(self):
        n = len(self.diag)
        if len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise ValueError("band lengths must be size-1, size, size-1")

    @property
    def size(self) -> int:
        return len(self.diag)

    def to_dense(self) -> np.ndarray:
        """Dense copy, for tests and small-system diagnostics."""
        dense = np.diag(self.diag)
        dense[np.arange(1, self.size), np.arange(self.size - 1)] = self.sub
        dense[np.arange(self.size - 1), np.arange(1, self.size)] = self.sup
        return dense


def tridiag_matvec(op: TridiagonalOperator, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (op.size,):
        raise ValueError(f"vector must have shape ({op.size},), got {v.shape}")
    n = op.size
    if n == 1:
        return np.array([op.diag[0] * v[0]])
    a, b, c, x = op.sub.tolist(), op.diag.tolist(), op.sup.tolist(), v.tolist()
    y = [0.0] * n
    y[0] = b[0] * x[0] + c[0] * x[1]
    for i in range(1, n - 1):
        y[i] = a[i - 1] * x[i - 1] + b[i] * x[i] + c[i] * x[i + 1]
    y[n - 1] = a[n - 2] * x[n - 2] + b[n - 1] * x[n - 1]
    return np.array(y)


def thomas_solve(op: TridiagonalOperator, rhs) -> np.ndarray:
    """Solve op @ x = rhs by the Thomas algorithm (no pivoting).

    Safe without pivoting for the diagonally dominant systems built here;
    raises SingularSystemError on an exactly zero pivot.
    """
    rhs = np.asarray(rhs, dtype=float)
    if rhs.shape != (op.size,):
        raise ValueError(f"rhs must have shape ({op.size},), got {rhs.shape}")
    n = op.size
    a, b, c, d = op.sub.tolist(), op.diag.tolist(), op.sup.tolist(), rhs.tolist()
    cp = [0.0] * n  # eliminated superdiagonal
    dp = [0.0] * n  # eliminated rhs
    piv = b[0]
    if piv == 0.0:
        raise SingularSystemError("zero pivot at row 0")
    cp[0] = c[0] / piv if n > 1 else 0.0
    dp[0] = d[0] / piv
    for i in range(1, n):
        piv = b[i] - a[i - 1] * cp[i - 1]
        if piv == 0.0:
            raise SingularSystemError(f"zero pivot at row {i}")
        if i < n - 1:
            cp[i] = c[i] / piv
        dp[i] = (d[i] - a[i - 1] * dp[i - 1]) / piv
    x = [0.0] * n
    x[n - 1] = dp[n - 1]
    for i in range(n - 2, -1, -1):
        x[i] = dp[i] - cp[i] * x[i + 1]
    return np.array(x)
