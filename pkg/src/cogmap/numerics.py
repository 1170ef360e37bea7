"""Small dense linear algebra used by the circuit solver and the impulse method."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels

PIVOT_REL_TOL = 1e-12


class SingularMatrixError(ArithmeticError):
    pass


def _square(a, name="A"):
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def solve_linear(a, b) -> np.ndarray:
    """Solve ``a @ x = b`` by Gaussian elimination with partial pivoting.

    Raises :class:`SingularMatrixError` when a pivot falls below
    ``1e-12`` times the largest absolute row sum of ``a``.
    """
    a = _square(a)
    b = np.asarray(b, dtype=np.float64)
    vector = b.ndim == 1
    rhs = b.reshape(-1, 1) if vector else b
    if rhs.shape[0] != a.shape[0]:
        raise ValueError(f"right-hand side has {rhs.shape[0]} rows, matrix has {a.shape[0]}")
    x, bad = _kernels.lu_solve_inplace(a, np.ascontiguousarray(rhs), PIVOT_REL_TOL)
    if bad >= 0:
        raise SingularMatrixError(f"matrix is singular to working precision (column {bad + 1})")
    return x[:, 0] if vector else x


def invert(a) -> np.ndarray:
    a = _square(a)
    return solve_linear(a, np.eye(a.shape[0]))


@dataclass(frozen=True)
class SpectralEstimate:
    rho: float
    iterations: int
    converged: bool


def spectral_radius(a, tol: float = 1e-10, max_iter: int = 64) -> SpectralEstimate:
    """Upper estimate of the spectral radius from ``||A^(2^k)||_inf^(1/2^k)``.

    The power is built by repeated squaring with the running norm factored
    out, so ``A^(2^k) = exp(log_scale) * B`` never overflows.  Each estimate
    bounds the true radius from above and the sequence converges to it.
    """
    a = _square(a)
    if a.size == 0:
        return SpectralEstimate(0.0, 0, True)
    b = a.copy()
    log_scale = 0.0
    prev = math.inf
    power = 1
    for k in range(max_iter + 1):
        c = float(np.max(np.sum(np.abs(b), axis=1)))
        if c == 0.0:
            return SpectralEstimate(0.0, k, True)
        log_norm = log_scale + math.log(c)
        try:
            est = math.exp(log_norm / power)
        except OverflowError:
            est = math.inf
        if abs(est - prev) < tol:
            return SpectralEstimate(est, k, True)
        prev = est
        b = b / c
        b = b @ b
        log_scale = 2.0 * log_norm
        power *= 2
    return SpectralEstimate(prev, max_iter, False)
