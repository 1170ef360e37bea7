"""Linear pulse-propagation ("impulse") analysis of a cognitive map.

``W[i, j]`` is the weight of edge ``i -> j``, so a pulse vector advances as
``p <- W.T @ p``.  The state after ``n`` steps is
``V(n) = V_init + sum_{k<=n} (W.T)^k p0``; when the series converges,
``V = V_init + Omega.T @ p0`` with ``Omega = (I - W)^-1``.  ``Omega[i, j]`` is
the total walk-weighted effect of ``i`` on ``j``, and a node's pressure and
influence are the off-diagonal column and row sums of ``Omega``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import SpectralEstimate, invert, spectral_radius

DIVERGENCE_RUN = 10


@dataclass(frozen=True)
class ImpulseTrajectory:
    states: np.ndarray  # (steps + 1, n); row k is V(k)
    p0: np.ndarray
    v_init: np.ndarray
    diverging: bool

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]


@dataclass(frozen=True)
class ImpulseResult:
    omega: np.ndarray
    rho: SpectralEstimate
    converged: bool
    psi_imp: np.ndarray
    v_imp: np.ndarray

    @property
    def response(self) -> np.ndarray:
        """Operator taking an initial pulse vector to the limiting state."""
        return self.omega.T


def impulse_series(W, p0=None, v_init=None, steps: int = 200) -> ImpulseTrajectory:
    """Iterate ``p(n+1) = W.T p(n)``, ``V(n+1) = V(n) + p(n+1)`` from ``V(0) = V_init + p0``.

    ``diverging`` is set once the increment norm ``||V(n) - V(n-1)||_inf``
    has been nonzero and non-decreasing for ten consecutive steps.
    """
    W = np.asarray(W, dtype=np.float64)
    n = W.shape[0]
    p = np.ones(n) if p0 is None else np.asarray(p0, dtype=np.float64).copy()
    v0 = np.zeros(n) if v_init is None else np.asarray(v_init, dtype=np.float64)
    if W.shape != (n, n) or p.shape != (n,) or v0.shape != (n,):
        raise ValueError("W, p0 and v_init dimensions disagree")
    states = np.empty((steps + 1, n))
    states[0] = v0 + p
    p0_saved = p.copy()
    run = 0
    diverging = False
    last = float(np.max(np.abs(p))) if n else 0.0
    step = W.T
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(1, steps + 1):
            p = step @ p
            states[k] = states[k - 1] + p
            size = float(np.max(np.abs(p))) if n else 0.0
            if size > 0 and size >= last:
                run += 1
                if run >= DIVERGENCE_RUN:
                    diverging = True
            else:
                run = 0
            if not np.isfinite(size):
                diverging = True
            last = size
    return ImpulseTrajectory(states, p0_saved, v0.copy(), diverging)


def off_diagonal_sums(omega):
    """``(column sums, row sums)`` of ``omega`` with the diagonal left out."""
    d = np.diag(omega)
    return omega.sum(axis=0) - d, omega.sum(axis=1) - d


def reachability(W) -> np.ndarray:
    """Boolean matrix: ``out[i, j]`` iff some walk (possibly empty) leads from i to j."""
    n = W.shape[0]
    reach = (np.asarray(W) != 0) | np.eye(n, dtype=bool)
    while True:
        nxt = (reach.astype(np.int64) @ reach.astype(np.int64)) > 0
        if np.array_equal(nxt, reach):
            return reach
        reach = nxt


def impulse_closed_form(W, *, tol: float = 1e-10) -> ImpulseResult:
    """``Omega = (I - W)^-1`` plus impulse pressure/influence.

    When the spectral radius is not below one the series has no limit; the
    inverse is still returned (a formal value) with ``converged=False``.
    Raises :class:`~cogmap.numerics.SingularMatrixError` if ``I - W`` is
    singular.
    """
    W = np.asarray(W, dtype=np.float64)
    n = W.shape[0]
    rho = spectral_radius(W, tol=tol)
    omega = invert(np.eye(n) - W)
    # entries with no connecting walk are exact zeros; drop elimination noise there
    omega[~reachability(W)] = 0.0
    psi, v = off_diagonal_sums(omega)
    converged = bool(rho.rho < 1.0 and np.all(np.isfinite(omega)))
    return ImpulseResult(omega, rho, converged, psi, v)


def impulse_pressure_single(response, beta: int) -> float:
    """Node ``beta``'s limiting value under unit pulses on every other node.

    ``response`` maps pulse vectors to states (``ImpulseResult.response``),
    so the result is ``sum_{k != beta} response[beta, k]``.
    """
    response = np.asarray(response, dtype=np.float64)
    pulse = np.ones(response.shape[0])
    pulse[beta] = 0.0
    return float((response @ pulse)[beta])


def impulse_influence_single(response, alpha: int) -> float:
    """Total change on the other nodes caused by a unit pulse on ``alpha`` alone."""
    response = np.asarray(response, dtype=np.float64)
    pulse = np.zeros(response.shape[0])
    pulse[alpha] = 1.0
    out = response @ pulse
    return float(out.sum() - out[alpha])


@dataclass
class ReorderingSearch:
    found: bool
    trials: int
    W: np.ndarray | None = None
    shift: float | None = None
    flipped_pair: tuple | None = None
    before: np.ndarray | None = None
    after: np.ndarray | None = None
    log: list = field(default_factory=list)


def search_additive_reordering(
    rng: np.random.Generator,
    max_trials: int = 10_000,
    *,
    n_range=(3, 6),
    edge_prob: float = 0.4,
    margin: float = 1e-6,
) -> ReorderingSearch:
    """Look for a small net whose impulse influence order changes when every
    nonzero weight is increased by the same constant.

    Only nets where both the original and shifted series converge count, and
    the order change must be a strict flip (by more than ``margin``) of two
    nodes' values, not a tie resolution.
    """
    log = []
    for trial in range(1, max_trials + 1):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        mask = (rng.random((n, n)) < edge_prob) & ~np.eye(n, dtype=bool)
        W = np.where(mask, rng.uniform(-1.0, 1.0, (n, n)), 0.0)
        shift = float(rng.uniform(0.05, 0.5))
        W2 = np.where(mask, W + shift, 0.0)
        try:
            r1 = impulse_closed_form(W)
            r2 = impulse_closed_form(W2)
        except ArithmeticError:
            log.append((trial, n, shift, "singular"))
            continue
        if not (r1.converged and r2.converged):
            log.append((trial, n, shift, "divergent"))
            continue
        a, b = r1.v_imp, r2.v_imp
        for i in range(n):
            for j in range(n):
                if a[i] - a[j] > margin and b[j] - b[i] > margin:
                    log.append((trial, n, shift, "flip"))
                    return ReorderingSearch(True, trial, W, shift, (i, j), a, b, log)
        log.append((trial, n, shift, "same order"))
    return ReorderingSearch(False, max_trials, log=log)
