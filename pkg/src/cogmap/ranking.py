"""Node measures derived from pairwise influence matrices, and rank utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

PRESSURE = "pressure"
INFLUENCE = "influence"
AMPLITUDE_PRESSURE = "amplitude-pressure"
AMPLITUDE_INFLUENCE = "amplitude-influence"
IMPULSE_PRESSURE = "impulse-pressure"
IMPULSE_INFLUENCE = "impulse-influence"

MEASURES = (PRESSURE, INFLUENCE, AMPLITUDE_PRESSURE, AMPLITUDE_INFLUENCE)


@dataclass(frozen=True)
class MeasureVector:
    kind: str
    values: np.ndarray
    source: str = "k-method"


@dataclass(frozen=True)
class RankVector:
    """``ranks[i]`` is the 1-based rank of node ``i`` (1 = largest value)."""

    ranks: tuple

    def __len__(self):
        return len(self.ranks)

    def order(self) -> list:
        """Node indices from rank 1 downwards."""
        return sorted(range(len(self.ranks)), key=self.ranks.__getitem__)


def _matrix(k):
    values = getattr(k, "values", k)
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def _off_diagonal(a):
    a = a.copy()
    np.fill_diagonal(a, 0.0)
    return a


def pressure(k, source="k-method") -> MeasureVector:
    """Column sums: the combined effect of all other nodes on each node."""
    return MeasureVector(PRESSURE, _off_diagonal(_matrix(k)).sum(axis=0), source)


def influence(k, source="k-method") -> MeasureVector:
    """Row sums: each node's combined effect on all the others."""
    return MeasureVector(INFLUENCE, _off_diagonal(_matrix(k)).sum(axis=1), source)


def amplitude_pressure(k, source="k-method") -> MeasureVector:
    return MeasureVector(AMPLITUDE_PRESSURE, np.abs(_off_diagonal(_matrix(k))).sum(axis=0), source)


def amplitude_influence(k, source="k-method") -> MeasureVector:
    return MeasureVector(AMPLITUDE_INFLUENCE, np.abs(_off_diagonal(_matrix(k))).sum(axis=1), source)


MEASURE_FUNCS = {
    PRESSURE: pressure,
    INFLUENCE: influence,
    AMPLITUDE_PRESSURE: amplitude_pressure,
    AMPLITUDE_INFLUENCE: amplitude_influence,
}


def rank_nodes(m) -> RankVector:
    """Rank descending by value; equal values go to the lower node index first."""
    values = np.asarray(getattr(m, "values", m), dtype=np.float64)
    order = sorted(range(values.size), key=lambda i: (-values[i], i))
    ranks = [0] * values.size
    for r, i in enumerate(order, start=1):
        ranks[i] = r
    return RankVector(tuple(ranks))


def element_ranking(k, labels=None) -> list:
    """Nonzero off-diagonal entries as ``((row, col), value)``, largest value first.

    Ties keep (row, column) order.  Pairs are index tuples unless ``labels``
    is given.
    """
    a = _matrix(k)
    n = a.shape[0]
    items = [((i, j), float(a[i, j])) for i in range(n) for j in range(n) if i != j and a[i, j] != 0]
    items.sort(key=lambda item: -item[1])
    if labels is not None:
        items = [((labels[i], labels[j]), v) for (i, j), v in items]
    return items


def rank_correlation(a: RankVector, b: RankVector) -> tuple[float, float]:
    """Spearman rho and Kendall tau between two tie-free rank vectors.

    Both are NaN for fewer than two nodes.
    """
    ra = np.asarray(getattr(a, "ranks", a), dtype=np.float64)
    rb = np.asarray(getattr(b, "ranks", b), dtype=np.float64)
    if ra.shape != rb.shape:
        raise ValueError(f"rank vectors differ in length ({ra.size} vs {rb.size})")
    n = ra.size
    if n < 2:
        return math.nan, math.nan
    d2 = float(np.sum((ra - rb) ** 2))
    spearman = 1.0 - 6.0 * d2 / (n * (n * n - 1))
    concordant = 0
    discordant = 0
    for i in range(n):
        for j in range(i + 1, n):
            s = (ra[i] - ra[j]) * (rb[i] - rb[j])
            if s > 0:
                concordant += 1
            elif s < 0:
                discordant += 1
    kendall = (concordant - discordant) / (n * (n - 1) / 2)
    return spearman, kendall
