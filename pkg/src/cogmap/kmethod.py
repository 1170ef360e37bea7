"""Pairwise influence over all simple paths (parallel-chain circuit rule).

For an ordered pair joined by simple paths with total weights ``e_m`` and
edge counts ``N_m``, the influence is the potential difference across ``M``
parallel chains of unit resistors with series sources:

    K = sum(e_m / N_m) / sum(1 / N_m)

and zero when no path exists.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import os

import numpy as np

from .graph import ConceptNet
from .pathfinder import DEFAULT_BUDGET, PairAccumulator, fold_source


@dataclass(frozen=True)
class KMatrix:
    values: np.ndarray
    labels: tuple
    truncated: bool = False
    path_counts: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.labels)

    def __getitem__(self, pair):
        s, t = pair
        if isinstance(s, str):
            s = self.labels.index(s)
        if isinstance(t, str):
            t = self.labels.index(t)
        return float(self.values[s, t])


def k_pair(acc: PairAccumulator) -> float:
    if acc.path_count == 0:
        return 0.0
    return acc.sum_emf_over_len / acc.sum_inv_len


def default_jobs() -> int:
    return os.cpu_count() or 1


def k_matrix(
    net: ConceptNet,
    max_len: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    jobs: int | None = 1,
    cancel=None,
) -> KMatrix:
    """All pairwise influences, one depth-first walk per source node.

    ``budget`` bounds the visited states of each source's walk.  Rows are
    independent, so ``jobs > 1`` spreads them over threads (the compiled
    kernels release the GIL); the result does not depend on ``jobs``.
    """
    n = net.n
    values = np.zeros((n, n))
    counts = np.zeros((n, n), dtype=np.int64)
    truncated = np.zeros(n, dtype=bool)

    def run(s):
        s_emf, s_inv, count, trunc = fold_source(net, s, max_len, budget, cancel)
        reached = count > 0
        row = np.zeros(n)
        row[reached] = s_emf[reached] / s_inv[reached]
        row[s] = 0.0
        values[s] = row
        count[s] = 0
        counts[s] = count
        truncated[s] = trunc

    jobs = default_jobs() if jobs is None else max(1, int(jobs))
    if jobs == 1 or n < 2:
        for s in range(n):
            run(s)
    else:
        with ThreadPoolExecutor(max_workers=min(jobs, n)) as pool:
            # list() re-raises the first failing row in source order
            list(pool.map(run, range(n)))
    return KMatrix(values, net.labels, bool(truncated.any()), counts)
