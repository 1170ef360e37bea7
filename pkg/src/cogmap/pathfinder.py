"""Simple-path enumeration between node pairs and the streaming path fold."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from . import _kernels
from .graph import ConceptNet

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """The DFS visited more path-tree nodes than its work budget allows."""

    def __init__(self, source, target, budget, frontier=None):
        self.source = source
        self.target = target
        self.budget = budget
        self.frontier = frontier
        pair = f"{source!r} -> {target!r}" if target is not None else f"{source!r} -> *"
        msg = f"path enumeration for {pair} exceeded work budget of {budget} visited states"
        if frontier is not None:
            msg += f" (while extending through {frontier!r})"
        super().__init__(msg)


class Cancelled(RuntimeError):
    pass


class CancelToken:
    """Cooperative stop signal, readable from compiled kernels running without the GIL."""

    def __init__(self):
        self.flag = np.zeros(1, dtype=np.uint8)

    def cancel(self):
        self.flag[0] = 1

    @property
    def cancelled(self) -> bool:
        return bool(self.flag[0])


_NEVER = np.zeros(1, dtype=np.uint8)
_NEVER.setflags(write=False)


@dataclass(frozen=True)
class PathRecord:
    nodes: tuple
    edge_emfs: tuple
    emf: float

    @property
    def length(self) -> int:
        return len(self.nodes) - 1


@dataclass(frozen=True)
class PairAccumulator:
    sum_emf_over_len: float = 0.0
    sum_inv_len: float = 0.0
    path_count: int = 0
    truncated: bool = False

    def add(self, record: PathRecord) -> "PairAccumulator":
        return PairAccumulator(
            self.sum_emf_over_len + record.emf / record.length,
            self.sum_inv_len + 1.0 / record.length,
            self.path_count + 1,
            self.truncated,
        )


def _resolve(net, source, target):
    s = net.index(source)
    t = net.index(target)
    if s == t:
        raise ValueError(f"source and target are the same node {source!r}")
    return s, t


def _cap(net, max_len):
    if max_len is None:
        return max(net.n - 1, 1)
    if max_len < 1:
        raise ValueError("max_len must be a positive integer")
    return int(max_len)


def enumerate_simple_paths(
    net: ConceptNet,
    source: str,
    target: str,
    max_len: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    stop=None,
) -> Iterator[PathRecord]:
    """Yield every simple directed path from ``source`` to ``target``.

    Paths come out in depth-first order with successors taken in label
    order.  ``stop`` is a zero-argument callable (or :class:`CancelToken`)
    polled at every visited state.
    """
    s, t = _resolve(net, source, target)
    cap = _cap(net, max_len)
    indptr, indices, weights = net.csr()
    labels = net.labels
    if isinstance(stop, CancelToken):
        token = stop
        stop = lambda: token.cancelled  # noqa: E731
    on_path = [False] * net.n
    on_path[s] = True
    path = [s]
    emfs = []
    running = [0.0]
    iters = [iter(range(indptr[s], indptr[s + 1]))]
    visited = 0
    while iters:
        p = next(iters[-1], None)
        if p is None:
            iters.pop()
            u = path.pop()
            on_path[u] = False
            if emfs:
                emfs.pop()
                running.pop()
            continue
        v = int(indices[p])
        if on_path[v]:
            continue
        visited += 1
        if visited > budget:
            raise BudgetExceeded(source, target, budget, labels[path[-1]])
        if stop is not None and stop():
            raise Cancelled(f"enumeration {source!r} -> {target!r} cancelled")
        w = float(weights[p])
        e = running[-1] + w
        if v == t:
            yield PathRecord(tuple(labels[i] for i in path) + (labels[v],), tuple(emfs) + (w,), e)
        elif len(path) < cap:
            path.append(v)
            on_path[v] = True
            emfs.append(w)
            running.append(e)
            iters.append(iter(range(indptr[v], indptr[v + 1])))


def _run_fold(net, source, target, max_len, budget, cancel):
    s, t = _resolve(net, source, target)
    indptr, indices, weights = net.csr()
    flag = cancel.flag if cancel is not None else _NEVER
    out = _kernels.fold_pair(indptr, indices, weights, s, t, _cap(net, max_len), budget, flag)
    s_emf, s_inv, count, truncated, _, status, frontier = out
    if status == _kernels.BUDGET:
        raise BudgetExceeded(source, target, budget, net.labels[frontier])
    if status == _kernels.CANCELLED:
        raise Cancelled(f"enumeration {source!r} -> {target!r} cancelled")
    return float(s_emf), float(s_inv), int(count), bool(truncated)


def accumulate_pair(
    net: ConceptNet,
    source: str,
    target: str,
    max_len: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    cancel: CancelToken | None = None,
) -> PairAccumulator:
    """Sum ``emf/len`` and ``1/len`` over all simple paths without storing them."""
    s_emf, s_inv, count, truncated = _run_fold(net, source, target, max_len, budget, cancel)
    return PairAccumulator(s_emf, s_inv, count, truncated)


def count_paths(
    net: ConceptNet,
    source: str,
    target: str,
    max_len: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    cancel: CancelToken | None = None,
) -> tuple[int, bool]:
    _, _, count, truncated = _run_fold(net, source, target, max_len, budget, cancel)
    return count, truncated


def fold_source(net, s, max_len=None, budget=DEFAULT_BUDGET, cancel=None):
    """Per-target ``(s_emf, s_inv, count, truncated)`` for every path out of node index ``s``."""
    indptr, indices, weights = net.csr()
    n = net.n
    s_emf = np.zeros(n)
    s_inv = np.zeros(n)
    count = np.zeros(n, dtype=np.int64)
    flag = cancel.flag if cancel is not None else _NEVER
    truncated, _, status, frontier = _kernels.fold_row(
        indptr, indices, weights, s, _cap(net, max_len), budget, flag, s_emf, s_inv, count
    )
    if status == _kernels.BUDGET:
        raise BudgetExceeded(net.labels[s], None, budget, net.labels[frontier])
    if status == _kernels.CANCELLED:
        raise Cancelled(f"enumeration from {net.labels[s]!r} cancelled")
    return s_emf, s_inv, count, bool(truncated)
