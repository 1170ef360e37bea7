"""Reference computations that share no code with the package under test."""

from fractions import Fraction
from itertools import permutations

import numpy as np


def brute_force_paths(W, s, t):
    """All simple s->t paths of dense matrix ``W`` by trying every ordered
    subset of the remaining nodes as the interior."""
    n = len(W)
    others = [v for v in range(n) if v not in (s, t)]
    out = []
    for k in range(len(others) + 1):
        for mid in permutations(others, k):
            seq = (s, *mid, t)
            if all(W[a][b] != 0 for a, b in zip(seq, seq[1:])):
                out.append(seq)
    return out


def exact_k(W, s, t, edge_set=None):
    """Exact pairwise influence with rational arithmetic.  ``edge_set`` lets
    explicit zero-weight edges count as links."""
    has = (lambda a, b: (a, b) in edge_set) if edge_set is not None else (lambda a, b: W[a][b] != 0)
    n = len(W)
    others = [v for v in range(n) if v not in (s, t)]
    num = Fraction(0)
    den = Fraction(0)
    for k in range(len(others) + 1):
        for mid in permutations(others, k):
            seq = (s, *mid, t)
            if all(has(a, b) for a, b in zip(seq, seq[1:])):
                emf = sum(Fraction(str(W[a][b])) for a, b in zip(seq, seq[1:]))
                num += emf / (len(seq) - 1)
                den += Fraction(1, len(seq) - 1)
    return num / den if den else Fraction(0)


def dag_path_counts(W):
    """Number of directed paths i->j (i != j) in a DAG by dynamic programming
    over a topological order."""
    n = len(W)
    A = (np.asarray(W) != 0).astype(object)
    indeg = A.sum(axis=0)
    order = []
    ready = [v for v in range(n) if indeg[v] == 0]
    indeg = list(indeg)
    while ready:
        u = ready.pop()
        order.append(u)
        for v in range(n):
            if A[u, v]:
                indeg[v] -= 1
                if indeg[v] == 0:
                    ready.append(v)
    assert len(order) == n, "not a DAG"
    counts = np.zeros((n, n), dtype=object)
    for s in range(n):
        ways = [0] * n
        ways[s] = 1
        for u in order:
            if ways[u]:
                for v in range(n):
                    if A[u, v]:
                        ways[v] += ways[u]
        counts[s] = ways
        counts[s, s] = 0
    return counts
