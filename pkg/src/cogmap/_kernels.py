"""Compiled inner loops.

Every function here is numba-compatible and also runs unchanged as Python
when the numba backend is switched off (see ``_accel``).  Graphs arrive in
CSR form: ``indptr``, ``indices`` (targets in label order), ``weights``.

Status codes returned by the DFS kernels: 0 finished, 1 work budget
exceeded, 2 cancelled.
"""

import numpy as np

from ._accel import njit

OK = 0
BUDGET = 1
CANCELLED = 2


@njit
def _has_free_successor(indptr, indices, on_path, v):
    for q in range(indptr[v], indptr[v + 1]):
        if not on_path[indices[q]]:
            return True
    return False


@njit
def fold_pair(indptr, indices, weights, source, target, max_len, budget, cancel):
    """Depth-first fold of all simple source->target paths.

    Returns ``(sum_emf_over_len, sum_inv_len, count, truncated, visited,
    status, frontier)``.  ``frontier`` is the node being extended when the
    walk stopped early.  The target is never expanded: a simple path ends
    there.
    """
    n = indptr.shape[0] - 1
    on_path = np.zeros(n, dtype=np.bool_)
    node = np.empty(n, dtype=np.int64)
    ptr = np.empty(n, dtype=np.int64)
    emf = np.empty(n, dtype=np.float64)
    s_emf = 0.0
    s_inv = 0.0
    count = 0
    truncated = False
    visited = 0
    status = OK
    depth = 0
    node[0] = source
    ptr[0] = indptr[source]
    emf[0] = 0.0
    on_path[source] = True
    while depth >= 0:
        u = node[depth]
        p = ptr[depth]
        if p == indptr[u + 1]:
            on_path[u] = False
            depth -= 1
            continue
        ptr[depth] = p + 1
        v = indices[p]
        if on_path[v]:
            continue
        visited += 1
        if visited > budget:
            status = BUDGET
            break
        if cancel[0] != 0:
            status = CANCELLED
            break
        e = emf[depth] + weights[p]
        length = depth + 1
        if v == target:
            s_emf += e / length
            s_inv += 1.0 / length
            count += 1
        elif length >= max_len:
            if not truncated and _has_free_successor(indptr, indices, on_path, v):
                truncated = True
        else:
            depth += 1
            node[depth] = v
            ptr[depth] = indptr[v]
            emf[depth] = e
            on_path[v] = True
    frontier = node[depth] if depth >= 0 else -1
    return s_emf, s_inv, count, truncated, visited, status, frontier


@njit
def fold_row(indptr, indices, weights, source, max_len, budget, cancel, s_emf, s_inv, count):
    """Fold every simple path leaving ``source`` into per-target sums in one walk.

    ``s_emf``, ``s_inv`` and ``count`` are length-n output arrays updated in
    place.  A path to ``t`` is the walk's visit of ``t``; visits happen in the
    same order as in :func:`fold_pair`, so the per-target sums are bitwise
    equal to the single-pair fold.  Returns ``(truncated, visited, status,
    frontier)``.
    """
    n = indptr.shape[0] - 1
    on_path = np.zeros(n, dtype=np.bool_)
    node = np.empty(n, dtype=np.int64)
    ptr = np.empty(n, dtype=np.int64)
    emf = np.empty(n, dtype=np.float64)
    truncated = False
    visited = 0
    status = OK
    depth = 0
    node[0] = source
    ptr[0] = indptr[source]
    emf[0] = 0.0
    on_path[source] = True
    while depth >= 0:
        u = node[depth]
        p = ptr[depth]
        if p == indptr[u + 1]:
            on_path[u] = False
            depth -= 1
            continue
        ptr[depth] = p + 1
        v = indices[p]
        if on_path[v]:
            continue
        visited += 1
        if visited > budget:
            status = BUDGET
            break
        if cancel[0] != 0:
            status = CANCELLED
            break
        e = emf[depth] + weights[p]
        length = depth + 1
        s_emf[v] += e / length
        s_inv[v] += 1.0 / length
        count[v] += 1
        if length >= max_len:
            if not truncated and _has_free_successor(indptr, indices, on_path, v):
                truncated = True
        else:
            depth += 1
            node[depth] = v
            ptr[depth] = indptr[v]
            emf[depth] = e
            on_path[v] = True
    frontier = node[depth] if depth >= 0 else -1
    return truncated, visited, status, frontier


@njit
def lu_solve_inplace(a, b, rel_tol):
    """Gaussian elimination with partial pivoting on copies of ``a`` and ``b``.

    ``b`` may be 2-D (several right-hand sides).  A pivot smaller than
    ``rel_tol * max_row_norm(a)`` marks the matrix singular; the return value
    is then ``(x, k)`` with ``k`` the failing column, else ``(x, -1)``.
    """
    n = a.shape[0]
    a = a.copy()
    x = b.copy()
    scale = 0.0
    for i in range(n):
        s = 0.0
        for j in range(n):
            s += abs(a[i, j])
        if s > scale:
            scale = s
    thresh = rel_tol * scale
    for k in range(n):
        piv = k
        best = abs(a[k, k])
        for i in range(k + 1, n):
            if abs(a[i, k]) > best:
                best = abs(a[i, k])
                piv = i
        if best <= thresh or best == 0.0:
            return x, k
        if piv != k:
            for j in range(n):
                tmp = a[k, j]
                a[k, j] = a[piv, j]
                a[piv, j] = tmp
            for j in range(x.shape[1]):
                tmp = x[k, j]
                x[k, j] = x[piv, j]
                x[piv, j] = tmp
        for i in range(k + 1, n):
            f = a[i, k] / a[k, k]
            if f != 0.0:
                for j in range(k + 1, n):
                    a[i, j] -= f * a[k, j]
                for j in range(x.shape[1]):
                    x[i, j] -= f * x[k, j]
            a[i, k] = 0.0
    for k in range(n - 1, -1, -1):
        for j in range(x.shape[1]):
            s = x[k, j]
            for m in range(k + 1, n):
                s -= a[k, m] * x[m, j]
            x[k, j] = s / a[k, k]
    return x, -1
