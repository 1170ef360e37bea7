"""Compare the compiled kernels against their plain-Python bodies.

    python3 benchmarks/bench_kernels.py [--n 40] [--max-len 8] [--repeat 3]

Both variants run the same source; the Python one is reached through
``python_impl`` so a single process can time them side by side.  With
``COGMAP_DISABLE_NUMBA=1`` the two columns coincide.
"""

import argparse
import time

import numpy as np

from cogmap import ConceptNet
from cogmap._accel import backend_name, python_impl
from cogmap._kernels import fold_row, lu_solve_inplace


def sparse_net(n, degree, seed):
    rng = np.random.default_rng(seed)
    mask = (rng.random((n, n)) < degree / (n - 1)) & ~np.eye(n, dtype=bool)
    return ConceptNet.from_dense(np.where(mask, rng.uniform(-1, 1, (n, n)), 0.0))


def all_rows(kernel, net, max_len):
    indptr, indices, weights = net.csr()
    cancel = np.zeros(1, dtype=np.uint8)
    for s in range(net.n):
        s_emf = np.zeros(net.n)
        s_inv = np.zeros(net.n)
        count = np.zeros(net.n, dtype=np.int64)
        kernel(indptr, indices, weights, s, max_len, 10**9, cancel, s_emf, s_inv, count)


def best_of(func, repeat):
    func()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=40)
    ap.add_argument("--degree", type=float, default=2.0)
    ap.add_argument("--max-len", type=int, default=8)
    ap.add_argument("--solve-n", type=int, default=150)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    net = sparse_net(args.n, args.degree, args.seed)
    rng = np.random.default_rng(args.seed)
    a = rng.normal(size=(args.solve_n, args.solve_n)) + args.solve_n * np.eye(args.solve_n)
    b = rng.normal(size=(args.solve_n, 1))

    cases = [
        (f"path fold, n={args.n}, max-len {args.max_len}",
         lambda k: all_rows(k, net, args.max_len), fold_row),
        (f"LU solve, {args.solve_n}x{args.solve_n}",
         lambda k: k(a, b, 1e-12), lu_solve_inplace),
    ]
    print(f"backend: {backend_name()}")
    print(f"{'case':<36}{'compiled [s]':>14}{'python [s]':>14}{'speedup':>10}")
    for title, run, kernel in cases:
        fast = best_of(lambda: run(kernel), args.repeat)
        slow = best_of(lambda: run(python_impl(kernel)), args.repeat)
        print(f"{title:<36}{fast:>14.4f}{slow:>14.4f}{slow / fast:>9.1f}x")


if __name__ == "__main__":
    main()
