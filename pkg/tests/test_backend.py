"""Compiled kernels against their own Python bodies."""

import numpy as np
import pytest

from cogmap import _kernels
from cogmap._accel import USE_NUMBA, backend_name, python_impl

from conftest import random_ensemble


def test_backend_name():
    assert backend_name() in ("numba", "numpy")


@pytest.mark.skipif(not USE_NUMBA, reason="numba backend disabled")
def test_kernels_are_compiled():
    assert hasattr(_kernels.fold_pair, "py_func")


def test_fold_kernels_agree_with_python():
    never = np.zeros(1, dtype=np.uint8)
    for net in random_ensemble(seed=99, count=40):
        ip, ix, w = net.csr()
        for s in range(net.n):
            for cap in (net.n - 1 or 1, 2):
                for t in range(net.n):
                    if s == t:
                        continue
                    a = _kernels.fold_pair(ip, ix, w, s, t, cap, 10**8, never)
                    b = python_impl(_kernels.fold_pair)(ip, ix, w, s, t, cap, 10**8, never)
                    assert tuple(a) == tuple(b)
                out_a = [np.zeros(net.n), np.zeros(net.n), np.zeros(net.n, dtype=np.int64)]
                out_b = [np.zeros(net.n), np.zeros(net.n), np.zeros(net.n, dtype=np.int64)]
                ra = _kernels.fold_row(ip, ix, w, s, cap, 10**8, never, *out_a)
                rb = python_impl(_kernels.fold_row)(ip, ix, w, s, cap, 10**8, never, *out_b)
                assert tuple(ra) == tuple(rb)
                for x, y in zip(out_a, out_b):
                    assert x.tobytes() == y.tobytes()


def test_lu_kernel_agrees_with_python():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(1, 12))
        A = rng.normal(size=(n, n))
        B = rng.normal(size=(n, 3))
        xa, ka = _kernels.lu_solve_inplace(A, B, 1e-12)
        xb, kb = python_impl(_kernels.lu_solve_inplace)(A, B, 1e-12)
        assert ka == kb
        np.testing.assert_allclose(xa, xb, rtol=1e-12, atol=1e-12)
