#!/usr/bin/env python3
"""Benchmark the compiled kernel extension against the pure-numpy fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import time

import numpy as np

from spindiv import _core_cy, _core_py  # noqa: F401  (fails loudly if ext missing)

BACKENDS = {"python": _core_py, "compiled": _core_cy}


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        tic = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - tic)
    return best


def bench_jacobi():
    rng = np.random.default_rng(0)
    print("jacobi_hermitian (cyclic complex Jacobi, best of 5):")
    for n in (9, 16, 49, 100):
        x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = 0.5 * (x + x.conj().T)
        row = {}
        for name, mod in BACKENDS.items():
            row[name] = _time(lambda m=mod: m.jacobi_hermitian(a), 5)
        speedup = row["python"] / row["compiled"]
        print(f"  n={n:4d}:  python {row['python']*1e3:9.3f} ms"
              f"   compiled {row['compiled']*1e3:9.3f} ms   speedup {speedup:6.1f}x")


def bench_kernel_reduce():
    rng = np.random.default_rng(1)
    print("kernel_reduce (single time, best of 20):")
    for n in (1000, 10000):
        delta = rng.normal(size=n) * 10.0
        coeff = rng.normal(size=n)
        row = {}
        for name, mod in BACKENDS.items():
            row[name] = _time(lambda m=mod: m.kernel_reduce(delta, coeff, 3.0), 20)
        speedup = row["python"] / row["compiled"]
        print(f"  n={n:6d}:  python {row['python']*1e6:9.1f} us"
              f"   compiled {row['compiled']*1e6:9.1f} us   speedup {speedup:6.1f}x")


def bench_kernel_grid():
    rng = np.random.default_rng(2)
    print("kernel_reduce_grid (phase recurrence, 2001 times, best of 3):")
    for n in (1000, 10000):
        delta = np.abs(rng.normal(size=n)) * 10.0 + 1e-3
        ca = rng.normal(size=n)
        cb = rng.normal(size=n)
        row = {}
        for name, mod in BACKENDS.items():
            row[name] = _time(lambda m=mod: m.kernel_reduce_grid(delta, ca, cb, 0.0, 0.01, 2001), 3)
        speedup = row["python"] / row["compiled"]
        print(f"  n={n:6d}:  python {row['python']*1e3:9.1f} ms"
              f"   compiled {row['compiled']*1e3:9.1f} ms   speedup {speedup:6.1f}x")


def bench_agreement():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    a = 0.5 * (x + x.conj().T)
    w1, _, _ = _core_py.jacobi_hermitian(a)
    w2, _, _ = _core_cy.jacobi_hermitian(a)
    delta = np.abs(rng.normal(size=5000)) + 1e-4
    coeff = rng.normal(size=5000)
    k1 = _core_py.kernel_reduce(delta, coeff, 2.5)
    k2 = _core_cy.kernel_reduce(delta, coeff, 2.5)
    print("cross-backend agreement:")
    print(f"  eigenvalues: {np.max(np.abs(np.sort(w1) - np.sort(w2))):.2e}")
    print(f"  kernel_reduce: {abs(k1 - k2):.2e}")


if __name__ == "__main__":
    bench_jacobi()
    bench_kernel_reduce()
    bench_kernel_grid()
    bench_agreement()
