"""Compare the numba and numpy F_p kernels.

    python benchmarks/bench_kernels.py [--size 120] [--repeat 5]

Both paths are checked for identical output before timing.
"""

import argparse
import time

import numpy as np

from ncx import _kernels


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--size", type=int, default=120)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--p", type=int, default=10007)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    p, n = args.p, args.size
    # rank-deficient matrix so elimination sees both pivot and free columns
    A = (rng.integers(0, p, (n, n // 2)) @ rng.integers(0, p, (n // 2, n))) % p
    B = rng.integers(0, p, (n, n))

    if not _kernels.HAVE_NUMBA:
        print("numba not available; only the numpy path can run")
        return

    R1, p1 = _kernels._rref_modp_jit(A.astype(np.int64), np.int64(p))
    R2, p2 = _kernels.rref_modp_numpy(A, p)
    assert np.array_equal(R1, R2) and np.array_equal(p1, p2)
    M1 = _kernels._matmul_modp_jit(A, B, np.int64(p))
    M2 = _kernels.matmul_modp_numpy(A, B, p)
    assert np.array_equal(M1, M2)

    rows = [
        ("rref", lambda: _kernels._rref_modp_jit(A, np.int64(p)), lambda: _kernels.rref_modp_numpy(A, p)),
        ("matmul", lambda: _kernels._matmul_modp_jit(A, B, np.int64(p)),
         lambda: _kernels.matmul_modp_numpy(A, B, p)),
    ]
    print(f"{n}x{n} over F_{p}, best of {args.repeat}")
    print(f"{'kernel':8} {'numba [ms]':>12} {'numpy [ms]':>12} {'ratio':>8}")
    for name, jit_fn, np_fn in rows:
        tj, tn = _time(jit_fn, args.repeat), _time(np_fn, args.repeat)
        print(f"{name:8} {tj * 1e3:12.3f} {tn * 1e3:12.3f} {tn / tj:8.2f}")


if __name__ == "__main__":
    main()
