"""Compare the compiled prime-field kernels against the pure-Python
fallback.

Run:  python3 benchmarks/bench_kernels.py
"""

import random
import time

from extsym._kernels import BACKEND
from extsym._kernels import pyfallback as pure

try:
    from extsym._kernels import _corekern as fast
except ImportError:
    fast = None


def rand_mat(rows, cols, p, rng):
    return tuple(tuple(rng.randrange(p) for _ in range(cols))
                 for _ in range(rows))


def time_fn(fn, *args, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    print(f"import-time backend: {BACKEND}")
    if fast is None:
        print("compiled kernels unavailable; nothing to compare")
        return
    rng = random.Random(12345)
    p = 10007
    for n in (20, 60, 120, 200):
        a = rand_mat(n, n, p, rng)
        b = rand_mat(n, n, p, rng)
        t_pure_mm = time_fn(pure.matmul, a, b, p)
        t_fast_mm = time_fn(fast.matmul, a, b, p)
        t_pure_rref = time_fn(pure.rref, a, p)
        t_fast_rref = time_fn(fast.rref, a, p)
        assert fast.matmul(a, b, p) == pure.matmul(a, b, p)
        assert fast.rref(a, p) == pure.rref(a, p)
        print(f"n={n:4d}  matmul pure {t_pure_mm * 1e3:8.2f} ms  "
              f"compiled {t_fast_mm * 1e3:8.2f} ms  "
              f"speedup {t_pure_mm / t_fast_mm:6.1f}x   |   "
              f"rref pure {t_pure_rref * 1e3:8.2f} ms  "
              f"compiled {t_fast_rref * 1e3:8.2f} ms  "
              f"speedup {t_pure_rref / t_fast_rref:6.1f}x")


if __name__ == "__main__":
    main()
