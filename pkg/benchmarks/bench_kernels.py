"""Compare the compiled and numpy kernels on representative workloads.

    python benchmarks/bench_kernels.py [--repeat 3] [--size 400]
"""

import argparse
import time

import numpy as np

from modtorelli.kernels import BACKENDS


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads(size, rng):
    p = 3
    A = rng.integers(0, p, size=(size, size))
    r, N = 3, 7
    total = sum(r**k for k in range(N + 1))
    a = np.zeros(total, dtype=np.int64)
    a[:200] = rng.integers(0, 5, size=200)
    b = np.zeros(total, dtype=np.int64)
    b[:200] = rng.integers(0, 5, size=200)
    word = [(int(rng.integers(0, r)), int(rng.choice([-1, 1]))) for _ in range(40)]

    def expand(impl):
        s = np.zeros(total, dtype=np.int64)
        s[0] = 1
        for gen, sign in word:
            s = impl.mul_letter(s, gen, sign, r, N, 5)
        return s

    return {
        f"rref_mod {size}x{size} (p=3)": lambda impl: impl.rref_mod(A, p),
        "series_mul r=3 N=7": lambda impl: impl.series_mul(a, b, r, N, 5),
        "expand 40-letter word r=3 N=7": expand,
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=400)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    names = sorted(BACKENDS)
    print(f"backends available: {', '.join(names)}")
    header = f"{'workload':34s}" + "".join(f"{n:>12s}" for n in names)
    if len(names) == 2:
        header += f"{'speedup':>10s}"
    print(header)
    for label, job in workloads(args.size, rng).items():
        times = {n: best_of(lambda: job(BACKENDS[n]), args.repeat) for n in names}
        row = f"{label:34s}" + "".join(f"{times[n] * 1e3:10.1f}ms" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
