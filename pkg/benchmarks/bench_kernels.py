"""Time the compiled and pure-Python series product kernels.

    python benchmarks/bench_kernels.py --terms 400 --repeat 5

Also times a full log(1 + u) expansion with each kernel swapped in.
"""

import argparse
import time

import numpy as np

from zetasing import _kernel
from zetasing.oracle import random_reduced_series
from zetasing.series import TruncationPolicy, log1p_truncated


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def random_items(rng, n, d):
    keys = set()
    while len(keys) < n:
        ell = int(rng.integers(-3, 10))
        vec = tuple(int(k) for k in rng.integers(0, 6, size=d))
        keys.add((ell, vec))
    return sorted((k, complex(*rng.normal(size=2))) for k in keys)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--terms", type=int, default=400)
    ap.add_argument("--dim", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    if _kernel.BACKEND != "cython":
        print("compiled kernel not available; timing the Python kernel only")
    rng = np.random.default_rng(args.seed)
    nus = sorted(rng.uniform(0.1, 0.9, size=args.dim))
    a = random_items(rng, args.terms, args.dim)
    b = random_items(rng, args.terms, args.dim)
    kernels = {"python": _kernel.py_mul_terms}
    if _kernel.BACKEND == "cython":
        kernels["cython"] = _kernel.mul_terms

    print(f"product of two {args.terms}-term series, {args.dim} eigenvalues")
    timings = {}
    for name, fn in kernels.items():
        timings[name] = best_of(lambda: fn(a, b, nus, 4.0, 1.0, 12.0, 1e-9), args.repeat)
        print(f"  {name:<7} {timings[name] * 1e3:9.2f} ms")
    if len(timings) == 2:
        out_py = kernels["python"](a, b, nus, 4.0, 1.0, 12.0, 1e-9)
        out_c = kernels["cython"](a, b, nus, 4.0, 1.0, 12.0, 1e-9)
        print(f"  speedup {timings['python'] / timings['cython']:.1f}x, "
              f"outputs identical: {out_py == out_c}")

    u = random_reduced_series(rng, nus, n_terms=8)
    policy = TruncationPolicy.for_series(u, 2.5, 12)
    print(f"log(1 + u), {len(u)} terms, cutoff {policy.xi_cutoff}, ell_max {policy.ell_max}")
    saved = _kernel.mul_terms
    try:
        for name, fn in kernels.items():
            _kernel.mul_terms = fn
            t = best_of(lambda: log1p_truncated(u, policy), args.repeat)
            print(f"  {name:<7} {t * 1e3:9.2f} ms  ({len(log1p_truncated(u, policy))} terms)")
    finally:
        _kernel.mul_terms = saved


if __name__ == "__main__":
    main()
