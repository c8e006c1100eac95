"""Compiled versus pure-Python kernels, plus TS' membership on top of each.

    python benchmarks/bench_kernels.py --lengths 1e3,1e4,1e5 --number 5
"""

import argparse
import timeit

import numpy as np

from freefill import kernels
from freefill.genericity import in_TS_prime, ts_checker
from freefill.words import cyclic_core, random_reduced_word


def cases(w, rank):
    core = cyclic_core(w)
    return {
        "free_reduce": lambda: kernels.free_reduce(w + w[::-1]),
        "least_rotation": lambda: kernels.least_rotation(core),
        "smallest_period": lambda: kernels.smallest_period(core),
        "cyclic_counts": lambda: kernels.cyclic_counts(core, rank),
        "is_rotation": lambda: kernels.is_rotation(core, core[1:] + core[:1]),
        "in_TS_prime": lambda: in_TS_prime(w, rank),
    }


def best_us(fn, number, repeat):
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number * 1e6


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lengths", default="1e3,1e4,1e5")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--number", type=int, default=5)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    impls = ["python"] + (["cython"] if kernels.compiled_kernels is not None else [])
    if len(impls) == 1:
        print("# compiled kernels not built; timing the fallback only")
    ts_checker(args.rank)
    rng = np.random.default_rng(args.seed)
    print("kernel,n," + ",".join(f"{i}_us" for i in impls) + (",speedup" if len(impls) == 2 else ""))
    previous = kernels.IMPLEMENTATION
    try:
        for n in (int(float(x)) for x in args.lengths.split(",")):
            w = random_reduced_word(n, args.rank, rng)
            timings = {}
            for impl in impls:
                kernels.select(impl)
                for name, fn in cases(w, args.rank).items():
                    timings.setdefault(name, []).append(best_us(fn, args.number, args.repeat))
            for name, ts in timings.items():
                cols = ",".join(f"{t:.1f}" for t in ts)
                extra = f",{ts[0] / ts[1]:.1f}" if len(ts) == 2 else ""
                print(f"{name},{n},{cols}{extra}")
    finally:
        kernels.select(previous)


if __name__ == "__main__":
    main()
