"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Inputs are the integer matrices the package actually works on: the scaled
symmetric part of the full collocation matrix and interior blocks of N.
"""

import argparse
import time

from pmlab import kernels
from pmlab.combinatorics import GammaSet
from pmlab.matrices import build_N, full_M


def _sym(d):
    e = full_M(d).entries
    n = len(e)
    return [[e[r][c] + e[c][r] for c in range(n)] for r in range(n)]


def cases():
    S10, S14 = _sym(10), _sym(14)
    N6 = build_N(GammaSet.zero_class(6, 0)).rows()
    N7 = build_N(GammaSet.zero_class(7, 0)).rows()
    return [
        ("det N interior d=7", lambda k: k.det(kernels.coerce(N7))),
        ("leading minors sym d=10", lambda k: k.leading_minors(kernels.coerce(S10))),
        ("leading minors sym d=14", lambda k: k.leading_minors(kernels.coerce(S14))),
        ("inertia sym d=10", lambda k: k.inertia(kernels.coerce(S10))),
        ("scan N interior d=6", lambda k: k.scan_minors(N6, 0, 2 ** len(N6), None, 1, 16)),
        ("scan N interior d=7", lambda k: k.scan_minors(N7, 0, 2 ** len(N7), None, 1, 16)),
    ]


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    mods = kernels.backends()
    names = sorted(mods)
    print(f"{'case':28s}" + "".join(f"{n:>12s}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases():
        results = {n: fn(mods[n]) for n in names}
        if len({repr(r) for r in results.values()}) != 1:
            raise SystemExit(f"backends disagree on {label}")
        times = {n: timeit(lambda: fn(mods[n]), args.repeat) for n in names}
        line = f"{label:28s}" + "".join(f"{times[n]*1000:10.1f}ms" for n in names)
        if len(names) == 2:
            line += f"{times['python'] / times['cython']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
