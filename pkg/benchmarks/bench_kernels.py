"""Compare the compiled pivot kernel with the pure-Python fallback.

Run: python benchmarks/bench_kernels.py [--repeat N]

Measured per backend: raw pivots on random integer tableaux, end-to-end
no-gain checks on seeded random instances, and larger dense LPs.
"""

import argparse
import random
import sys
import time

from ambipersuade import _tableau_py, exact_lp
from ambipersuade.premium import check_no_gain
from ambipersuade.propcheck import GenConfig, gen_ambiguous, gen_game

try:
    from ambipersuade import _tableau
except ImportError:
    _tableau = None


def random_tableau(rng, n_rows, n_cols, bound):
    return [[rng.randint(-bound, bound) or 1 for _ in range(n_cols)] for _ in range(n_rows)]


def bench_pivots(pivot, repeat, bound):
    rng = random.Random(0)
    tableaux = [random_tableau(rng, 12, 30, bound) for _ in range(repeat)]
    start = time.perf_counter()
    for rows in tableaux:
        d, used = 1, set()
        for k in range(6):
            c = next(j for j in range(len(rows[k])) if j not in used and rows[k][j])
            used.add(c)
            d = pivot(rows, k, c, d)
    return time.perf_counter() - start


def bench_solves(pivot, n):
    original = exact_lp.pivot
    exact_lp.pivot = pivot
    try:
        instances = []
        for i in range(n):
            config = GenConfig(seed=i)
            game = gen_game(config)
            instances.append((game, gen_ambiguous(config, game)))
        start = time.perf_counter()
        for game, ambig in instances:
            check_no_gain(game, ambig)
        return time.perf_counter() - start
    finally:
        exact_lp.pivot = original


def bench_large_lp(pivot, n):
    """Random dense packing LPs, large enough for pivoting to dominate."""
    rng = random.Random(1)
    lps = []
    for _ in range(n):
        rows = [([rng.randint(0, 9) for _ in range(40)], exact_lp.LE, rng.randint(50, 100)) for _ in range(30)]
        lps.append(exact_lp.LinearProgram([rng.randint(1, 9) for _ in range(40)], rows))
    original = exact_lp.pivot
    exact_lp.pivot = pivot
    try:
        start = time.perf_counter()
        for lp in lps:
            exact_lp.solve_lp(lp)
        return time.perf_counter() - start
    finally:
        exact_lp.pivot = original


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=2000)
    parser.add_argument("--instances", type=int, default=200)
    args = parser.parse_args(argv)
    backends = [("python", _tableau_py.pivot)]
    if _tableau is None:
        print("compiled kernel not built; only the fallback is timed", file=sys.stderr)
    else:
        backends.insert(0, ("cython", _tableau.pivot))

    print(f"{'benchmark':<28}" + "".join(f"{name:>12}" for name, _ in backends))
    rows = [
        (f"pivots, small ints x{args.repeat}", lambda p: bench_pivots(p, args.repeat, 50)),
        (f"pivots, 80-bit ints x{args.repeat}", lambda p: bench_pivots(p, args.repeat, 2 ** 80)),
        (f"no-gain solves x{args.instances}", lambda p: bench_solves(p, args.instances)),
        ("30x40 LP solves x10", lambda p: bench_large_lp(p, 10)),
    ]
    for label, run in rows:
        times = [run(p) for _, p in backends]
        line = f"{label:<28}" + "".join(f"{t:>11.3f}s" for t in times)
        if len(times) == 2:
            line += f"   speedup {times[1] / times[0]:.2f}x"
        print(line)


if __name__ == "__main__":
    main()
