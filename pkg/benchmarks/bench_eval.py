"""Time the numba and numpy evaluation kernels on the same tables.

    python3 benchmarks/bench_eval.py --points 1000 10000 --repeat 5
"""

import argparse
import time

import numpy as np

from pdde import _kernels
from pdde.fixtures import example1_pair, example2_pair
from pdde.generators import random_exppoly


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _cases(rng):
    yield "example1 f1", example1_pair()[0]
    yield "example2 f1", example2_pair()[0]
    yield "random dim4 5 terms", random_exppoly(rng, dim=4, max_terms=5)
    f = random_exppoly(rng, dim=4, max_terms=5)
    yield "random squared", f * f


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, nargs="+", default=[1000, 10000, 100000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    have_numba = _kernels.numba_available()
    if not have_numba:
        print("numba not importable; only the numpy backend is timed")
    warm = example1_pair()[0].table()
    if have_numba:
        t0 = time.perf_counter()
        _kernels.evaluate_table(np.zeros((1, 3), dtype=complex), *warm, backend="numba")
        print(f"numba first call (compile or cache load): {time.perf_counter() - t0:.3f} s")

    print(f"{'case':<22}{'rows':>6}{'points':>9}{'numpy s':>11}{'numba s':>11}{'speedup':>9}{'max diff':>11}")
    for name, f in _cases(rng):
        table = f.table()
        for n in args.points:
            pts = rng.uniform(-1, 1, (n, f.dim)) + 1j * rng.uniform(-1, 1, (n, f.dim))
            t_np = _best(lambda: _kernels.evaluate_table(pts, *table, backend="numpy"), args.repeat)
            ref, _ = _kernels.evaluate_table(pts, *table, backend="numpy")
            if have_numba:
                t_nb = _best(lambda: _kernels.evaluate_table(pts, *table, backend="numba"), args.repeat)
                got, _ = _kernels.evaluate_table(pts, *table, backend="numba")
                diff = float(np.max(np.abs(got - ref) / (1 + np.abs(ref))))
                print(f"{name:<22}{len(table[1]):>6}{n:>9}{t_np:>11.5f}{t_nb:>11.5f}{t_np / t_nb:>9.2f}{diff:>11.1e}")
            else:
                print(f"{name:<22}{len(table[1]):>6}{n:>9}{t_np:>11.5f}{'-':>11}{'-':>9}{'-':>11}")


if __name__ == "__main__":
    main()
