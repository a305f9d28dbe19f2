"""Compiled vs pure-Python kernels on catalog tensors.

Usage: python3 benchmarks/bench_kernels.py [--n 6 10 14] [--repeat 5]
"""

import argparse
import statistics
import time

from leibniz import families as F
from leibniz.core import StructureTensor
from leibniz.derivations import derivation_constraints
from leibniz.kernels import compiled_kernels, python_kernels


def _time(fn, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def cases(T: StructureTensor):
    n = T.dim
    _, C = T.scaled
    rows = derivation_constraints(T)
    full = [[int(i == j) for j in range(n)] for i in range(n)]
    return {
        "right identity": lambda K: K.leibniz_defects(n, C, 0),
        "left identity": lambda K: K.leibniz_defects(n, C, 1),
        "operator law": lambda K: K.commutator_defects(n, C, 0),
        "derivation rref": lambda K: K.int_rref(rows, n * n),
        "product span": lambda K: K.product_span(n, C, full, full),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[6, 10, 14])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if compiled_kernels is None:
        print("compiled kernels unavailable; nothing to compare")
        return
    print(f"{'kernel':18s} {'n':>3s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for n in args.n:
        T = F.build(F.sample_params("RThm1Case1", n, 0))
        for name, fn in cases(T).items():
            try:
                want = fn(compiled_kernels)
            except OverflowError:
                tp = _time(lambda: fn(python_kernels), args.repeat)
                print(f"{name:18s} {n:3d} {tp * 1e3:10.2f} {'overflow':>10s} {'(python)':>9s}")
                continue
            assert fn(python_kernels) == want, name
            tp = _time(lambda: fn(python_kernels), args.repeat)
            tc = _time(lambda: fn(compiled_kernels), args.repeat)
            print(f"{name:18s} {n:3d} {tp * 1e3:10.2f} {tc * 1e3:10.2f} {tp / tc:8.1f}x")


if __name__ == "__main__":
    main()
