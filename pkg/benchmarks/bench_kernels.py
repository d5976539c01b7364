"""Compiled vs pure-Python kernels on grid lattices and the census workload.

Usage: python3 benchmarks/bench_kernels.py [--repeat N] [--sizes 6,10,16]
"""

import argparse
import sys
import timeit

import numpy as np

from planarlat import _accel, _pykernels
from planarlat.grid import product_of_chains

try:
    from planarlat import _ckernels
except ImportError:
    _ckernels = None


def inputs(k):
    d = product_of_chains(k, k)
    ptr, idx = _accel.csr(d.up)
    rot = [list(d.down[x]) + list(reversed(d.up[x])) for x in range(d.n)]
    rptr, ridx = _accel.csr(rot)
    leq = _pykernels.leq_matrix(d.n, ptr, idx)
    join, _ = _pykernels.join_meet_tables(leq)
    return d.n, ptr, idx, rptr, ridx, leq, join


def calls(mod, n, ptr, idx, rptr, ridx, leq, join):
    return {
        "leq_matrix": lambda: mod.leq_matrix(n, ptr, idx),
        "join_meet_tables": lambda: mod.join_meet_tables(leq),
        "count_faces": lambda: mod.count_faces(n, rptr, ridx),
        "semimodular": lambda: mod.semimodular(n, ptr, idx, join),
    }


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--sizes", default="4,8,12")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; only the pure-Python backend is available")
        return 1
    print(f"{'kernel':<18}{'n':>5}{'python ms':>12}{'cython ms':>12}{'speedup':>10}  agree")
    ok = True
    for k in (int(s) for s in args.sizes.split(",")):
        data = inputs(k)
        py, cy = calls(_pykernels, *data), calls(_ckernels, *data)
        for name in py:
            agree = same(py[name](), cy[name]())
            ok &= agree
            tp = min(timeit.repeat(py[name], number=1, repeat=args.repeat)) * 1e3
            tc = min(timeit.repeat(cy[name], number=1, repeat=args.repeat)) * 1e3
            print(f"{name:<18}{data[0]:>5}{tp:>12.3f}{tc:>12.3f}{tp / tc:>10.1f}  {agree}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
