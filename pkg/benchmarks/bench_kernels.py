"""Time the compiled and pure-Python kernels on the same random inputs.

    python3 benchmarks/bench_kernels.py [--n 400] [--p 0.05] [--repeat 3]
"""
import argparse
import timeit

import numpy as np

from alab import _pykernels, coarse

try:
    from alab import _ckernels
except ImportError:
    _ckernels = None


def workload(n: int, p: float, seed: int):
    rng = np.random.default_rng(seed)
    adj = np.triu(rng.random((n, n)) < p, 1)
    adj = adj | adj.T
    ei, ej = np.nonzero(np.triu(adj, 1))
    cx = coarse.VRComplex(1.0, n, np.column_stack([ei, ej]), np.zeros((0, 3), dtype=np.int64), 2)
    cx.triangles = _pykernels.triangles(adj)
    d2, nrows = coarse.boundary_columns(cx, 2)
    return adj, ei, ej, d2, nrows


def bench(impl, data, repeat):
    adj, ei, ej, d2, nrows = data
    n = adj.shape[0]
    jobs = {
        "component_labels": lambda: impl.component_labels(n, ei, ej),
        "triangles": lambda: impl.triangles(adj),
        "f2_rank(d2)": lambda: impl.f2_rank(d2, nrows),
    }
    return {k: min(timeit.repeat(f, number=1, repeat=repeat)) for k, f in jobs.items()}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--p", type=float, default=0.05)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    data = workload(a.n, a.p, a.seed)
    print(f"n={a.n} p={a.p}: {len(data[1])} edges, {len(data[3])} triangles")
    py = bench(_pykernels, data, a.repeat)
    c = bench(_ckernels, data, a.repeat) if _ckernels is not None else None
    print(f"{'kernel':<18}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for k, t in py.items():
        if c is None:
            print(f"{k:<18}{t:12.4f}{'n/a':>12}{'':>10}")
        else:
            print(f"{k:<18}{t:12.4f}{c[k]:12.4f}{t / c[k]:9.1f}x")
    if c is not None:
        adj, ei, ej, d2, nrows = data
        assert _pykernels.f2_rank(d2, nrows) == _ckernels.f2_rank(d2, nrows)
        assert np.array_equal(_pykernels.triangles(adj), _ckernels.triangles(adj))


if __name__ == "__main__":
    main()
