"""Compare the pure-Python and compiled community-detection kernels.

Generates planted-partition mention graphs of growing size, runs the full
Louvain pipeline once per backend, and prints a timing table.  Both
backends must produce bitwise-identical partitions; the table flags any
divergence.

Usage:
    python benchmarks/bench_louvain.py
    python benchmarks/bench_louvain.py --sizes 1000,5000,20000 --repeats 5
"""

import argparse
import time

import numpy as np

from copnet import _kernels
from copnet.community import louvain
from copnet.temporal_graph import make_snapshot


def planted_graph(rng, n, groups=8, avg_degree=8, p_intra=0.8):
    """Directed weighted graph with ``groups`` planted blocks on n nodes."""
    size = max(n // groups, 1)
    m = n * avg_degree
    src = rng.integers(0, n, size=m)
    block = src // size
    offset = rng.integers(1, size, size=m) if size > 1 else np.ones(m, dtype=np.int64)
    dst_in = np.minimum(block * size + (src % size + offset) % size, n - 1)
    dst_out = rng.integers(0, n, size=m)
    dst = np.where(rng.random(m) < p_intra, dst_in, dst_out)
    weights = rng.uniform(0.5, 1.5, size=m)
    return make_snapshot(0, list(zip(src.tolist(), dst.tolist(), weights.tolist())))


def run_backend(name, snapshot, seed, repeats):
    """Best-of-``repeats`` wall time plus the result for cross-checking."""
    kernel = _kernels.IMPLEMENTATIONS[name]
    original = _kernels.local_move_sweeps
    _kernels.local_move_sweeps = kernel
    try:
        result, best = None, float("inf")
        for _ in range(repeats):
            started = time.perf_counter()
            result = louvain(snapshot, seed=seed)
            best = min(best, time.perf_counter() - started)
        return best, result
    finally:
        _kernels.local_move_sweeps = original


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="500,1000,2000,4000,8000",
                        help="comma-separated node counts")
    parser.add_argument("--avg-degree", type=int, default=8,
                        help="arcs per node in the synthetic graphs")
    parser.add_argument("--groups", type=int, default=8,
                        help="planted blocks per graph")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--repeats", type=int, default=3,
                        help="timed runs per backend; best is reported")
    args = parser.parse_args(argv)

    backends = sorted(_kernels.IMPLEMENTATIONS)
    print(f"available backends: {', '.join(backends)} (active: {_kernels.BACKEND})")
    if "cython" not in _kernels.IMPLEMENTATIONS:
        print("compiled kernel not built; timing the pure-Python backend only")

    header = f"{'n':>8} {'arcs':>9} {'python':>10}"
    if "cython" in _kernels.IMPLEMENTATIONS:
        header += f" {'compiled':>10} {'speedup':>8} {'identical':>9}"
    print(header)

    rng = np.random.default_rng(args.seed)
    for n in [int(s) for s in args.sizes.split(",")]:
        snapshot = planted_graph(rng, n, groups=args.groups,
                                 avg_degree=args.avg_degree)
        t_py, r_py = run_backend("python", snapshot, args.seed, args.repeats)
        line = f"{n:>8} {snapshot.adjacency.nnz:>9} {t_py:>9.3f}s"
        if "cython" in _kernels.IMPLEMENTATIONS:
            t_cy, r_cy = run_backend("cython", snapshot, args.seed, args.repeats)
            same = (np.array_equal(r_py.final_partition.assignment,
                                   r_cy.final_partition.assignment)
                    and r_py.final_partition.modularity
                    == r_cy.final_partition.modularity)
            line += f" {t_cy:>9.3f}s {t_py / t_cy:>7.1f}x {'yes' if same else 'NO':>9}"
        print(line, flush=True)


if __name__ == "__main__":
    main()
