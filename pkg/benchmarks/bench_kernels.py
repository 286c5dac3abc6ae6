"""Benchmark the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Times the three hot kernels (exhaustive Cheeger enumeration, exact minimum
s-cut, connected-subgraph enumeration) on representative instances and
prints a speedup table. Results are asserted identical across backends.
"""

import argparse
import time

from sepprof import kernels
from sepprof.graphs import build_family, cartesian_power


def instances():
    c4sq = cartesian_power(build_family("cycle", 4), 2).neighbor_masks
    g45 = build_family("grid", 4, 5).neighbor_masks
    q4 = build_family("hypercube", 4).neighbor_masks
    g66 = build_family("grid", 6, 6).neighbor_masks
    yield "cheeger C4^2 (16v, plain)", lambda be: kernels.cheeger_exhaustive(
        c4sq, 16, 0, backend=be)
    yield "cheeger grid 4x5 (20v, majored)", lambda be: kernels.cheeger_exhaustive(
        g45, 20, 1, backend=be)
    yield "cheeger grid 4x5 (20v, edge)", lambda be: kernels.cheeger_exhaustive(
        g45, 20, 2, backend=be)
    yield "min 1/4-cut grid 4x5", lambda be: kernels.min_cut_exact(
        g45, 20, 1, 4, 20, 10 ** 8, backend=be)
    yield "min 1/2-cut hypercube(4)", lambda be: kernels.min_cut_exact(
        q4, 16, 1, 2, 16, 10 ** 8, backend=be)
    yield "connected subsets grid 6x6 (<=8v)", lambda be: kernels.connected_subsets(
        g66, 36, 8, 10 ** 7, backend=be)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = kernels.available_backends()
    if "compiled" not in backends:
        print("compiled backend unavailable; timing the fallback only")
    print(f"{'instance':40s}" + "".join(f"{b:>12s}" for b in backends)
          + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in instances():
        times = {}
        results = {}
        for backend in backends:
            best = float("inf")
            for _ in range(args.repeat):
                start = time.perf_counter()
                results[backend] = fn(backend)
                best = min(best, time.perf_counter() - start)
            times[backend] = best
        assert len(set(map(str, results.values()))) == 1, f"mismatch on {name}"
        line = f"{name:40s}" + "".join(f"{times[b] * 1e3:10.2f}ms" for b in backends)
        if len(backends) > 1:
            line += f"{times['python'] / times['compiled']:11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
