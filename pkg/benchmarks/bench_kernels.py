"""Compiled vs numpy refinement kernels on generated DH graphs.

    python3 benchmarks/bench_kernels.py --sizes 50,100,200 --count 5
"""
import argparse
import statistics
import time

import numpy as np

from wldh import kernels
from wldh.config import wl_of_graph
from wldh.dh import generate_dh


def time_closure(g, backend, repeat):
    kernels.use_backend(backend)
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        x = wl_of_graph(g)
        best = min(best, time.perf_counter() - t0)
    return best, x


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="50,100,200")
    ap.add_argument("--count", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = sorted(kernels.BACKENDS)
    print(f"backends: {', '.join(backends)}")
    print(f"{'n':>5} " + " ".join(f"{b + ' ms':>14}" for b in backends) + f" {'speedup':>8} {'colors':>8}")
    for n in map(int, args.sizes.split(",")):
        per = {b: [] for b in backends}
        colors = []
        for i in range(args.count):
            g, _ = generate_dh(n, args.seed + i)
            outs = {}
            for b in backends:
                dt, x = time_closure(g, b, args.repeat)
                per[b].append(dt)
                outs[b] = x.color
            ref = outs[backends[0]]
            assert all(np.array_equal(ref, c) for c in outs.values()), "backends disagree"
            colors.append(int(ref.max()) + 1)
        med = {b: statistics.median(v) * 1e3 for b, v in per.items()}
        speed = med["python"] / med["compiled"] if "compiled" in med else 1.0
        print(
            f"{n:>5} " + " ".join(f"{med[b]:>14.2f}" for b in backends)
            + f" {speed:>7.1f}x {statistics.median(colors):>8.0f}"
        )


if __name__ == "__main__":
    main()
