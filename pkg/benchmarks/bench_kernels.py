"""Time every kernel under both backends.

    python benchmarks/bench_kernels.py [--repeat 3]

The numba column excludes compilation (each kernel is warmed up first).
"""
import argparse
import time

import numpy as np

from nnecap import kernels
from nnecap.graph import build_channel, graph_power, nne_graph
from nnecap.lee import construct_pl


def cases():
    coords = build_channel(3, 12).coords()
    g = nne_graph(2, 6)
    sq = graph_power(nne_graph(2, 4), 2)
    d1 = graph_power(nne_graph(1, 12), 2)
    code = construct_pl(3, 14)
    code2 = construct_pl(2, 25)
    yield "l1_adjacency (3,12): 1728 vertices", lambda b: kernels.l1_adjacency(coords, 2, backend=b)
    yield "strong_product (2,6)^2: 1296 vertices", lambda b: kernels.strong_product_words(
        g.words, g.vertex_count, g.words, g.vertex_count, backend=b)
    yield "MIS (1,12)^2: 144 vertices", lambda b: kernels.max_independent_set_words(
        d1.words, d1.vertex_count, 10**8, backend=b)
    yield "MIS (2,4)^2: 256 vertices", lambda b: kernels.max_independent_set_words(
        sq.words, sq.vertex_count, 10**8, backend=b)
    yield "sphere_cover PL(3,1,14)", lambda b: kernels.sphere_cover_counts(code.array(), 14, backend=b)
    yield "window_counts PL(2,1,25), n=17", lambda b: kernels.window_counts(code2.array(), 25, 17, backend=b)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':42s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speedup':>8s}")
    for name, fn in cases():
        fn("numba")
        t_jit, a = best_of(lambda: fn("numba"), args.repeat)
        t_np, b = best_of(lambda: fn("numpy"), args.repeat)
        same = all(np.array_equal(x, y) for x, y in zip(a, b)) if isinstance(a, tuple) else np.array_equal(a, b)
        flag = "" if same else "  MISMATCH"
        print(f"{name:42s} {t_jit:10.4f} {t_np:10.4f} {t_np / t_jit:8.1f}x{flag}")


if __name__ == "__main__":
    main()
