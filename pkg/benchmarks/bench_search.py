"""Compare the compiled and pure-Python search kernels.

    python3 benchmarks/bench_search.py [--repeat N]

Both kernels walk the same tree, so node counts must agree; the script
checks that and prints nodes/s for each.
"""
import argparse
import time

from leafforge import search
from leafforge.distributions import foliated_genus_manifold, product_manifold, solve_pairs
from leafforge.documents import load_document


def cases():
    F = foliated_genus_manifold()
    yield "foliated B=3 all pairs", F, 3, None
    yield "foliated B=5 all pairs", F, 5, None
    yield "T2xSigma1 B=3 first 200", product_manifold(1), 3, 200
    yield "K3-like B=6 first 50", load_document("fixture:k3_like").model, 6, 50


def kernel_cases():
    G = [[0] * 6 for _ in range(6)]
    for i in range(6):
        G[i][i] = 1 if i < 3 else -1
    yield "3<1>+3<-1> q=0 box 9", G, 9, 0
    yield "3<1>+3<-1> q=8 box 13", G, 13, 8


def timed_kernel(G, B, t, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        stats = {}
        t0 = time.perf_counter()
        n = sum(1 for _ in search.iter_solutions(G, [-B] * len(G), [B] * len(G), t,
                                                 backend=backend, stats=stats))
        best = min(best, time.perf_counter() - t0)
    return best, n, stats["nodes"]


def timed(M, bound, limit, backend, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = solve_pairs(M, (), bound, limit=limit, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, res


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if search.BACKEND != "cython":
        print("compiled kernel not available; rebuild with `pip install -e . --no-build-isolation`")
        return
    print("raw kernel: enumerate every x with x^T G x = q")
    print(f"{'case':28} {'python s':>10} {'cython s':>10} {'speedup':>8} {'nodes':>10}")
    for name, G, B, t in kernel_cases():
        tp, n_p, nodes_p = timed_kernel(G, B, t, "python", args.repeat)
        tc, n_c, nodes_c = timed_kernel(G, B, t, "cython", args.repeat)
        assert (n_p, nodes_p) == (n_c, nodes_c), name
        print(f"{name:28} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f} {nodes_c:10d}")
    print()
    print("end to end: solve_pairs (includes per-pair verification in Python)")
    print(f"{'case':28} {'python s':>10} {'cython s':>10} {'speedup':>8} {'nodes':>10}")
    for name, M, bound, limit in cases():
        tp, rp = timed(M, bound, limit, "python", args.repeat)
        tc, rc = timed(M, bound, limit, "cython", args.repeat)
        assert rp.pairs == rc.pairs and rp.nodes == rc.nodes, name
        print(f"{name:28} {tp:10.4f} {tc:10.4f} {tp / tc:8.1f} {rc.nodes:10d}")


if __name__ == "__main__":
    main()
