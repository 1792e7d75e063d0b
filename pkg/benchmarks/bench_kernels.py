"""Time each kernel on its numba and fallback paths.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Both paths are called directly, so ``DISTREE_NUMBA`` has no effect here.
Numba compile time is paid by a warm-up call and excluded.
"""
import argparse
import time

import numpy as np

from distree import kernels as K
from distree.campaign import random_graph


def _best(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def cases():
    g = random_graph(200, 3, "gnp", 0.05, 1)
    indptr, indices = g.csr
    adj = g.adjacency_matrix
    d = K._apsp_np(adj).astype(np.float64)
    small = random_graph(10, 2, "gnp", 0.4, 2)
    masks6 = K._connected_masks_nb(6, 0, 1 << 15, 1)[:2000]
    return [
        ("apsp n=200", lambda: K._apsp_nb_entry(adj, indptr, indices), lambda: K._apsp_np_entry(adj, indptr, indices)),
        ("power n=200", lambda: K._power_nb(d, 1e-10, 100000), lambda: K._power_np(d, 1e-10, 100000)),
        ("min_partition n=10", lambda: K._min_partition_nb(small.adjacency_matrix, 10),
         lambda: K._min_partition_py(small.adjacency_matrix, 10)),
        ("connected_masks n=6", lambda: K._connected_masks_nb(6, 0, 1 << 15, 1), lambda: K._connected_masks_np(6, 0, 1 << 15, 1)),
        ("spectral_sweep 2000 g", lambda: K._spectral_sweep_nb(6, masks6, 1e-9, 100000),
         lambda: K._spectral_sweep_np(6, masks6, 1e-9, 100000)),
        ("product_lemma s=3 v=6", lambda: K._product_lemma_nb(3, 6), lambda: K._product_lemma_np(3, 6)),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':<24}{'numba [s]':>12}{'fallback [s]':>14}{'ratio':>9}")
    for name, fast, slow in cases():
        fast()  # compile
        tf, ts = _best(fast, args.repeat), _best(slow, args.repeat)
        print(f"{name:<24}{tf:>12.4f}{ts:>14.4f}{ts / tf:>9.1f}")


if __name__ == "__main__":
    main()
