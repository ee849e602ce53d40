"""Compare the numba and pure-numpy separation kernels.

Usage: python benchmarks/bench_kernels.py [--sizes 6 8 10] [--repeat 3] [--json out.json]

Kernel timings call both implementations in-process.  The end-to-end row
runs FCI on random graphs in a subprocess per backend, toggled with
CYCLICFCI_DISABLE_NUMBA.
"""

import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np

from cyclicfci import kernels
from cyclicfci.generators import random_dmg
from cyclicfci.separation import _same_matrix

E2E_SNIPPET = """
import time
from cyclicfci.generators import random_dmg
from cyclicfci.discovery import fci, graph_oracle
from cyclicfci.kernels import BACKEND
graphs = [random_dmg({n}, 0.25, 0.1, seed=s) for s in range({count})]
fci(graph_oracle(graphs[0]))  # warm-up / jit
t = time.perf_counter()
for G in graphs:
    fci(graph_oracle(G))
print(BACKEND, time.perf_counter() - t)
"""


def best_of(func, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        func()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_sweep(n, repeat, seed=0):
    G = random_dmg(n, 0.25, 0.15, seed=seed)
    d = np.ascontiguousarray(G.dir_matrix)
    b = np.ascontiguousarray(G.bi_matrix)
    same = np.ascontiguousarray(_same_matrix(G, "sigma"))
    anc = np.ascontiguousarray(G.anc_matrix)
    loop = kernels.sweep_loop
    loop(d, b, same, anc, 0, 1)  # compile
    a = loop(d, b, same, anc, 0, 1)
    v = kernels.sweep_vectorized(d, b, same, anc, 0, 1)
    assert np.array_equal(np.sort(a), np.sort(v)), "backends disagree"
    t_loop = best_of(lambda: loop(d, b, same, anc, 0, 1), repeat)
    t_vec = best_of(lambda: kernels.sweep_vectorized(d, b, same, anc, 0, 1), repeat)
    return t_loop, t_vec


def bench_closure(n, repeat, seed=0):
    d = np.ascontiguousarray(random_dmg(n, 3.0 / n, 0.0, seed=seed).dir_matrix)
    kernels.closure_loop(d)
    assert np.array_equal(kernels.closure_loop(d), kernels.closure_vectorized(d))
    return best_of(lambda: kernels.closure_loop(d), repeat), best_of(lambda: kernels.closure_vectorized(d), repeat)


def bench_end_to_end(n, count):
    out = {}
    for disable in ("0", "1"):
        env = dict(os.environ, CYCLICFCI_DISABLE_NUMBA=disable)
        res = subprocess.run(
            [sys.executable, "-c", E2E_SNIPPET.format(n=n, count=count)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        backend, secs = res.stdout.split()
        out[backend] = float(secs)
    return out.get("numba"), out.get("numpy")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10, 12])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--e2e-n", type=int, default=7)
    ap.add_argument("--e2e-count", type=int, default=20)
    ap.add_argument("--json", default=None)
    args = ap.parse_args(argv)

    if kernels.sweep_loop is kernels._sweep_impl:
        print("numba is not available; the 'numba' column times the uncompiled loop kernels")

    rows = []
    print(f"{'kernel':<12}{'n':>4}{'numba (s)':>14}{'numpy (s)':>14}{'speedup':>10}")
    for n in args.sizes:
        for name, fn in (("sweep", bench_sweep), ("closure", bench_closure)):
            t_loop, t_vec = fn(n, args.repeat)
            rows.append({"kernel": name, "n": n, "numba": t_loop, "numpy": t_vec})
            print(f"{name:<12}{n:>4}{t_loop:>14.5f}{t_vec:>14.5f}{t_vec / t_loop:>10.1f}x")
    t_nb, t_np = bench_end_to_end(args.e2e_n, args.e2e_count)
    if t_nb and t_np:
        rows.append({"kernel": "fci-e2e", "n": args.e2e_n, "numba": t_nb, "numpy": t_np})
        print(f"{'fci-e2e':<12}{args.e2e_n:>4}{t_nb:>14.5f}{t_np:>14.5f}{t_np / t_nb:>10.1f}x")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
