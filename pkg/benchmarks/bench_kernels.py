"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--rmax 60] [--repeat 3]

Times the Cayley-ball BFS and batch canonicalization on the bundled
Z^2 x| C2 example, checks that both backends return identical arrays, and
prints one row per (kernel, backend).
"""
import argparse
import time

import numpy as np

from twistgrowth import kernels
from twistgrowth.files import data_path, load_endo, load_gens, load_group
from twistgrowth.growth import GeneratingSet, _step_tables
from twistgrowth.tc import engine


def best_of(fn, repeat):
    times, result = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t0)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rmax", type=int, default=60)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    G = load_group(data_path("p2_group.json"))
    phi = load_endo(G, data_path("p2_phi3.json"))
    S = GeneratingSet.from_elements(G, load_gens(G, data_path("p2_gens.json")))
    offset, mult = _step_tables(G, S)
    tables = engine(G, phi).tables()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python kernels only")

    rows, outputs = [], {}
    for backend in backends:
        t_bfs, layers = best_of(
            lambda: kernels.bfs_layers(offset, mult, args.rmax, 10**8, backend=backend),
            args.repeat)
        elems = np.concatenate(layers)
        t_can, forms = best_of(lambda: kernels.canonicalize(elems, tables, backend=backend),
                               args.repeat)
        outputs[backend] = (layers, forms)
        rows.append(("bfs", backend, len(elems), t_bfs))
        rows.append(("canonicalize", backend, len(elems), t_can))

    if len(outputs) == 2:
        (la, fa), (lb, fb) = outputs.values()
        same = all(np.array_equal(a, b) for a, b in zip(la, lb)) and np.array_equal(fa, fb)
        print(f"backends agree: {same}")

    base = {k: t for k, b, _, t in rows if b == "python"}
    print(f"{'kernel':<14}{'backend':<9}{'elements':>10}{'seconds':>10}{'speedup':>9}")
    for kernel, backend, n, t in rows:
        print(f"{kernel:<14}{backend:<9}{n:>10}{t:>10.4f}{base[kernel] / t:>8.1f}x")


if __name__ == "__main__":
    main()
