"""Time the compiled and pure-Python kernels on the same seeded inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--json]

Each row checks that both backends return the same result before timing.
"""

import argparse
import json
import time

from blockset import kernels
from blockset.generators import random_graph, random_hypergraph


def _cases():
    for n in (14, 18, 20):
        G = random_graph(n, 0.3, seed=n)
        yield f"alpha_table n={n}", "alpha_table", (list(G.adj), n)
    for n in (30, 45, 60):
        G = random_graph(n, 0.15, seed=n)
        yield f"alpha_bb n={n}", "alpha_bb", (list(G.adj), G.vertex_mask)
    for n in (24, 32):
        G = random_graph(n, 0.25, seed=n)
        a = kernels.alpha_bb(list(G.adj), G.vertex_mask)
        yield f"max_ind_sets n={n}", "maximum_independent_sets", (list(G.adj), G.vertex_mask, a)
    for n, m in ((14, 20), (18, 30)):
        H = random_hypergraph(n, m, 4, seed=n)
        yield f"max_min_transversal n={n} m={m}", "max_minimal_transversal", (list(H.masks), n)
    for n in (14, 18):
        G = random_graph(n, 0.3, seed=n)
        yield f"max_min_dominating n={n}", "max_minimal_dominating", (list(G.adj), n)


def _time(fn, args, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    mods = kernels.backends()
    if "cython" not in mods:
        print("compiled backend not built; timing the pure-Python kernels only")
    rows = []
    for label, name, fargs in _cases():
        row = {"case": label}
        results = {}
        for bname, mod in mods.items():
            t, out = _time(getattr(mod, name), fargs, args.repeat)
            row[bname + "_ms"] = round(t * 1000.0, 3)
            results[bname] = out
        vals = list(results.values())
        if any(v != vals[0] for v in vals[1:]):
            raise SystemExit(f"{label}: backends disagree")
        if "cython" in results:
            row["speedup"] = round(row["python_ms"] / max(row["cython_ms"], 1e-6), 1)
        rows.append(row)

    if args.json:
        for r in rows:
            print(json.dumps(r))
        return
    cols = ["case"] + [b + "_ms" for b in mods] + (["speedup"] if "cython" in mods else [])
    print("  ".join(f"{c:>32}" if c == "case" else f"{c:>12}" for c in cols))
    for r in rows:
        print("  ".join(f"{r[c]:>32}" if c == "case" else f"{r[c]:>12}" for c in cols))


if __name__ == "__main__":
    main()
