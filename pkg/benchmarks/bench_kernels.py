"""Compare the compiled and pure-Python kernels on random graphs.

    python3 benchmarks/bench_kernels.py [--nodes 40] [--edges 160] [--repeat 5]

Both backends run the same inputs; results are checked for equality before
any timing is reported.
"""
import argparse
import sys
import timeit

import numpy as np

from supermaze.kernels import available_backends


def make_inputs(rng, n_nodes, n_edges):
    src = rng.integers(n_nodes, size=n_edges).tolist()
    dst = rng.integers(n_nodes, size=n_edges).tolist()
    # cheap-but-costly and slow-but-free edges make the frontier non-trivial
    shortcut = rng.random(n_edges) < 0.4
    dur = np.where(shortcut, rng.uniform(0.1, 1.0, n_edges), rng.uniform(1.0, 10.0, n_edges)).tolist()
    en = np.where(shortcut, rng.uniform(0.5, 3.0, n_edges), 0.0).tolist()
    order = sorted(range(n_edges), key=lambda k: src[k])
    ptr = [0] * (n_nodes + 1)
    for k in range(n_edges):
        ptr[src[k] + 1] += 1
    for i in range(n_nodes):
        ptr[i + 1] += ptr[i]
    return {"n": n_nodes, "src": src, "dst": dst, "dur": dur, "en": en, "ptr": ptr, "adj": order}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--nodes", type=int, default=40)
    p.add_argument("--edges", type=int, default=160)
    p.add_argument("--graphs", type=int, default=5)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=7)
    args = p.parse_args(argv)

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels are not built; only the Python backend is available", file=sys.stderr)
    rng = np.random.default_rng(args.seed)
    cases = [make_inputs(rng, args.nodes, args.edges) for _ in range(args.graphs)]

    def pareto(mod):
        return [mod.pareto_labels(c["n"], c["ptr"], c["adj"], c["dst"], c["dur"], c["en"], 0, c["n"] - 1) for c in cases]

    def floyd(mod):
        return [mod.floyd_warshall(c["n"], c["src"], c["dst"], c["dur"]) for c in cases]

    print(f"{args.graphs} graphs, {args.nodes} nodes, {args.edges} edges, best of {args.repeat}")
    print(f"{'kernel':<16}{'backend':<10}{'seconds':>12}{'speedup':>10}")
    for name, fn in (("pareto_labels", pareto), ("floyd_warshall", floyd)):
        outputs = {b: fn(mod) for b, mod in backends.items()}
        if len({repr(o) for o in outputs.values()}) != 1:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        times = {b: min(timeit.repeat(lambda m=mod: fn(m), number=1, repeat=args.repeat)) for b, mod in backends.items()}
        base = times["python"]
        for b, t in times.items():
            print(f"{name:<16}{b:<10}{t:>12.5f}{base / t:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
