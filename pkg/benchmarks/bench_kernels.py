"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--vertices 150] [--repeat 3]

Both backends are checked for identical output before timings are printed.
"""

import argparse
import random
import time

from facility_game import _backend, all_pairs_shortest_paths, compromise_set, find_nash, payoff_tensor
from facility_game.network import Network
from facility_game.scenario import scenario_from_dict


def random_network(rng, n, extra):
    edges = {}
    for v in range(2, n + 1):
        edges[(rng.randint(1, v - 1), v)] = rng.randint(1, 20)
    while len(edges) < n - 1 + extra:
        u, v = sorted(rng.sample(range(1, n + 1), 2))
        edges.setdefault((u, v), rng.randint(1, 20))
    return Network(n, [(u, v, c) for (u, v), c in edges.items()])


def market(rng, net, owners, sites, prices):
    verts = list(net.vertices)
    doc = {
        "network": {"vertices": net.vertex_count, "edges": [list(e[:3]) for e in net.edges]},
        "raw_points": [[v, rng.randint(1, 5)] for v in rng.sample(verts, 3)],
        "demand_points": [[v, rng.randint(1, 20)] for v in rng.sample(verts, 25)],
        "production_sites": [[v, rng.randint(10, 60)] for v in rng.sample(verts, sites)],
        "distribution_sites": [[v, rng.randint(5, 30)] for v in rng.sample(verts, sites)],
        "prices": sorted(rng.sample(range(5, 40), prices)),
        "owners": owners,
    }
    return scenario_from_dict(doc)


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--vertices", type=int, default=150)
    ap.add_argument("--owners", type=int, default=2)
    ap.add_argument("--sites", type=int, default=4)
    ap.add_argument("--prices", type=int, default=3)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    if _backend.compiled is None:
        raise SystemExit("compiled kernels are not built; run: python3 setup.py build_ext --inplace")

    rng = random.Random(args.seed)
    net = random_network(rng, args.vertices, args.vertices)
    sc = market(rng, net, args.owners, args.sites, args.prices)
    oracle = all_pairs_shortest_paths(net)
    tensors = {}

    cases = [
        ("floyd-warshall", lambda b: all_pairs_shortest_paths(net, backend=b)),
        ("payoff tensor", lambda b: tensors.setdefault(b, payoff_tensor(sc, oracle, backend=b))),
        ("nash", lambda b: find_nash(tensors[b], backend=b)),
        ("compromise", lambda b: compromise_set(tensors[b], backend=b)),
    ]
    print(f"{args.vertices} vertices, {sc.profile_count} joint profiles, {args.owners} owners")
    print(f"{'kernel':<16}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, fn in cases:
        tp, out_p = timed(lambda: fn("python"), args.repeat)
        tc, out_c = timed(lambda: fn("compiled"), args.repeat)
        if out_p != out_c:
            raise SystemExit(f"{name}: backends disagree")
        print(f"{name:<16}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
