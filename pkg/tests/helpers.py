"""Deterministic graph builders shared by the tests."""

import random

from mwis import WeightedGraph


def random_graph(seed, n, p, wmax=200):
    rng = random.Random(seed)
    weights = [rng.randint(1, wmax) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return WeightedGraph(weights, edges)


def gnm_graph(seed, n, m, wmax=200):
    rng = random.Random(seed)
    weights = [rng.randint(1, wmax) for _ in range(n)]
    edges = set()
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return WeightedGraph(weights, sorted(edges))


def random_tree(seed, n, wmax=200):
    rng = random.Random(seed)
    weights = [rng.randint(1, wmax) for _ in range(n)]
    edges = [(rng.randint(0, v - 1), v) for v in range(1, n)]
    return WeightedGraph(weights, edges)


def path_graph(weights):
    return WeightedGraph(weights, [(i, i + 1) for i in range(len(weights) - 1)])


def cycle_graph(weights):
    n = len(weights)
    return WeightedGraph(weights, [(i, (i + 1) % n) for i in range(n)])


def star_graph(center_weight, leaf_weights):
    return WeightedGraph([center_weight] + list(leaf_weights),
                         [(0, i + 1) for i in range(len(leaf_weights))])


def clique_graph(weights):
    n = len(weights)
    return WeightedGraph(weights, [(u, v) for u in range(n) for v in range(u + 1, n)])


def twin_gadget_graph(seed, wmax=8):
    """Random graph with a planted degree-3 twin pair over an independent
    neighborhood."""
    rng = random.Random(seed)
    base = rng.randint(3, 8)
    weights = [rng.randint(1, wmax) for _ in range(base + 2)]
    u, v = base, base + 1
    shared = rng.sample(range(base), 3)
    edges = set()
    for a in range(base):
        for b in range(a + 1, base):
            if a in shared and b in shared:
                continue  # keep the shared neighborhood independent
            if rng.random() < 0.3:
                edges.add((a, b))
    for s in shared:
        edges.add((min(s, u), max(s, u)))
        edges.add((min(s, v), max(s, v)))
    return WeightedGraph(weights, sorted(edges))


def copy_graph(g):
    verts = sorted(g.alive_vertices())
    index = {v: i for i, v in enumerate(verts)}
    edges = [(index[u], index[v]) for u in verts for v in g.neighbors(u) if u < v]
    return WeightedGraph([g.weight(v) for v in verts], edges)


def structured_family(wmax=200):
    """Small named instances exercising every reduction shape."""
    out = {
        "path3": path_graph([2, 3, 2]),
        "path3_heavy_mid": path_graph([1, 5, 1]),
        "path5": path_graph([2, 5, 2, 5, 2]),
        "cycle4": cycle_graph([2, 3, 2, 3]),
        "cycle5_unit": cycle_graph([1, 1, 1, 1, 1]),
        "star": star_graph(10, [3, 3, 3]),
        "star_light_center": star_graph(1, [2, 2, 2]),
        "clique4": clique_graph([7, 7, 7, 7]),
        "clique_mixed": clique_graph([5, 3, 2]),
        # isolated weight transfer shape: clique {0,1,2}, 2 wired outside to 3
        "transfer": WeightedGraph([4, 3, 6, 5],
                                  [(0, 1), (0, 2), (1, 2), (2, 3)]),
        # twins 0,1 over independent {2,3,4} with a fringe vertex 5
        "twin_fold": WeightedGraph([4, 3, 3, 3, 3, 9],
                                   [(0, 2), (0, 3), (0, 4),
                                    (1, 2), (1, 3), (1, 4), (4, 5)]),
        "twin_include": WeightedGraph([5, 5, 3, 3, 3],
                                      [(0, 2), (0, 3), (0, 4),
                                       (1, 2), (1, 3), (1, 4)]),
        # 3 dominates 0 (N[0] superset of N[3], w equal)
        "domination": WeightedGraph([2, 3, 4, 2],
                                    [(0, 1), (0, 2), (0, 3), (1, 3)]),
    }
    return out
