"""Small deterministic graph builders shared across test modules."""

from rigidkit import (
    BipartiteRegularGraph,
    RegularGraph,
    is_connected,
    perturb_edges,
    random_bipartite_regular,
    random_regular,
)


def cycle_graph(n: int) -> RegularGraph:
    return RegularGraph.from_edges(n, 2, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> RegularGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return RegularGraph.from_edges(n, n - 1, edges)


def matching_pair():
    """Two edge-disjoint perfect matchings on 4 vertices (classes {0,1} | {2,3})."""
    g = BipartiteRegularGraph.from_edges(4, 1, [(0, 2), (1, 3)])
    h = BipartiteRegularGraph.from_edges(4, 1, [(0, 3), (1, 2)])
    return g, h


def four_cycles():
    """All three labeled 4-cycles on {0, 1, 2, 3}."""
    a = RegularGraph.from_edges(4, 2, [(0, 1), (1, 2), (2, 3), (0, 3)])
    b = RegularGraph.from_edges(4, 2, [(0, 1), (1, 3), (2, 3), (0, 2)])
    c = RegularGraph.from_edges(4, 2, [(0, 2), (1, 2), (1, 3), (0, 3)])
    return a, b, c


def connected_regular(n: int, d: int, seed: int) -> RegularGraph:
    for s in range(seed, seed + 64):
        g = random_regular(n, d, seed=s)
        if is_connected(g):
            return g
    raise AssertionError(f"no connected sample near seed {seed}")


def connected_pair(n: int, d: int, swaps: int, seed: int):
    """A connected base graph and a connected switch-perturbation of it."""
    g = connected_regular(n, d, seed)
    for s in range(seed + 1000, seed + 1064):
        h = perturb_edges(g, swaps, seed=s)
        if is_connected(h):
            return g, h
    raise AssertionError(f"no connected perturbation near seed {seed}")


def bipartite_pair(n: int, d: int, swaps: int, seed: int):
    g = random_bipartite_regular(n, d, seed=seed)
    h = perturb_edges(g, swaps, seed=seed + 1000)
    return g, h


def connected_bipartite_pair(n: int, d: int, swaps: int, seed: int):
    for s in range(seed, seed + 64):
        g = random_bipartite_regular(n, d, seed=s)
        if not is_connected(g):
            continue
        for t in range(s + 1000, s + 1064):
            h = perturb_edges(g, swaps, seed=t)
            if is_connected(h):
                return g, h
    raise AssertionError(f"no connected bipartite pair near seed {seed}")
