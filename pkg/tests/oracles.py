"""Independent reference implementations used only by the tests."""
import itertools
import random

import networkx as nx
import numpy as np

from nnecap.graph import ConfusionGraph


def alpha_by_subsets(g: ConfusionGraph) -> int:
    """Literal scan of all 2^V vertex subsets."""
    n = g.vertex_count
    edges = g.edges()
    best = 0
    for mask in range(1 << n):
        if bin(mask).count("1") <= best:
            continue
        if all(not (mask >> i & 1 and mask >> j & 1) for i, j in edges):
            best = bin(mask).count("1")
    return best


def alpha_exhaustive(adj: list[set[int]]) -> int:
    """Include/exclude recursion with no bounding at all."""

    def rec(cands: frozenset) -> int:
        if not cands:
            return 0
        v = min(cands)
        rest = cands - {v}
        return max(rec(rest), 1 + rec(rest - adj[v]))

    return rec(frozenset(range(len(adj))))


def adjacency_sets(g: ConfusionGraph) -> list[set[int]]:
    return [set(g.neighbors(i)) for i in range(g.vertex_count)]


def alpha_networkx(g: ConfusionGraph) -> int:
    comp = nx.complement(g.to_networkx())
    _, w = nx.max_weight_clique(comp, weight=None)
    return w


def random_graph(n: int, p: float, seed: int) -> ConfusionGraph:
    rng = random.Random(seed)
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return ConfusionGraph.from_edges(n, edges)


def lp_float(g: ConfusionGraph, cliques=None) -> float:
    """Fractional clique cover number with scipy's HiGHS, cliques from networkx."""
    from scipy.optimize import linprog

    if cliques is None:
        cliques = [sorted(c) for c in nx.find_cliques(g.to_networkx())]
    A = np.zeros((g.vertex_count, len(cliques)))
    for j, c in enumerate(cliques):
        A[list(c), j] = 1.0
    res = linprog(np.ones(len(cliques)), A_ub=-A, b_ub=-np.ones(g.vertex_count),
                  bounds=(0, None), method="highs")
    assert res.status == 0
    return res.fun


def complete_graph(m: int) -> ConfusionGraph:
    return ConfusionGraph.from_edges(m, itertools.combinations(range(m), 2))


def cycle_graph(m: int) -> ConfusionGraph:
    return ConfusionGraph.from_edges(m, [(i, (i + 1) % m) for i in range(m)])
