"""Shared random-instance generators and small brute-force oracles."""

from __future__ import annotations

import itertools
import random

from graphelim.graph import FactorGraph, Kind


def scalar_graph(n: int, edges) -> FactorGraph:
    g = FactorGraph()
    for _ in range(n):
        g.add_variable(Kind.POSE, 1)
    for e in edges:
        g.add_factor(e)
    return g


def complete_graph(n: int) -> FactorGraph:
    return scalar_graph(n, itertools.combinations(range(n), 2))


def path_graph(n: int) -> FactorGraph:
    return scalar_graph(n, zip(range(n - 1), range(1, n)))


def random_scalar_graph(rng: random.Random, n: int, density: float) -> FactorGraph:
    g = FactorGraph()
    for _ in range(n):
        g.add_variable(Kind.POSE, 1)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                g.add_factor((i, j))
    return g


def random_block_graph(
    rng: random.Random,
    n_min: int = 4,
    n_max: int = 12,
    density: float = 0.35,
    dims=(1, 2, 3, 6),
    connected: bool = True,
) -> FactorGraph:
    g = FactorGraph()
    n = rng.randint(n_min, n_max)
    for _ in range(n):
        g.add_variable(rng.choice([Kind.POSE, Kind.LANDMARK]), rng.choice(dims))
    if connected:
        for i in range(n - 1):
            g.add_factor((i, i + 1))
    lo = 2 if connected else 1
    for i in range(n):
        for j in range(i + lo, n):
            if rng.random() < density:
                g.add_factor((i, j))
    return g


def random_tree_graph(rng: random.Random, n: int) -> FactorGraph:
    g = FactorGraph()
    for _ in range(n):
        g.add_variable(Kind.POSE, 1)
    for v in range(1, n):
        g.add_factor((rng.randrange(v), v))
    return g


def random_ordering(rng: random.Random, n: int) -> list[int]:
    order = list(range(n))
    rng.shuffle(order)
    return order


def leaf_first_ordering(graph: FactorGraph) -> list[int]:
    """Repeatedly strip a minimum-degree leaf; valid for acyclic graphs."""
    adj = graph.adjacency()
    alive = set(range(graph.n_vars))
    order = []
    while alive:
        v = min(alive, key=lambda u: (len(adj[u]), u))
        for u in adj[v]:
            adj[u].discard(v)
        adj[v].clear()
        alive.remove(v)
        order.append(v)
    return order


def count_spanning_trees(n: int, edges) -> int:
    """Exhaustive spanning-tree count over all (n-1)-edge subsets."""
    edges = list(edges)
    count = 0
    for subset in itertools.combinations(edges, n - 1):
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        acyclic = True
        for u, v in subset:
            ru, rv = find(u), find(v)
            if ru == rv:
                acyclic = False
                break
            parent[ru] = rv
        if acyclic:
            count += 1
    return count
