"""Instance families for tests and benchmarks."""

from __future__ import annotations

import random

from .graph import Graph, graph_from_edges
from .hypergraph import Hypergraph, hypergraph_from_edges
from .treedecomp import TreeDecomposition


def path_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    edges = [(i, (i + 1) % n) for i in range(n)] if n >= 3 else []
    return graph_from_edges(n, set(tuple(sorted(e)) for e in edges))


def complete_graph(n: int) -> Graph:
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def gnp_graph(n: int, p: float, seed: int) -> Graph:
    rng = random.Random(seed)
    g = Graph(n)
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                g.add_edge(i, j)
    return g


def random_partial_ktree(n: int, k: int, seed: int, keep: float = 0.7) -> Graph:
    """Random k-tree minus a random subset of edges (treewidth <= k)."""
    rng = random.Random(seed)
    g = Graph(n)
    edges = []
    base = min(n, k + 1)
    cliques = [list(range(base))]
    for i in range(base):
        for j in range(i + 1, base):
            edges.append((i, j))
    for v in range(base, n):
        host = rng.choice(cliques)
        sub = rng.sample(host, k) if len(host) > k else list(host)
        for w in sub:
            edges.append((v, w))
        cliques.append(sub + [v])
    for u, v in edges:
        if rng.random() < keep:
            g.add_edge(u, v)
    return g


def random_hypergraph(n: int, m: int, seed: int, max_edge: int = 4) -> Hypergraph:
    rng = random.Random(seed)
    edges = []
    for _ in range(m):
        size = rng.randint(1, max(1, min(n, max_edge)))
        edges.append(sorted(rng.sample(range(n), size)))
    return hypergraph_from_edges(n, edges)


def random_disjoint_branch_td(seed: int, max_depth: int = 4,
                              max_children: int = 3,
                              max_bag: int = 4) -> tuple[TreeDecomposition, int, Graph]:
    """A random DBTD (rooted) together with a graph it decomposes.

    Children bags are built as disjoint subsets of the parent bag plus fresh
    vertices, so the disjoint-branch property holds by construction.
    """
    rng = random.Random(seed)
    counter = [0]

    def fresh(k):
        out = list(range(counter[0], counter[0] + k))
        counter[0] += k
        return out

    bags: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []

    def build(parent_bag: list[int], depth: int) -> int:
        keep = rng.sample(parent_bag, rng.randint(0, len(parent_bag))) if parent_bag else []
        bag = keep + fresh(rng.randint(0 if keep else 1, max(1, max_bag - len(keep))))
        nid = len(bags)
        bags.append(frozenset(bag))
        if depth < max_depth:
            nkids = rng.randint(0, max_children)
            pool = list(bag)
            rng.shuffle(pool)
            for _ in range(nkids):
                take = rng.randint(0, min(2, len(pool)))
                share = [pool.pop() for _ in range(take)]  # disjoint across kids
                kid = build(share, depth + 1)
                edges.append((nid, kid))
        return nid

    root = build([], 0)
    n = counter[0]
    g = Graph(n)
    rng2 = random.Random(seed + 1)
    for bag in bags:
        items = sorted(bag)
        for i in range(len(items)):
            for j in range(i + 1, len(items)):
                if rng2.random() < 0.5:
                    g.add_edge(items[i], items[j])
    return TreeDecomposition(bags, edges, n), root, g
