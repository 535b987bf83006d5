"""Exhaustive reference implementations for differential testing.

Never on the fast path; every operation enforces a hard size cap and
cross-checks two independent characterizations of minimality.
"""

from __future__ import annotations

from itertools import combinations

from . import labels as L
from .errors import CapExceededError
from .graph import Graph
from .hypergraph import Hypergraph
from .reductions import dual


def _subsets(items):
    items = list(items)
    for r in range(len(items) + 1):
        yield from (frozenset(c) for c in combinations(items, r))


def _is_dominating(g: Graph, d: frozenset[int]) -> bool:
    return all(v in d or g.adj[v] & d for v in range(g.n))


def _minimal_by_subsets(g: Graph, d: frozenset[int]) -> bool:
    return not any(_is_dominating(g, d - {u}) for u in d)


def _minimal_by_witness(g: Graph, d: frozenset[int]) -> bool:
    """Each member is independent of d or has a private neighbor."""
    for u in d:
        if not g.adj[u] & d:
            continue
        if not any(g.adj[v] & d == {u} for v in g.adj[u] - d):
            return False
    return True


def brute_minimal_dominating_sets(g: Graph) -> set[frozenset[int]]:
    if g.n > 24:
        raise CapExceededError(f"graph with {g.n} vertices exceeds the oracle cap")
    out = set()
    for d in _subsets(range(g.n)):
        if not _is_dominating(g, d):
            continue
        by_subset = _minimal_by_subsets(g, d)
        by_witness = _minimal_by_witness(g, d)
        if by_subset != by_witness:
            raise AssertionError(
                f"minimality characterizations disagree on {sorted(d)}")
        if by_subset:
            out.add(d)
    return out


def _hits(h: Hypergraph, s: frozenset[int]) -> bool:
    return all(s & set(e) for e in h.edges)


def brute_minimal_transversals(h: Hypergraph) -> set[frozenset[int]]:
    if h.n > 20 or h.m > 20:
        raise CapExceededError("hypergraph exceeds the oracle cap")
    out = set()
    for s in _subsets(range(h.n)):
        if not _hits(h, s):
            continue
        by_subset = not any(_hits(h, s - {u}) for u in s)
        by_witness = all(any(set(e) & s == {u} for e in h.edges) for u in s)
        if by_subset != by_witness:
            raise AssertionError(
                f"transversal minimality characterizations disagree on {sorted(s)}")
        if by_subset:
            out.add(s)
    return out


def brute_minimal_edge_covers(h: Hypergraph) -> set[frozenset[int]]:
    """Minimal edge covers as sets of edge indices."""
    if h.n > 20 or h.m > 20:
        raise CapExceededError("hypergraph exceeds the oracle cap")
    for v in range(h.n):
        if not any(v in e for e in h.edges):
            from .errors import UncoverableVertexError
            raise UncoverableVertexError(
                f"uncoverable vertex {h.vertex_name(v)}: it lies in no hyperedge")

    def covers(idx: frozenset[int]) -> bool:
        got = set()
        for i in idx:
            got.update(h.edges[i])
        return len(got) == h.n

    out = set()
    for idx in _subsets(range(h.m)):
        if covers(idx) and not any(covers(idx - {i}) for i in idx):
            out.add(idx)
    # duality cross-check: covers of H = transversals of the dual
    dual_trans = brute_minimal_transversals(dual(h))
    if out != dual_trans:
        raise AssertionError("edge covers do not match the dual transversals")
    return out


def exact_treewidth(g: Graph) -> int:
    """Exact treewidth by dynamic programming over elimination prefixes."""
    if g.n > 16:
        raise CapExceededError(f"graph with {g.n} vertices exceeds the oracle cap")
    n = g.n
    if n == 0:
        return -1

    def back_degree(done_mask: int, v: int) -> int:
        # neighbors of v outside done_mask, counting paths through done_mask
        seen = 1 << v
        stack = [v]
        out = 0
        while stack:
            x = stack.pop()
            for w in g.adj[x]:
                bit = 1 << w
                if seen & bit:
                    continue
                seen |= bit
                if done_mask & bit:
                    stack.append(w)
                else:
                    out += 1
        return out

    best = {0: -1}
    for mask in range(1, 1 << n):
        b = None
        for v in range(n):
            bit = 1 << v
            if not mask & bit:
                continue
            prev = best[mask ^ bit]
            cand = max(prev, back_degree(mask ^ bit, v))
            if b is None or cand < b:
                b = cand
        best[mask] = b
    return best[(1 << n) - 1]


def induced_label(g: Graph, d: frozenset[int], prefix: list[int], v: int) -> int | None:
    """The label a minimal dominating set induces on a prefix vertex.

    ``prefix`` lists the first i vertices of the order; v must be among them.
    Returns None when d induces no label (d not dominating at v, etc.).
    """
    pset = set(prefix)
    future = set(range(g.n)) - pset
    if v in d:
        privates = {w for w in g.adj[v] - d if g.adj[w] & d == {v}}
        if privates & future:
            return L.S1
        if privates:
            return L.S0
        if not g.adj[v] & d:
            return L.SI
        return None  # not minimal at v
    doms = g.adj[v] & d
    if len(doms) == 1:
        return L.W0 if doms <= pset else L.W1
    if len(doms) >= 2:
        return L.RHO_BY_INDEX[max(0, 2 - len(doms & pset))]
    return None  # undominated


def brute_extendable(g: Graph, q: list[int], theta: dict[int, int]) -> bool:
    """Does some minimal dominating set induce exactly this prefix labeling?"""
    if g.n > 16:
        raise CapExceededError(f"graph with {g.n} vertices exceeds the oracle cap")
    prefix = [v for v in q if v in theta]
    if len(prefix) != len(theta):
        raise ValueError("theta must label a prefix of the order")
    for d in brute_minimal_dominating_sets(g):
        if all(induced_label(g, d, prefix, v) == theta[v] for v in prefix):
            return True
    return False
