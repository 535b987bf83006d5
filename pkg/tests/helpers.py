"""Shared fixtures and reference computations for the test suite."""

from __future__ import annotations

import itertools

from enumtw import labels as L
from enumtw.dbtd import NiceDisjointBranchTD, local_constraint_eval
from enumtw.factors import consistent_subset_semantics, subtree_vertices
from enumtw.graph import Graph, graph_from_edges
from enumtw.treedecomp import DJOIN, FORGET, INTRODUCE, LEAF, TreeDecomposition

G9_NAMES = list("abcdefghi")
G9_EDGES = [(0, 1), (0, 2), (0, 5), (0, 6), (1, 3), (2, 3), (3, 4),
            (5, 6), (5, 7), (6, 8)]


def g9_graph() -> Graph:
    """The nine-vertex example graph; every quoted neighborhood fact is
    re-derived in test_oracle."""
    return graph_from_edges(9, G9_EDGES, names=G9_NAMES)


def g9_fixture() -> tuple[Graph, NiceDisjointBranchTD, int]:
    """The example graph with its hand-built nice disjoint-branch TD.

    Returns (graph, decomposition, node id of the bag {a,b,c}).
    """
    g = g9_graph()
    db = NiceDisjointBranchTD()
    for v in range(9):
        db.add_vertex(v, "", False, L.DOM_FULL, G9_NAMES[v])
    for u, v in G9_EDGES:
        db.add_aug_edge(u, v)
    A, B, C, D, E, F, G, H, I = range(9)
    fs = frozenset
    n = db.add(fs(), (LEAF,), [])
    n = db.add(fs({I}), (INTRODUCE, I), [n])
    n = db.add(fs({G, I}), (INTRODUCE, G), [n])
    top0 = db.add(fs({G}), (FORGET, I), [n])
    n = db.add(fs(), (LEAF,), [])
    n = db.add(fs({E}), (INTRODUCE, E), [n])
    n = db.add(fs({D, E}), (INTRODUCE, D), [n])
    n = db.add(fs({D}), (FORGET, E), [n])
    n = db.add(fs({C, D}), (INTRODUCE, C), [n])
    n = db.add(fs({B, C, D}), (INTRODUCE, B), [n])
    n = db.add(fs({B, C}), (FORGET, D), [n])
    node_u = db.add(fs({A, B, C}), (INTRODUCE, A), [n])
    n = db.add(fs({A, B}), (FORGET, C), [node_u])
    top1 = db.add(fs({A}), (FORGET, B), [n])
    n = db.add(fs({A, G}), (DJOIN,), [top0, top1])
    n = db.add(fs({F, A, G}), (INTRODUCE, F), [n])
    n = db.add(fs({F, A}), (FORGET, G), [n])
    n = db.add(fs({F}), (FORGET, A), [n])
    n = db.add(fs({H, F}), (INTRODUCE, H), [n])
    n = db.add(fs({H}), (FORGET, F), [n])
    db.root = db.add(fs(), (FORGET, H), [n])
    return g, db, node_u


def g9_plain_td() -> TreeDecomposition:
    """The same decomposition as a plain (non-nice) TD: the trunk plus the
    two branches hanging off the {a,g} bag."""
    fs = frozenset
    A, B, C, D, E, F, G, H, I = range(9)
    bags = [fs({H}), fs({H, F}), fs({F}), fs({F, A}), fs({F, A, G}), fs({A, G}),
            fs({G}), fs({G, I}), fs({I}),
            fs({A}), fs({A, B}), fs({A, B, C}), fs({B, C}), fs({B, C, D}),
            fs({C, D}), fs({D}), fs({D, E}), fs({E})]
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5),
             (5, 6), (6, 7), (7, 8),
             (5, 9), (9, 10), (10, 11), (11, 12), (12, 13), (13, 14),
             (14, 15), (15, 16), (16, 17)]
    return TreeDecomposition(bags, edges, 9)


def p3_fixture() -> tuple[Graph, NiceDisjointBranchTD]:
    """Path v1-v2-v3 with a decomposition whose vertex order is v1, v2, v3."""
    g = graph_from_edges(3, [(0, 1), (1, 2)])
    db = NiceDisjointBranchTD()
    for v in range(3):
        db.add_vertex(v, "", False, L.DOM_FULL, str(v + 1))
    db.add_aug_edge(0, 1)
    db.add_aug_edge(1, 2)
    fs = frozenset
    n = db.add(fs(), (LEAF,), [])
    n = db.add(fs({2}), (INTRODUCE, 2), [n])
    n = db.add(fs({1, 2}), (INTRODUCE, 1), [n])
    n = db.add(fs({1}), (FORGET, 2), [n])
    n = db.add(fs({0, 1}), (INTRODUCE, 0), [n])
    n = db.add(fs({0}), (FORGET, 1), [n])
    db.root = db.add(fs(), (FORGET, 0), [n])
    return g, db


def plain_view(nice, g: Graph) -> NiceDisjointBranchTD:
    """Wrap a nice TD of g as a copy-free structure the consistency oracle
    understands (node kinds are irrelevant to it)."""
    db = NiceDisjointBranchTD()
    for v in range(g.n):
        db.add_vertex(v, "", False, L.DOM_FULL, g.vertex_name(v))
    for u, w in g.edges():
        db.add_aug_edge(u, w)
    for u in range(len(nice.bags)):
        db.bags.append(nice.bags[u])
        db.kinds.append(nice.kinds[u])
        db.children.append(list(nice.children[u]))
        db.parent.append(nice.parent[u])
        db.triples.append([])
        db.cluster_introduce.append(False)
        db.origin_node.append(u)
    db.root = nice.root
    return db


def expected_factor(db: NiceDisjointBranchTD, u: int, bag_order: list[int],
                    max_scope: int = 14) -> set[bytes] | None:
    """Reference factor content at node u: kappa-satisfying labelings with a
    consistent partial solution, computed by direct enumeration over D.

    Returns None when the subtree is too large to enumerate.
    """
    v_sub = subtree_vertices(db, u)
    if len(v_sub) > max_scope:
        return None
    accepted: set[bytes] = set()
    scope = sorted(v_sub)
    for bits in itertools.product((False, True), repeat=len(scope)):
        d = frozenset(x for x, b in zip(scope, bits) if b)
        # per-vertex candidate labels under this D (cheap pruning pass)
        cand: list[list[int]] = []
        feasible = True
        for x in bag_order:
            opts = [l for l in db.domains[x]
                    if consistent_subset_semantics(db, u, {x: l}, d, v_sub)]
            if not opts:
                feasible = False
                break
            cand.append(opts)
        if not feasible:
            continue
        for labs in itertools.product(*cand):
            key = bytes(labs)
            if key in accepted:
                continue
            assign = dict(zip(bag_order, labs))
            if not local_constraint_eval(db.triples[u], assign):
                continue
            if consistent_subset_semantics(db, u, assign, d, v_sub):
                accepted.add(key)
    return accepted
