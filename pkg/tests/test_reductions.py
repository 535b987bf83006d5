import itertools

import pytest

from enumtw import labels as L
from enumtw.errors import UncoverableVertexError
from enumtw.generators import path_graph
from enumtw.graph import ROLE_APEX
from enumtw.hypergraph import hypergraph_from_edges
from enumtw.oracle import (brute_minimal_dominating_sets,
                           brute_minimal_transversals)
from enumtw.reductions import (build_B, build_C, dual, incidence_graph,
                               is_VH_minimal_transversal, widen_td_with_apex)
from enumtw.treedecomp import min_fill_td, validate_td


def test_dual_basic():
    h = hypergraph_from_edges(3, [[0, 1], [1, 2]])
    d = dual(h)
    assert d.n == 2
    assert d.edges == ((0,), (0, 1), (1,))


def test_dual_single():
    h = hypergraph_from_edges(1, [[0]])
    d = dual(h)
    assert d.n == 1 and d.edges == ((0,),)


def test_dual_uncoverable():
    h = hypergraph_from_edges(4, [[0, 1], [1, 2]])
    with pytest.raises(UncoverableVertexError, match="4"):
        dual(h)


def test_incidence_basic():
    h = hypergraph_from_edges(3, [[0, 1], [1, 2]])
    inc = incidence_graph(h)
    assert inc.n == 5
    assert sorted(inc.edges()) == [(0, 3), (1, 3), (1, 4), (2, 4)]


def test_incidence_single():
    h = hypergraph_from_edges(1, [[0]])
    inc = incidence_graph(h)
    assert sorted(inc.edges()) == [(0, 1)]


def test_incidence_dual_isomorphic():
    # H and its dual share one incidence graph, up to swapping the sides
    h = hypergraph_from_edges(4, [[0, 1, 2], [2, 3], [0, 3]])
    inc = incidence_graph(h)
    dinc = incidence_graph(dual(h))
    # vertex v of H <-> edge-vertex f_v of the dual; y_e <-> dual vertex y_e
    mapping = {v: h.m + v for v in range(h.n)}
    mapping.update({h.n + i: i for i in range(h.m)})
    got = {tuple(sorted((mapping[u], mapping[v]))) for u, v in inc.edges()}
    assert got == set(dinc.edges())


def test_build_B_shape():
    h = hypergraph_from_edges(3, [[0, 1], [1, 2]])
    art = build_B(h)
    g = art.graph
    assert g.n == 6
    assert len(g.adj[art.apex]) == 3
    assert g.roles[art.apex] == ROLE_APEX
    assert art.kind == "trans"


def test_build_B_single_is_path():
    h = hypergraph_from_edges(1, [[0]])
    g = build_B(h).graph
    # y0 - 0 - apex
    assert sorted(g.edges()) == [(0, 1), (0, 2)]


def test_build_B_domain_sizes():
    h = hypergraph_from_edges(3, [[0, 1], [1, 2]])
    art = build_B(h)
    sizes = {len(d) for d in art.domains}
    assert sizes == {3, 5}
    assert art.domains[art.apex] == L.DOM_SIGMA
    assert all(art.domains[v] == L.DOM_SIGMA_OMEGA for v in range(h.n))
    assert all(art.domains[h.n + i] == L.DOM_OMEGA_RHO for i in range(h.m))


def test_build_C_shape():
    h = hypergraph_from_edges(3, [[0, 1], [1, 2]])
    art = build_C(h)
    assert len(art.graph.adj[art.apex]) == 2
    assert art.domains[art.apex] == L.DOM_SIGMA
    assert all(art.domains[h.n + i] == L.DOM_SIGMA_OMEGA for i in range(h.m))
    assert all(art.domains[v] == L.DOM_OMEGA_RHO for v in range(h.n))


def test_build_C_uncoverable():
    h = hypergraph_from_edges(2, [[0]])
    with pytest.raises(UncoverableVertexError):
        build_C(h)


def test_widen_td():
    g = path_graph(4)
    td = min_fill_td(g, 0)
    wide = widen_td_with_apex(td, apex=4)
    assert wide.width == td.width + 1
    assert len(wide.bags) == len(td.bags)
    assert all(4 in b for b in wide.bags)


def test_widen_validates_on_B():
    h = hypergraph_from_edges(3, [[0, 1], [1, 2]])
    art = build_B(h)
    inc_td = min_fill_td(incidence_graph(h), 0)
    wide = widen_td_with_apex(inc_td, art.apex)
    assert validate_td(art.graph, wide) == []


def test_is_vh_minimal():
    assert is_VH_minimal_transversal(hypergraph_from_edges(2, [[0], [1]]))
    assert not is_VH_minimal_transversal(hypergraph_from_edges(2, [[0, 1]]))
    assert not is_VH_minimal_transversal(hypergraph_from_edges(2, [[0], [0, 1]]))


def _all_hypergraphs(max_n, max_m):
    for n in range(max_n + 1):
        univ = list(range(n))
        nonempty = [tuple(c) for r in range(1, n + 1)
                    for c in itertools.combinations(univ, r)]
        for m in range(max_m + 1):
            for combo in itertools.combinations(nonempty, m):
                yield hypergraph_from_edges(n, combo)


def test_apex_reduction_matches_transversals_exhaustive():
    """Minimal transversals match domain-restricted minimal dominating sets
    of the apex graph, exhaustively over hypergraphs with n, m <= 4."""
    checked = 0
    for h in _all_hypergraphs(4, 4):
        if h.m == 0 or is_VH_minimal_transversal(h):
            continue
        art = build_B(h)
        ys = set(range(h.n, h.n + h.m))
        via_b = {frozenset(d - {art.apex})
                 for d in brute_minimal_dominating_sets(art.graph)
                 if art.apex in d and not d & ys}
        assert via_b == brute_minimal_transversals(h), h.edges
        checked += 1
    assert checked > 2000


def test_cover_transversal_duality_exhaustive():
    """Edge covers of H = transversals of the dual, on all n, m <= 4 inputs."""
    from enumtw.oracle import brute_minimal_edge_covers
    checked = 0
    for h in _all_hypergraphs(4, 4):
        if any(not any(v in e for e in h.edges) for v in range(h.n)):
            continue
        covers = brute_minimal_edge_covers(h)  # cross-checks duality itself
        trans = brute_minimal_transversals(dual(h))
        assert covers == trans
        checked += 1
    assert checked > 500
