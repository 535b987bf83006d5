"""Reductions from hitting-set and edge-cover enumeration to domination.

The tripartite graphs built here extend the incidence graph with an apex
vertex; label domains restrict which of the eight labels each side may use.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import labels as L
from .errors import UncoverableVertexError
from .graph import ROLE_APEX, ROLE_EDGE, ROLE_ORIGINAL, Graph
from .hypergraph import Hypergraph
from .treedecomp import TreeDecomposition

KIND_TRANS = "trans"
KIND_COVER = "cover"
KIND_PLAIN = "plain-domination"

BACK_VERTEX = "vertex"
BACK_EDGE = "edge"
BACK_APEX = "apex"


@dataclass
class ReductionArtifact:
    graph: Graph
    domains: list[tuple[int, ...]]  # allowed labels per vertex
    back_map: list[tuple[str, int]]  # graph vertex -> (kind, hypergraph index)
    kind: str
    apex: int | None = None


def dual(h: Hypergraph) -> Hypergraph:
    """Dual hypergraph: vertices y_e, hyperedges f_v = {y_e : v in e}."""
    incident: list[list[int]] = [[] for _ in range(h.n)]
    for i, e in enumerate(h.edges):
        for v in e:
            incident[v].append(i)
    for v, occ in enumerate(incident):
        if not occ:
            raise UncoverableVertexError(
                f"uncoverable vertex {h.vertex_name(v)}: it lies in no hyperedge")
    names = tuple(h.edge_name(i) for i in range(h.m))
    return Hypergraph(h.m, tuple(tuple(occ) for occ in incident), names)


def incidence_graph(h: Hypergraph) -> Graph:
    """Bipartite graph on V(H) and edge-vertices y_e with membership edges."""
    n = h.n + h.m
    names = [h.vertex_name(v) for v in range(h.n)] + [h.edge_name(i) for i in range(h.m)]
    roles = [ROLE_ORIGINAL] * h.n + [ROLE_EDGE] * h.m
    g = Graph(n, names=names, roles=roles)
    for i, e in enumerate(h.edges):
        for v in e:
            g.add_edge(v, h.n + i)
    return g


def build_B(h: Hypergraph) -> ReductionArtifact:
    """I(H) plus an apex adjacent to all of V(H); domains for trans-enum."""
    inc = incidence_graph(h)
    apex = inc.n
    g = Graph(inc.n + 1,
              names=(inc.names or []) + ["_apex"],
              roles=(inc.roles or []) + [ROLE_APEX])
    for u, v in inc.edges():
        g.add_edge(u, v)
    for v in range(h.n):
        g.add_edge(v, apex)
    domains = ([L.DOM_SIGMA_OMEGA] * h.n + [L.DOM_OMEGA_RHO] * h.m + [L.DOM_SIGMA])
    back = ([(BACK_VERTEX, v) for v in range(h.n)]
            + [(BACK_EDGE, i) for i in range(h.m)]
            + [(BACK_APEX, 0)])
    return ReductionArtifact(g, domains, back, KIND_TRANS, apex)


def build_C(h: Hypergraph) -> ReductionArtifact:
    """I(H) plus an apex adjacent to all edge-vertices; domains for cover-enum."""
    for v in range(h.n):
        if not any(v in e for e in h.edges):
            raise UncoverableVertexError(
                f"uncoverable vertex {h.vertex_name(v)}: it lies in no hyperedge")
    inc = incidence_graph(h)
    apex = inc.n
    g = Graph(inc.n + 1,
              names=(inc.names or []) + ["_apex"],
              roles=(inc.roles or []) + [ROLE_APEX])
    for u, v in inc.edges():
        g.add_edge(u, v)
    for i in range(h.m):
        g.add_edge(h.n + i, apex)
    domains = ([L.DOM_OMEGA_RHO] * h.n + [L.DOM_SIGMA_OMEGA] * h.m + [L.DOM_SIGMA])
    back = ([(BACK_VERTEX, v) for v in range(h.n)]
            + [(BACK_EDGE, i) for i in range(h.m)]
            + [(BACK_APEX, 0)])
    return ReductionArtifact(g, domains, back, KIND_COVER, apex)


def widen_td_with_apex(td: TreeDecomposition, apex: int) -> TreeDecomposition:
    """Add the apex to every bag; yields a TD of B(H) / C(H) of width+1."""
    for b in td.bags:
        if apex in b:
            raise ValueError("apex already occurs in a bag")
    bags = [b | {apex} for b in td.bags]
    if not bags:
        bags = [frozenset({apex})]
    return TreeDecomposition(bags, list(td.tree_edges), max(td.n_vertices, apex + 1))


def is_VH_minimal_transversal(h: Hypergraph) -> bool:
    """True iff V(H) is itself minimal, i.e. every vertex has a singleton edge."""
    singletons = {e[0] for e in h.edges if len(e) == 1}
    return all(v in singletons for v in range(h.n))
