"""Enumeration of minimal hitting sets, edge covers, and dominating sets
with fixed-parameter-linear delay on bounded-treewidth inputs."""

from .graph import Graph, graph_from_edges, induced_subgraph, parse_graph, write_graph
from .hypergraph import Hypergraph, hypergraph_from_edges, parse_hypergraph, write_hypergraph
from .pipeline import domination_run, edge_cover_run, hitting_set_run, prepare_graph
from .treedecomp import (TreeDecomposition, make_nice, min_fill_td, parse_td,
                         validate_td, write_td)

__all__ = [
    "Graph", "Hypergraph", "TreeDecomposition",
    "graph_from_edges", "hypergraph_from_edges", "induced_subgraph",
    "parse_graph", "parse_hypergraph", "parse_td",
    "write_graph", "write_hypergraph", "write_td",
    "validate_td", "min_fill_td", "make_nice",
    "domination_run", "hitting_set_run", "edge_cover_run", "prepare_graph",
]

__version__ = "0.1.0"
