"""End-to-end wiring: reduce, decompose, preprocess, enumerate, project."""

from __future__ import annotations

import time
from dataclasses import dataclass

from .dbtd import NiceDisjointBranchTD, effective_width, transform_to_dbjt
from .enumeration import Enumerator, EnumerationOrder, compute_order
from .errors import InputError, UncoverableVertexError
from .factors import FactorTables, compute_factors
from .graph import Graph
from .hypergraph import Hypergraph
from .reductions import (build_B, build_C, dual, incidence_graph,
                         is_VH_minimal_transversal, widen_td_with_apex)
from .treedecomp import TreeDecomposition, make_nice, min_fill_td, validate_td


@dataclass
class Prepared:
    db: NiceDisjointBranchTD
    order: EnumerationOrder
    tables: FactorTables
    n_original: int
    input_width: int
    eff_width: int
    prep_seconds: float

    def enumerator(self, debug: bool = False) -> Enumerator:
        return Enumerator(self.db, self.order, self.tables, self.n_original,
                          debug=debug)

    def trie_entries(self) -> int:
        return self.tables.total_entries()

    def trie_bytes(self) -> int:
        # flat child-array accounting: 8 slots of 4 bytes per trie node
        return self.tables.total_nodes() * 32

    def memory_budget_ok(self) -> bool:
        """Total trie entries stay within sum_u s^(eff_width+1)."""
        s = max((len(d) for d in self.db.domains), default=2)
        budget = len(self.db.bags) * s ** (self.eff_width + 1)
        return self.trie_entries() <= budget


def prepare_graph(g: Graph, domains=None, td: TreeDecomposition | None = None,
                  seed: int = 0) -> Prepared:
    """Preprocess a graph for domination-style enumeration."""
    t0 = time.perf_counter()
    if td is None:
        td = min_fill_td(g, seed)
    else:
        problems = validate_td(g, td)
        if problems:
            raise InputError("supplied decomposition invalid: " + "; ".join(problems))
    nice = make_nice(td, g)
    db = transform_to_dbjt(nice, g, domains)
    order = compute_order(db)
    tables = compute_factors(db, order.rank)
    eff = effective_width(db)
    return Prepared(db, order, tables, g.n, td.width, eff,
                    time.perf_counter() - t0)


@dataclass
class Run:
    """An enumeration run bound to its preprocessing artifacts."""

    prep: Prepared
    enumerator: Enumerator
    project: callable  # augmented solution -> user-facing solution

    def solutions(self):
        for sol in self.enumerator.solutions():
            yield self.project(sol)

    @property
    def stats(self):
        st = self.enumerator.stats
        return st


def domination_run(g: Graph, td: TreeDecomposition | None = None, seed: int = 0,
                   debug: bool = False) -> Run:
    prep = prepare_graph(g, None, td, seed)
    enum = prep.enumerator(debug=debug)
    return Run(prep, enum, lambda s: s)


class _FixedRun:
    """Fast-path run with a precomputed solution list."""

    def __init__(self, sols):
        self._sols = list(sols)
        self.prep = None
        self.stats = None

    def solutions(self):
        yield from self._sols


def hitting_set_run(h: Hypergraph, td: TreeDecomposition | None = None,
                    seed: int = 0, debug: bool = False):
    """Minimal hitting sets of a hypergraph (vertex-id sets)."""
    if h.m == 0:
        return _FixedRun([frozenset()])
    if is_VH_minimal_transversal(h):
        return _FixedRun([frozenset(range(h.n))])
    art = build_B(h)
    if td is None:
        inc = incidence_graph(h)
        base_td = min_fill_td(inc, seed)
    else:
        inc = incidence_graph(h)
        problems = validate_td(inc, td)
        if problems:
            raise InputError(
                "supplied decomposition does not fit the incidence graph: "
                + "; ".join(problems))
        base_td = td
    wide = widen_td_with_apex(base_td, art.apex)
    t0 = time.perf_counter()
    nice = make_nice(wide, art.graph)
    db = transform_to_dbjt(nice, art.graph, art.domains)
    order = compute_order(db)
    tables = compute_factors(db, order.rank)
    prep = Prepared(db, order, tables, art.graph.n, wide.width,
                    effective_width(db), time.perf_counter() - t0)
    enum = prep.enumerator(debug=debug)
    apex = art.apex
    ys = frozenset(range(h.n, h.n + h.m))

    def project(sol):
        if apex not in sol or sol & ys:
            raise AssertionError("reduction emitted a malformed solution")
        return frozenset(sol - {apex})

    return Run(prep, enum, project)


def edge_cover_run(h: Hypergraph, td: TreeDecomposition | None = None,
                   seed: int = 0, debug: bool = False):
    """Minimal edge covers of a hypergraph (edge-index sets)."""
    if h.n == 0:
        return _FixedRun([frozenset()])
    for v in range(h.n):
        if not any(v in e for e in h.edges):
            raise UncoverableVertexError(
                f"uncoverable vertex {h.vertex_name(v)}: it lies in no hyperedge")
    if is_VH_minimal_transversal(dual(h)):
        return _FixedRun([frozenset(range(h.m))])
    art = build_C(h)
    if td is None:
        inc = incidence_graph(h)
        base_td = min_fill_td(inc, seed)
    else:
        inc = incidence_graph(h)
        problems = validate_td(inc, td)
        if problems:
            raise InputError(
                "supplied decomposition does not fit the incidence graph: "
                + "; ".join(problems))
        base_td = td
    wide = widen_td_with_apex(base_td, art.apex)
    t0 = time.perf_counter()
    nice = make_nice(wide, art.graph)
    db = transform_to_dbjt(nice, art.graph, art.domains)
    order = compute_order(db)
    tables = compute_factors(db, order.rank)
    prep = Prepared(db, order, tables, art.graph.n, wide.width,
                    effective_width(db), time.perf_counter() - t0)
    enum = prep.enumerator(debug=debug)
    apex = art.apex
    vs = frozenset(range(h.n))

    def project(sol):
        if apex not in sol or sol & vs:
            raise AssertionError("reduction emitted a malformed solution")
        return frozenset(i - h.n for i in sol - {apex})

    return Run(prep, enum, project)
