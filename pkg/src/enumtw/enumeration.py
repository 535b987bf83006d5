"""Backtrack-search enumeration over the preprocessed structure.

The engine walks the vertex order Q; at each step it extends the current
prefix labeling with every admissible label, rewrites the affected earlier
labels, and keeps a branch only if the factor trie of the current vertex's
home bag accepts the restricted labeling.  Every surviving full labeling
projects to one minimal dominating set.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import labels as L
from .dbtd import NiceDisjointBranchTD
from .factors import FactorTables

UNSET = 255


@dataclass
class EnumerationOrder:
    P: list[int]                      # TD nodes in depth-first order
    B: dict[int, int]                 # vertex -> home node (earliest bag in P)
    Q: list[int]                      # complete vertex order
    rank: dict[int, int]

    @property
    def n(self) -> int:
        return len(self.Q)


def compute_order(db: NiceDisjointBranchTD) -> EnumerationOrder:
    """Depth-first node order, home bags, and the induced vertex order."""
    P = db.depth_first_order()
    pos = {u: i for i, u in enumerate(P)}
    B: dict[int, int] = {}
    for u in P:
        for x in db.bags[u]:
            if x not in B:
                B[x] = u
    if len(B) != db.aug_n:
        missing = [x for x in range(db.aug_n) if x not in B]
        raise ValueError(f"vertices not covered by any bag: {missing}")
    by_node: dict[int, list[int]] = {}
    for x, u in B.items():
        by_node.setdefault(u, []).append(x)
    for u, vs in by_node.items():
        if len(vs) > 1:
            raise ValueError(f"home bag {u} not injective: {sorted(vs)}")
    Q = sorted(B, key=lambda x: pos[B[x]])
    rank = {x: i for i, x in enumerate(Q)}
    return EnumerationOrder(P, B, Q, rank)


def check_order_invariants(db: NiceDisjointBranchTD, order: EnumerationOrder) -> list[str]:
    """The three structural properties the enumeration relies on."""
    report = []
    rank = order.rank
    for x in order.Q:
        home = db.bags[order.B[x]]
        for w in db.aug_adj[x]:
            if rank[w] < rank[x] and w not in home:
                report.append(f"earlier neighbor {db.names[w]} of {db.names[x]} "
                              f"outside its home bag")
    for x in order.Q:
        bag = db.bags[order.B[x]]
        v_sub = set()
        for t in db.subtree_nodes(order.B[x]):
            v_sub |= db.bags[t]
        for w in bag:
            later = {y for y in db.aug_adj[w] if rank[y] > rank[x]}
            inside = db.aug_adj[w] & (v_sub - bag)
            if later != inside:
                report.append(
                    f"future neighbors of {db.names[w]} at {db.names[x]} do not "
                    f"match the subtree below its home bag")
    return report


def label_options(get_label, prefix_neighbors, domain, relax: bool):
    """Admissible labels for the next vertex plus the rewrites they trigger.

    Yields ``(label, rewrites)`` pairs in fixed label order; ``rewrites`` is a
    list of ``(vertex, new_label)`` updates to earlier neighbors.  With
    ``relax`` (copy vertices) every domain label is offered and nothing is
    rewritten: copies carry branch-local facts whose consistency the factor
    tries check.
    """
    if relax:
        for c in domain:
            yield c, ()
        return
    n_sig = 0
    has_si = False
    has_w0 = False
    w1s: list[int] = []
    rhos: list[tuple[int, int]] = []
    sig: int = -1
    for w in prefix_neighbors:
        lw = get_label(w)
        if lw <= L.SI:
            n_sig += 1
            sig = w
            if lw == L.SI:
                has_si = True
        elif lw == L.W0:
            has_w0 = True
        elif lw == L.W1:
            w1s.append(w)
        else:
            rhos.append((w, lw))
    for c in domain:
        if c <= L.SI:
            if has_si or has_w0:
                continue
            if c == L.SI and (n_sig or w1s):
                continue
            if c == L.S0 and not w1s:
                continue
            rewrites = [(w, lw - 1) for w, lw in rhos if lw > L.R0]
            rewrites.extend((w, L.W0) for w in w1s)
            yield c, rewrites
        elif c == L.W0 or c == L.W1:
            if has_si or n_sig >= 2:
                continue
            if c == L.W0:
                if n_sig != 1:
                    continue
                if get_label(sig) == L.S0:
                    continue
                # the unique dominator is pending-private here: it either
                # closes its obligation on this vertex or keeps one pending
                yield c, [(sig, L.S0)]
                yield c, ()
            else:
                if n_sig != 0:
                    continue
                yield c, ()
        else:
            if c - L.R0 != max(0, 2 - n_sig):
                continue
            yield c, ()


def increment_labeling(theta: dict[int, int], vertex: int, label: int,
                       prefix_neighbors, domain=None,
                       relax: bool = False) -> list[dict[int, int]]:
    """Extend a prefix labeling with one label choice; at most two results.

    Returns the (possibly empty) list of updated labelings; ``theta`` is not
    modified.
    """
    if domain is None:
        domain = L.DOM_FULL
    if label not in domain:
        return []
    out = []
    for c, rewrites in label_options(theta.__getitem__, prefix_neighbors,
                                     (label,), relax):
        new = dict(theta)
        new[vertex] = c
        for w, nl in rewrites:
            new[w] = nl
        if new not in out:
            out.append(new)
    return out


def is_extendable(tables: FactorTables, order: EnumerationOrder,
                  db: NiceDisjointBranchTD, theta: dict[int, int],
                  vertex: int) -> bool:
    """Single trie lookup of the labeling restricted to the home bag."""
    node = order.B[vertex]
    key = bytes(theta[x] for x in tables.bag_orders[node])
    return tables.tries[node].lookup(key)


@dataclass
class DelayStats:
    n: int = 0
    width: int = 0
    solutions: int = 0
    lookups: int = 0
    increments: int = 0
    label_writes: int = 0
    gaps: list[int] = field(default_factory=list)
    gap_lookups: list[int] = field(default_factory=list)
    gap_increments: list[int] = field(default_factory=list)
    gap_writes: list[int] = field(default_factory=list)
    dead_branches: int = 0

    @property
    def max_gap(self) -> int:
        return max(self.gaps, default=0)

    @property
    def mean_gap(self) -> float:
        return sum(self.gaps) / len(self.gaps) if self.gaps else 0.0

    @property
    def gap_ratio(self) -> float:
        denom = self.n * (self.width + 1)
        return self.max_gap / denom if denom else 0.0

    def report(self) -> str:
        return ("# delay\n"
                f"# n={self.n} w={self.width} solutions={self.solutions}\n"
                f"# lookups={self.lookups} increments={self.increments} "
                f"writes={self.label_writes}\n"
                f"# max_gap={self.max_gap} mean_gap={self.mean_gap:.1f} "
                f"ratio={self.gap_ratio:.3f}\n")


class Enumerator:
    """Iterative depth-first search over label assignments."""

    def __init__(self, db: NiceDisjointBranchTD, order: EnumerationOrder,
                 tables: FactorTables, n_original: int, debug: bool = False):
        self.db = db
        self.order = order
        self.tables = tables
        self.n_original = n_original
        self.stats = DelayStats(n=order.n, width=db.width)
        self.debug = debug
        rank = order.rank
        self.prefixN = [sorted((w for w in db.aug_adj[x] if rank[w] < rank[x]),
                               key=rank.__getitem__) for x in range(db.aug_n)]
        for x in range(db.aug_n):
            if db.is_copy[x] and self.prefixN[x]:
                raise AssertionError("copy vertex with earlier neighbors")
        self.bag_vec = [tables.bag_orders[order.B[x]] for x in range(db.aug_n)]
        self.trie_of = [tables.tries[order.B[x]] for x in range(db.aug_n)]
        self.labels = bytearray([UNSET] * db.aug_n)

    def solutions(self):
        db, order = self.db, self.order
        n = order.n
        stats = self.stats
        labels = self.labels
        ops = 0
        mark = (0, 0, 0)

        if n == 0:
            stats.solutions += 1
            stats.gaps.append(0)
            yield frozenset()
            return

        root_trie = self.tables.tries[db.root]
        if len(root_trie) == 0:
            return

        iters: list = [None] * n
        applied: list = [None] * n
        emit_mark: list = [0] * n
        iters[0] = self._cands(0)
        d = 0
        while d >= 0:
            try:
                c, rewrites = next(iters[d])
            except StopIteration:
                iters[d] = None
                d -= 1
                if d >= 0:
                    if self.debug and stats.solutions == emit_mark[d]:
                        stats.dead_branches += 1
                    self._revert(applied[d])
                    applied[d] = None
                continue
            v = order.Q[d]
            stats.increments += 1
            undo = [(v, UNSET)]
            labels[v] = c
            writes = 1
            for w, nl in rewrites:
                old = labels[w]
                if old != nl:
                    undo.append((w, old))
                    labels[w] = nl
                    writes += 1
            stats.label_writes += writes
            key = bytes(labels[x] for x in self.bag_vec[v])
            stats.lookups += 1
            ops = stats.lookups + stats.increments + stats.label_writes
            if self.trie_of[v].lookup(key):
                if d + 1 == n:
                    stats.solutions += 1
                    stats.gap_lookups.append(stats.lookups - mark[0])
                    stats.gap_increments.append(stats.increments - mark[1])
                    stats.gap_writes.append(stats.label_writes - mark[2])
                    stats.gaps.append(ops - sum(mark))
                    mark = (stats.lookups, stats.increments, stats.label_writes)
                    sol = frozenset(x for x in range(self.n_original)
                                    if labels[x] <= L.SI)
                    self._revert(undo)
                    yield sol
                else:
                    applied[d] = undo
                    emit_mark[d] = stats.solutions
                    d += 1
                    iters[d] = self._cands(d)
            else:
                self._revert(undo)

    def _cands(self, depth: int):
        v = self.order.Q[depth]
        return label_options(self.labels.__getitem__, self.prefixN[v],
                             self.db.domains[v], self.db.is_copy[v])

    def _revert(self, undo):
        labels = self.labels
        for w, old in reversed(undo):
            labels[w] = old


def validate_prefix(db: NiceDisjointBranchTD, order: EnumerationOrder,
                    theta: dict[int, int]) -> list[str]:
    """Quadratic re-check of the prefix admissibility conditions (debug)."""
    report = []
    rank = order.rank
    for v, lv in theta.items():
        if db.is_copy[v]:
            continue
        nbrs = [w for w in db.aug_adj[v] if w in theta and not db.is_copy[w]]
        n_sig = sum(1 for w in nbrs if theta[w] <= L.SI)
        n_si = sum(1 for w in nbrs if theta[w] == L.SI)
        n_w1 = sum(1 for w in nbrs if theta[w] == L.W1)
        n_w0 = sum(1 for w in nbrs if theta[w] == L.W0)
        name = db.names[v]
        if lv == L.SI and any(theta[w] < L.R0 for w in nbrs):
            report.append(f"{name}: independent vertex with non-rho neighbor")
        if lv in (L.W0, L.W1) and (n_si or n_sig != 1 - (lv - L.W0)):
            report.append(f"{name}: omega count violated")
        if lv == L.S1 and (n_si or n_w1):
            report.append(f"{name}: pending-private vertex sees sI/1w neighbor")
        if lv == L.S0 and (n_si or n_w1 or n_w0 < 1):
            report.append(f"{name}: closed-private vertex counts violated")
        if lv >= L.R0 and lv - L.R0 != max(0, 2 - n_sig):
            report.append(f"{name}: rho index != max(0, 2-sigma_count)")
    return report
