"""Nice disjoint-branch tree decompositions.

``transform_to_dbjt`` rewrites every join node of a nice TD into a cluster

    u (forget) <- ... 2b-1 forgets ... <- u' <- ... b-1 introduces ... <- u''
                                                         (disjoint join)

where the bag of u'' holds two fresh copies v0, v1 of every vertex v in the
join bag and the bag of u' holds originals and copies together.  Copies take
over the original's neighbors inside their branch; the original keeps only
its in-bag and above-bag edges.  Per-cluster local constraints tie the label
of each original to the labels of its two copies.

``nice_dbtd_from_dbtd`` normalizes a decomposition that is already disjoint
branch without introducing copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import labels as L
from .graph import Graph
from .treedecomp import (DJOIN, FORGET, INTRODUCE, JOIN, LEAF,
                         NiceTreeDecomposition, TreeDecomposition,
                         validate_nice)

# Local-constraint clauses: (copy0 label, copy1 label) -> forced original label.
KAPPA_TRIPLE: dict[tuple[int, int], int] = {
    (L.SI, L.SI): L.SI,
    (L.S0, L.S0): L.S0,
    (L.S1, L.S1): L.S1,
    (L.S1, L.S0): L.S1,
    (L.S0, L.S1): L.S1,
    (L.W0, L.W0): L.W0,
    (L.W0, L.W1): L.W1,
    (L.W1, L.W0): L.W1,
    (L.R0, L.R0): L.R0,
    (L.R0, L.R1): L.R1,
    (L.R1, L.W0): L.R1,
    (L.R1, L.R1): L.R2,
    (L.R2, L.W0): L.R2,
    (L.W0, L.R2): L.R2,
}

PAIR_C0_C1 = frozenset(KAPPA_TRIPLE)
PAIR_V_C0 = frozenset((v, c0) for (c0, _c1), v in KAPPA_TRIPLE.items())
PAIR_V_C1 = frozenset((v, c1) for (_c0, c1), v in KAPPA_TRIPLE.items())
OK_V = frozenset(KAPPA_TRIPLE.values())
OK_C0 = frozenset(c0 for c0, _ in KAPPA_TRIPLE)
OK_C1 = frozenset(c1 for _, c1 in KAPPA_TRIPLE)


@dataclass
class NiceDisjointBranchTD:
    """Nice TD with disjoint joins over an augmented vertex universe."""

    bags: list[frozenset[int]] = field(default_factory=list)
    kinds: list[tuple] = field(default_factory=list)
    children: list[list[int]] = field(default_factory=list)
    parent: list[int | None] = field(default_factory=list)
    root: int = -1
    # augmented universe
    aug_adj: list[set[int]] = field(default_factory=list)
    origin: list[int] = field(default_factory=list)     # aug id -> original vertex
    branch: list[str] = field(default_factory=list)     # branch string ('' = original)
    is_copy: list[bool] = field(default_factory=list)
    domains: list[tuple[int, ...]] = field(default_factory=list)
    # per-node local constraints: triples (original, copy0, copy1)
    triples: list[list[tuple[int, int, int]]] = field(default_factory=list)
    # introduce nodes inside a join cluster (the introduced vertex has copies
    # in the bag, so the fresh-vertex label restriction does not apply)
    cluster_introduce: list[bool] = field(default_factory=list)
    names: list[str] = field(default_factory=list)
    # node id in the source nice TD, or None for nodes added by the transform
    origin_node: list[int | None] = field(default_factory=list)

    @property
    def aug_n(self) -> int:
        return len(self.origin)

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1 if self.bags else -1

    def add(self, bag: frozenset[int], kind: tuple, child_ids: list[int],
            triples: list[tuple[int, int, int]] | None = None,
            cluster_introduce: bool = False,
            origin_node: int | None = None) -> int:
        nid = len(self.bags)
        self.bags.append(bag)
        self.kinds.append(kind)
        self.children.append(list(child_ids))
        self.parent.append(None)
        self.triples.append(list(triples) if triples else [])
        self.cluster_introduce.append(cluster_introduce)
        self.origin_node.append(origin_node)
        for c in child_ids:
            self.parent[c] = nid
        return nid

    def add_vertex(self, origin: int, branch: str, is_copy: bool,
                   domain: tuple[int, ...], name: str) -> int:
        vid = len(self.origin)
        self.origin.append(origin)
        self.branch.append(branch)
        self.is_copy.append(is_copy)
        self.domains.append(domain)
        self.aug_adj.append(set())
        self.names.append(name)
        return vid

    def add_aug_edge(self, a: int, b: int) -> None:
        if a == b:
            raise ValueError("self-loop in augmented graph")
        self.aug_adj[a].add(b)
        self.aug_adj[b].add(a)

    def depth_first_order(self) -> list[int]:
        out, stack = [], [self.root]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out

    def subtree_nodes(self, u: int) -> list[int]:
        out, stack = [], [u]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return out

    def vertex_name(self, x: int) -> str:
        return self.names[x]

    def dump(self) -> str:
        """Debug dump, one line per node, for golden-file tests."""
        lines = []
        for u in self.depth_first_order():
            bag = " ".join(sorted(self.names[x] for x in self.bags[u]))
            kind = self.kinds[u][0]
            if len(self.kinds[u]) > 1:
                kind += f"({self.names[self.kinds[u][1]]})"
            trip = ",".join(
                f"({self.names[a]};{self.names[b]};{self.names[c]})"
                for a, b, c in self.triples[u])
            lines.append(f"node {u} kind {kind} bag [{bag}] triples [{trip}]")
        return "\n".join(lines) + "\n"


def local_constraint_eval(triples, assignment) -> bool:
    """Evaluate the seven copy clauses on one bag labeling.

    ``assignment`` maps augmented vertex -> label for every bag member.
    Triples only partially inside the bag are checked by projection: the
    present labels must extend to a combination listed in the clause table.
    """
    for v, c0, c1 in triples:
        lv = assignment.get(v)
        l0 = assignment.get(c0)
        l1 = assignment.get(c1)
        if l0 is not None and l1 is not None:
            forced = KAPPA_TRIPLE.get((l0, l1))
            if forced is None:
                return False
            if lv is not None and lv != forced:
                return False
        elif lv is not None and l0 is not None:
            if (lv, l0) not in PAIR_V_C0:
                return False
        elif lv is not None and l1 is not None:
            if (lv, l1) not in PAIR_V_C1:
                return False
        elif lv is not None:
            if lv not in OK_V:
                return False
        elif l0 is not None:
            if l0 not in OK_C0:
                return False
        elif l1 is not None:
            if l1 not in OK_C1:
                return False
    return True


def _edge_sites(nice: NiceTreeDecomposition, g: Graph) -> dict[int, list[tuple[int, int]]]:
    """Topmost nice-TD node covering each graph edge (pre-order first)."""
    sites: dict[int, list[tuple[int, int]]] = {}
    remaining = set(g.edges())
    for u in nice.depth_first_order():
        if not remaining:
            break
        bag = nice.bags[u]
        found = [e for e in remaining if e[0] in bag and e[1] in bag]
        if found:
            sites[u] = found
            remaining.difference_update(found)
    if remaining:
        raise ValueError(f"edges not covered by the decomposition: {sorted(remaining)}")
    return sites


def transform_to_dbjt(nice: NiceTreeDecomposition, g: Graph,
                      domains: list[tuple[int, ...]] | None = None) -> NiceDisjointBranchTD:
    """Rewrite every join into a disjoint join with copy vertices.

    Copies inherit the original's label domain.  A nice TD without join
    nodes maps through unchanged (modulo node renumbering).
    """
    if domains is None:
        domains = [L.DOM_FULL] * g.n
    out = NiceDisjointBranchTD()
    for v in range(g.n):
        out.add_vertex(v, "", False, tuple(domains[v]), g.vertex_name(v))
    sites = _edge_sites(nice, g)

    def process(u: int, mapping: dict[int, int]) -> int:
        kind = nice.kinds[u]
        bag = frozenset(mapping[v] for v in nice.bags[u])
        for p, q in sites.get(u, ()):  # realize edges at their topmost cover
            out.add_aug_edge(mapping[p], mapping[q])
        tag = kind[0]
        if tag == LEAF:
            return out.add(bag, (LEAF,), [], origin_node=u)
        if tag == INTRODUCE:
            child = process(nice.children[u][0], mapping)
            return out.add(bag, (INTRODUCE, mapping[kind[1]]), [child], origin_node=u)
        if tag == FORGET:
            child = process(nice.children[u][0], mapping)
            return out.add(bag, (FORGET, mapping[kind[1]]), [child], origin_node=u)
        if tag != JOIN:
            raise ValueError(f"unexpected node kind {tag}")

        join_vs = sorted(bag)
        copies0, copies1, trips = [], [], []
        map0, map1 = dict(mapping), dict(mapping)
        orig_of = {mapping[v]: v for v in nice.bags[u]}
        for x in join_vs:
            dom = out.domains[x]
            base = out.names[x]
            br = out.branch[x]
            c0 = out.add_vertex(out.origin[x], br + "0", True, dom, base + "|0")
            c1 = out.add_vertex(out.origin[x], br + "1", True, dom, base + "|1")
            copies0.append(c0)
            copies1.append(c1)
            trips.append((x, c0, c1))
            map0[orig_of[x]] = c0
            map1[orig_of[x]] = c1
        left = process(nice.children[u][0], map0)
        right = process(nice.children[u][1], map1)

        cur_bag = set(copies0) | set(copies1)
        node = out.add(frozenset(cur_bag), (DJOIN,), [left, right], trips)
        for x in reversed(join_vs):  # b-1 introduces + u'
            cur_bag.add(x)
            node = out.add(frozenset(cur_bag), (INTRODUCE, x), [node], trips,
                           cluster_introduce=True)
        copies = copies0 + copies1
        for i, c in enumerate(reversed(copies)):  # 2b-1 forgets + u itself
            cur_bag.discard(c)
            node = out.add(frozenset(cur_bag), (FORGET, c), [node], trips,
                           origin_node=u if i == len(copies) - 1 else None)
        return node

    top = process(nice.root, {v: v for v in range(g.n)})
    out.root = top
    if out.bags[top]:
        cur = set(out.bags[top])
        for v in sorted(cur, reverse=True):
            cur.discard(v)
            top = out.add(frozenset(cur), (FORGET, v), [top])
        out.root = top
    return out


def validate_dbtd(db: NiceDisjointBranchTD, g: Graph | None = None) -> list[str]:
    """Structural checks: niceness, disjointness, neighborhood conservation."""
    report = []
    nice_view = NiceTreeDecomposition(
        bags=db.bags, kinds=db.kinds, children=db.children,
        parent=db.parent, root=db.root, n_vertices=db.aug_n)
    report.extend(r for r in validate_nice(nice_view, None, join_kinds=(DJOIN,)))
    for u, kind in enumerate(db.kinds):
        if kind[0] == JOIN:
            report.append(f"node {u}: plain join left in disjoint-branch TD")
    # every augmented vertex occurs in some bag, connected occurrence set
    occ: dict[int, list[int]] = {}
    for u, bag in enumerate(db.bags):
        for x in bag:
            occ.setdefault(x, []).append(u)
    for x in range(db.aug_n):
        if x not in occ:
            report.append(f"augmented vertex {db.names[x]} in no bag")
    if g is not None:
        # each original edge realized exactly once among incarnations
        incarnations: dict[int, list[int]] = {}
        for x in range(db.aug_n):
            incarnations.setdefault(db.origin[x], []).append(x)
        for p in range(g.n):
            seen: dict[int, int] = {}
            for x in incarnations.get(p, []):
                for w in db.aug_adj[x]:
                    seen[db.origin[w]] = seen.get(db.origin[w], 0) + 1
            expected = set(g.adj[p])
            if set(seen) != expected or any(c != 1 for c in seen.values()):
                report.append(
                    f"vertex {g.vertex_name(p)}: neighborhoods not conserved "
                    f"(got {sorted(seen.items())}, want {sorted(expected)})")
        # copy neighbor sets of one cluster are disjoint
        for u in range(len(db.bags)):
            for _v, c0, c1 in db.triples[u]:
                if db.aug_adj[c0] & db.aug_adj[c1]:
                    report.append(f"copies {db.names[c0]}/{db.names[c1]} share neighbors")
    # edge coverage and running intersection over the augmented graph
    adj_nodes: list[list[int]] = [[] for _ in db.bags]
    for u in range(len(db.bags)):
        for c in db.children[u]:
            adj_nodes[u].append(c)
            adj_nodes[c].append(u)
    for x in range(db.aug_n):
        nodes = occ.get(x, [])
        if not nodes:
            continue
        target = set(nodes)
        seen_nodes = {nodes[0]}
        stack = [nodes[0]]
        while stack:
            a = stack.pop()
            for b in adj_nodes[a]:
                if b in target and b not in seen_nodes:
                    seen_nodes.add(b)
                    stack.append(b)
        if seen_nodes != target:
            report.append(f"running intersection violated for {db.names[x]}")
    for x in range(db.aug_n):
        for w in db.aug_adj[x]:
            if x < w and not any(x in db.bags[u] and w in db.bags[u]
                                 for u in occ.get(x, [])):
                report.append(f"augmented edge ({db.names[x]},{db.names[w]}) uncovered")
    return report


def nice_dbtd_from_dbtd(td: TreeDecomposition, root: int, g: Graph) -> NiceDisjointBranchTD:
    """Normalize an already disjoint-branch TD to nice form (no copies added)."""
    adj = td.node_neighbors()

    def children_of(u: int, parent: int | None) -> list[int]:
        return [w for w in adj[u] if w != parent]

    # verify the disjoint-branch property at this root
    stack = [(root, None)]
    while stack:
        u, pa = stack.pop()
        kids = children_of(u, pa)
        for i in range(len(kids)):
            for j in range(i + 1, len(kids)):
                if td.bags[kids[i]] & td.bags[kids[j]]:
                    raise ValueError(
                        f"not disjoint-branch at node {u}: children share "
                        f"{sorted(td.bags[kids[i]] & td.bags[kids[j]])}")
        stack.extend((k, u) for k in kids)

    out = NiceDisjointBranchTD()
    for v in range(g.n):
        out.add_vertex(v, "", False, L.DOM_FULL, g.vertex_name(v))
    for x in range(g.n):
        for w in g.adj[x]:
            if x < w:
                out.add_aug_edge(x, w)

    def chain_forget(top: int, remove: set[int]) -> int:
        bag = set(out.bags[top])
        for v in sorted(remove, reverse=True):
            bag.discard(v)
            top = out.add(frozenset(bag), (FORGET, v), [top])
        return top

    def chain_introduce(top: int, insert: set[int]) -> int:
        bag = set(out.bags[top])
        for v in sorted(insert):
            bag.add(v)
            top = out.add(frozenset(bag), (INTRODUCE, v), [top])
        return top

    def process(u: int, pa: int | None) -> int:
        kids = children_of(u, pa)
        bag = td.bags[u]
        if not kids:
            leaf = out.add(frozenset(), (LEAF,), [])
            return chain_introduce(leaf, set(bag))
        legs = []
        for c in sorted(kids):
            top_c = process(c, u)
            shared = td.bags[c] & bag
            leg = chain_forget(top_c, set(td.bags[c]) - shared)
            legs.append((leg, shared))
        if len(legs) == 1:
            leg, shared = legs[0]
            return chain_introduce(leg, set(bag) - shared)
        acc, acc_bag = legs[0]
        for leg, shared in legs[1:]:
            union = acc_bag | shared
            acc = out.add(frozenset(union), (DJOIN,), [acc, leg])
            acc_bag = union
        return chain_introduce(acc, set(bag) - acc_bag)

    top = process(root, None)
    out.root = chain_forget(top, set(out.bags[top]))
    return out


def kappa_count_table(db: NiceDisjointBranchTD, u: int) -> list[tuple[str, int]]:
    """Per-group sizes of the local-constraint solution space at node u.

    Groups are the (partial) triples inside the bag plus free singletons; the
    product of the counts is |K_u|.
    """
    bag = db.bags[u]
    counts: list[tuple[str, int]] = []
    in_triple: set[int] = set()
    for v, c0, c1 in db.triples[u]:
        members = [x for x in (v, c0, c1) if x in bag]
        if not members:
            continue
        in_triple.update(members)
        dv, d0, d1 = db.domains[v], db.domains[c0], db.domains[c1]
        if v in bag and c0 in bag and c1 in bag:
            cnt = sum(1 for (a, b), f in KAPPA_TRIPLE.items()
                      if a in d0 and b in d1 and f in dv)
            counts.append(("triple", cnt))
        elif v in bag and c0 in bag:
            cnt = len({(f, a) for (a, b), f in KAPPA_TRIPLE.items()
                       if a in d0 and b in d1 and f in dv})
            counts.append(("pair-v-c0", cnt))
        elif v in bag and c1 in bag:
            cnt = len({(f, b) for (a, b), f in KAPPA_TRIPLE.items()
                       if a in d0 and b in d1 and f in dv})
            counts.append(("pair-v-c1", cnt))
        elif c0 in bag and c1 in bag:
            cnt = sum(1 for (a, b), f in KAPPA_TRIPLE.items()
                      if a in d0 and b in d1 and f in dv)
            counts.append(("pair-c0-c1", cnt))
        else:
            x = members[0]
            if x == v:
                opts = {f for (a, b), f in KAPPA_TRIPLE.items()
                        if a in d0 and b in d1 and f in dv}
            elif x == c0:
                opts = {a for (a, b), f in KAPPA_TRIPLE.items()
                        if a in d0 and b in d1 and f in dv}
            else:
                opts = {b for (a, b), f in KAPPA_TRIPLE.items()
                        if a in d0 and b in d1 and f in dv}
            counts.append(("single", len(opts)))
    for x in sorted(bag - in_triple):
        counts.append(("free", len(db.domains[x])))
    return counts


def effective_width(db: NiceDisjointBranchTD, method: str = "analytic",
                    max_enum_bag: int = 7) -> int:
    """max over nodes of ceil(log_s |K_u|), s = largest label domain."""
    s = max((len(d) for d in db.domains), default=2)
    best = 0
    for u in range(len(db.bags)):
        if method == "analytic":
            k = 1
            for _, cnt in kappa_count_table(db, u):
                k *= cnt
        else:
            if len(db.bags[u]) > max_enum_bag:
                raise ValueError(f"bag of size {len(db.bags[u])} too large to enumerate")
            k = _enumerate_kappa(db, u)
        best = max(best, _ceil_log(k, s))
    return best


def _enumerate_kappa(db: NiceDisjointBranchTD, u: int) -> int:
    bag = sorted(db.bags[u])
    total = 0

    def rec(i: int, assignment: dict[int, int]):
        nonlocal total
        if i == len(bag):
            if local_constraint_eval(db.triples[u], assignment):
                total += 1
            return
        for c in db.domains[bag[i]]:
            assignment[bag[i]] = c
            rec(i + 1, assignment)
        del assignment[bag[i]]

    rec(0, {})
    return total


def _ceil_log(k: int, s: int) -> int:
    if k <= 1:
        return 0
    t, power = 0, 1
    while power < k:
        power *= s
        t += 1
    return t
