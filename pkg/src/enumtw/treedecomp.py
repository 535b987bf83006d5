"""Tree decompositions: validation, min-fill construction, PACE I/O, nice form."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import ParseError
from .graph import Graph


@dataclass
class TreeDecomposition:
    """Bags indexed 0..k-1 plus undirected tree edges between them."""

    bags: list[frozenset[int]]
    tree_edges: list[tuple[int, int]]
    n_vertices: int

    @property
    def width(self) -> int:
        if not self.bags:
            return -1
        return max(len(b) for b in self.bags) - 1

    def node_neighbors(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj


def validate_td(g: Graph, td: TreeDecomposition) -> list[str]:
    """Return a list of violations (empty iff the decomposition is valid)."""
    report: list[str] = []
    k = len(td.bags)
    for a, b in td.tree_edges:
        if not (0 <= a < k and 0 <= b < k):
            report.append(f"tree edge ({a},{b}) references unknown node")
            return report
    expected_edges = k - 1 if k else 0
    if len(td.tree_edges) != expected_edges:
        report.append(f"{len(td.tree_edges)} tree edges on {k} nodes: not a tree")
    # connectivity
    if k:
        adj = td.node_neighbors()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != k:
            report.append("tree is disconnected")
    covered = set()
    for b in td.bags:
        covered |= b
    for v in range(g.n):
        if v not in covered:
            report.append(f"vertex {g.vertex_name(v)} is in no bag")
    for b in td.bags:
        for v in b:
            if not (0 <= v < g.n):
                report.append(f"bag vertex {v} outside graph")
    for u, v in g.edges():
        if not any(u in b and v in b for b in td.bags):
            report.append(f"edge ({g.vertex_name(u)},{g.vertex_name(v)}) uncovered")
    # running intersection: occurrence set of each vertex must be connected
    if k and not report:
        adj = td.node_neighbors()
        for v in range(g.n):
            nodes = [i for i, b in enumerate(td.bags) if v in b]
            if not nodes:
                continue
            seen = {nodes[0]}
            stack = [nodes[0]]
            target = set(nodes)
            while stack:
                u = stack.pop()
                for w in adj[u]:
                    if w in target and w not in seen:
                        seen.add(w)
                        stack.append(w)
            if seen != target:
                report.append(f"running intersection violated for {g.vertex_name(v)}")
    return report


def min_fill_td(g: Graph, seed: int = 0) -> TreeDecomposition:
    """Tree decomposition from a min-fill elimination ordering.

    Deterministic: ties go to the lowest vertex id; a nonzero seed shuffles
    the tie-break order instead.
    """
    n = g.n
    if n == 0:
        return TreeDecomposition([frozenset()], [], 0)
    rank = list(range(n))
    if seed:
        rng = random.Random(seed)
        rng.shuffle(rank)
    tie = [0] * n
    for pos, v in enumerate(rank):
        tie[v] = pos

    work = [set(a) for a in g.adj]
    alive = set(range(n))
    elim_pos: dict[int, int] = {}
    bags: list[frozenset[int]] = []
    bag_of: dict[int, int] = {}

    def fill_cost(v: int) -> int:
        nb = [w for w in work[v]]
        cost = 0
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                if nb[j] not in work[nb[i]]:
                    cost += 1
        return cost

    order = []
    while alive:
        best = min(alive, key=lambda v: (fill_cost(v), tie[v]))
        nb = sorted(work[best])
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                work[nb[i]].add(nb[j])
                work[nb[j]].add(nb[i])
        bag = frozenset([best, *nb])
        elim_pos[best] = len(order)
        bag_of[best] = len(bags)
        bags.append(bag)
        order.append(best)
        for w in nb:
            work[w].discard(best)
        alive.discard(best)

    edges: list[tuple[int, int]] = []
    for idx, v in enumerate(order):
        rest = [w for w in bags[idx] if w != v]
        if rest:
            w = min(rest, key=lambda x: elim_pos[x])
            edges.append((idx, bag_of[w]))
        elif idx + 1 < len(order):
            edges.append((idx, idx + 1))  # keep disconnected components in one tree

    td = TreeDecomposition(bags, edges, n)
    return _absorb_subset_bags(td)


def _absorb_subset_bags(td: TreeDecomposition) -> TreeDecomposition:
    """Contract tree edges whose child bag is a subset of the neighbor bag."""
    bags = list(td.bags)
    adj = {i: set() for i in range(len(bags))}
    for a, b in td.tree_edges:
        adj[a].add(b)
        adj[b].add(a)
    changed = True
    while changed:
        changed = False
        for x in sorted(adj):
            for y in sorted(adj[x]):
                if bags[x] <= bags[y]:
                    for z in adj[x]:
                        if z != y:
                            adj[z].discard(x)
                            adj[z].add(y)
                            adj[y].add(z)
                    adj[y].discard(x)
                    del adj[x]
                    changed = True
                    break
            if changed:
                break
    keep = sorted(adj)
    remap = {old: i for i, old in enumerate(keep)}
    new_bags = [bags[old] for old in keep]
    new_edges = sorted(
        (min(remap[a], remap[b]), max(remap[a], remap[b]))
        for a in adj
        for b in adj[a]
        if a < b
    )
    return TreeDecomposition(new_bags, new_edges, td.n_vertices)


def parse_td(text: str | bytes) -> TreeDecomposition:
    """Parse a PACE 2017 ``.td`` file."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    bags: dict[int, frozenset[int]] = {}
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "s":
            if header is not None:
                raise ParseError("duplicate 's td' header", lineno)
            if len(parts) != 5 or parts[1] != "td":
                raise ParseError("malformed header (expected 's td <bags> <width+1> <n>')", lineno)
            header = tuple(int(x) for x in parts[2:])
        elif parts[0] == "b":
            if header is None:
                raise ParseError("bag line before header", lineno)
            bid = int(parts[1])
            if bid in bags:
                raise ParseError(f"duplicate bag id {bid}", lineno)
            verts = frozenset(int(x) - 1 for x in parts[2:])
            if any(v < 0 or v >= header[2] for v in verts):
                raise ParseError("bag vertex out of range", lineno)
            bags[bid] = verts
        else:
            if header is None:
                raise ParseError("edge line before header", lineno)
            if len(parts) != 2:
                raise ParseError(f"malformed tree edge {line!r}", lineno)
            edges.append((int(parts[0]), int(parts[1])))
    if header is None:
        raise ParseError("missing 's td' header")
    nbags, width_plus, n = header
    if len(bags) != nbags:
        raise ParseError(f"header declared {nbags} bags but found {len(bags)}")
    if set(bags) != set(range(1, nbags + 1)):
        raise ParseError("bag ids must be 1..<bags>")
    actual = max((len(b) for b in bags.values()), default=0)
    if actual != width_plus:
        raise ParseError(f"declared width+1 = {width_plus} but largest bag has {actual}")
    bag_list = [bags[i] for i in range(1, nbags + 1)]
    edge_list = [(a - 1, b - 1) for a, b in edges]
    td = TreeDecomposition(bag_list, edge_list, n)
    if nbags:
        if len(edge_list) != nbags - 1:
            raise ParseError("tree edges do not form a tree")
        adj = td.node_neighbors()
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != nbags:
            raise ParseError("tree edges do not form a tree")
    return td


def write_td(td: TreeDecomposition) -> str:
    width_plus = max((len(b) for b in td.bags), default=0)
    lines = [f"s td {len(td.bags)} {width_plus} {td.n_vertices}"]
    for i, b in enumerate(td.bags, 1):
        lines.append(("b " + str(i) + " " + " ".join(str(v + 1) for v in sorted(b))).rstrip())
    for a, b in td.tree_edges:
        lines.append(f"{a + 1} {b + 1}")
    return "\n".join(lines) + "\n"


LEAF = "leaf"
INTRODUCE = "introduce"
FORGET = "forget"
JOIN = "join"
DJOIN = "disjoint-join"


@dataclass
class NiceTreeDecomposition:
    """Rooted TD with typed nodes (leaf / introduce / forget / join).

    ``kinds[u]`` is ``("leaf",)``, ``("introduce", v)``, ``("forget", v)``,
    or ``("join",)``; ``children`` preserves left-to-right order.
    """

    bags: list[frozenset[int]] = field(default_factory=list)
    kinds: list[tuple] = field(default_factory=list)
    children: list[list[int]] = field(default_factory=list)
    parent: list[int | None] = field(default_factory=list)
    root: int = -1
    n_vertices: int = 0

    def add(self, bag: frozenset[int], kind: tuple, child_ids: list[int]) -> int:
        nid = len(self.bags)
        self.bags.append(bag)
        self.kinds.append(kind)
        self.children.append(list(child_ids))
        self.parent.append(None)
        for c in child_ids:
            self.parent[c] = nid
        return nid

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1 if self.bags else -1

    def as_td(self) -> TreeDecomposition:
        edges = [(u, c) for u in range(len(self.bags)) for c in self.children[u]]
        return TreeDecomposition(list(self.bags), edges, self.n_vertices)

    def depth_first_order(self) -> list[int]:
        """Pre-order from the root, visiting children left to right."""
        out, stack = [], [self.root]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(reversed(self.children[u]))
        return out


def validate_nice(nice: NiceTreeDecomposition, g: Graph | None = None,
                  join_kinds=(JOIN,)) -> list[str]:
    """Check kind/bag relations, the empty root, and (optionally) TD validity."""
    report = []
    if nice.root < 0 or nice.root >= len(nice.bags):
        return ["missing root"]
    if nice.bags[nice.root]:
        report.append("root bag not empty")
    if nice.kinds[nice.root][0] != FORGET and len(nice.bags) > 1:
        report.append("root is not a forget node")
    for u, kind in enumerate(nice.kinds):
        bag = nice.bags[u]
        ch = nice.children[u]
        tag = kind[0]
        if tag == LEAF:
            if ch or bag:
                report.append(f"node {u}: leaf must have empty bag and no children")
        elif tag == INTRODUCE:
            if len(ch) != 1:
                report.append(f"node {u}: introduce must have one child")
            else:
                v = kind[1]
                if v in nice.bags[ch[0]] or bag != nice.bags[ch[0]] | {v}:
                    report.append(f"node {u}: introduce bag relation violated")
        elif tag == FORGET:
            if len(ch) != 1:
                report.append(f"node {u}: forget must have one child")
            else:
                v = kind[1]
                if v not in nice.bags[ch[0]] or bag != nice.bags[ch[0]] - {v}:
                    report.append(f"node {u}: forget bag relation violated")
        elif tag in join_kinds:
            if len(ch) != 2:
                report.append(f"node {u}: join must have two children")
            elif tag == JOIN:
                if not (bag == nice.bags[ch[0]] == nice.bags[ch[1]]):
                    report.append(f"node {u}: join bags differ")
            else:  # disjoint join
                b0, b1 = nice.bags[ch[0]], nice.bags[ch[1]]
                if b0 & b1:
                    report.append(f"node {u}: disjoint-join children overlap")
                if bag != b0 | b1:
                    report.append(f"node {u}: disjoint-join bag is not the union")
        else:
            report.append(f"node {u}: unknown kind {tag}")
    if g is not None:
        report.extend(validate_td(g, nice.as_td()))
    return report


def _chain_forget(nice: NiceTreeDecomposition, top: int, remove: set[int]) -> int:
    bag = set(nice.bags[top])
    for v in sorted(remove, reverse=True):
        bag.discard(v)
        top = nice.add(frozenset(bag), (FORGET, v), [top])
    return top


def _chain_introduce(nice: NiceTreeDecomposition, top: int, insert: set[int]) -> int:
    bag = set(nice.bags[top])
    for v in sorted(insert):
        bag.add(v)
        top = nice.add(frozenset(bag), (INTRODUCE, v), [top])
    return top


def make_nice(td: TreeDecomposition, g: Graph, root: int | None = None) -> NiceTreeDecomposition:
    """Convert a valid TD into a nice TD of the same width.

    Joins are binarized; at branching points the join bag is slimmed to the
    vertices actually shared with the children subtrees (this keeps join bags
    small, which bounds the DP cost after the disjoint-branch transformation).
    The root is normalized to an empty forget node.
    """
    problems = validate_td(g, td)
    if problems:
        raise ValueError("invalid tree decomposition: " + "; ".join(problems))
    nice = NiceTreeDecomposition(n_vertices=g.n)
    if not td.bags:
        nice.root = nice.add(frozenset(), (LEAF,), [])
        return nice

    if root is None:
        root = len(td.bags) - 1
    adj = td.node_neighbors()

    def build(u: int, from_node: int | None) -> tuple[int, frozenset[int]]:
        """Return (top nice node with bag = td.bags[u], subtree vertex set)."""
        kids = [w for w in adj[u] if w != from_node]
        built = []
        for w in kids:
            top_w, vset_w = build(w, u)
            built.append((top_w, vset_w))
        bag = td.bags[u]
        if not built:
            leaf = nice.add(frozenset(), (LEAF,), [])
            top = _chain_introduce(nice, leaf, set(bag))
            return top, bag
        if len(built) == 1:
            top_w, vset_w = built[0]
            child_bag = nice.bags[top_w]
            top = _chain_forget(nice, top_w, set(child_bag - bag))
            top = _chain_introduce(nice, top, set(bag - child_bag))
            return top, bag | vset_w
        # Branching: join at the slim bag shared with child subtrees.
        union_vset = frozenset().union(*(vs for _, vs in built))
        slim = frozenset(v for v in bag if v in union_vset)
        legs = []
        for top_w, vset_w in built:
            child_bag = nice.bags[top_w]
            leg = _chain_forget(nice, top_w, set(child_bag - slim))
            leg = _chain_introduce(nice, leg, set(slim - child_bag))
            legs.append((leg, vset_w))
        legs.sort(key=lambda item: min(item[1], default=-1))
        acc = legs[0][0]
        for leg, _ in legs[1:]:
            acc = nice.add(slim, (JOIN,), [acc, leg])
        top = _chain_introduce(nice, acc, set(bag - slim))
        return top, bag | union_vset

    top, _ = build(root, None)
    nice.root = _chain_forget(nice, top, set(nice.bags[top]))
    if nice.bags[top] == frozenset() and top == nice.root:
        # degenerate: root bag already empty; ensure the root is a forget node
        # only when the tree has more than one node.
        pass
    return nice
