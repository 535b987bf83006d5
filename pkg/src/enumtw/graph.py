"""Simple undirected graphs with adjacency sets, plus PACE ``.gr`` I/O."""

from __future__ import annotations

from .errors import ParseError

ROLE_ORIGINAL = "original"
ROLE_EDGE = "edge-vertex"
ROLE_APEX = "apex"
ROLE_COPY = "copy"


class Graph:
    """Undirected simple graph on vertices 0..n-1; no self-loops allowed."""

    __slots__ = ("n", "adj", "names", "roles")

    def __init__(self, n: int, names=None, roles=None):
        self.n = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.names: list[str] | None = list(names) if names is not None else None
        self.roles: list[str] | None = list(roles) if roles is not None else None

    def add_edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise ValueError(f"edge ({u},{v}) out of range")
        self.adj[u].add(v)
        self.adj[v].add(u)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self):
        for u in range(self.n):
            for v in self.adj[u]:
                if u < v:
                    yield (u, v)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> set[int]:
        return self.adj[v]

    def vertex_name(self, v: int) -> str:
        if self.names is not None:
            return self.names[v]
        return str(v + 1)

    def copy(self) -> "Graph":
        g = Graph(self.n, self.names, self.roles)
        g.adj = [set(a) for a in self.adj]
        return g

    def check_symmetric(self) -> bool:
        return all(u in self.adj[v] for u in range(self.n) for v in self.adj[u])

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def graph_from_edges(n: int, edges, names=None) -> Graph:
    g = Graph(n, names=names)
    for u, v in edges:
        g.add_edge(u, v)
    return g


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, list[int]]:
    """Subgraph induced by ``vertices``; returns it with the old-id list.

    New ids follow the sorted order of ``vertices``.
    """
    keep = sorted(set(vertices))
    for v in keep:
        if not (0 <= v < g.n):
            raise ValueError(f"vertex {v} not in graph")
    remap = {v: i for i, v in enumerate(keep)}
    names = [g.vertex_name(v) for v in keep] if g.names is not None else None
    sub = Graph(len(keep), names=names)
    for v in keep:
        for w in g.adj[v]:
            if w in remap and v < w:
                sub.add_edge(remap[v], remap[w])
    return sub, keep


def parse_graph(text: str | bytes) -> Graph:
    """Parse a PACE 2017 ``.gr`` file (``p tw <n> <m>`` + edge lines)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    g = None
    m_declared = None
    edges_seen = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "tw":
                raise ParseError("malformed header (expected 'p tw <n> <m>')", lineno)
            try:
                n, m_declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("malformed header (non-integer counts)", lineno) from None
            if n < 0 or m_declared < 0:
                raise ParseError("malformed header (negative counts)", lineno)
            g = Graph(n)
        else:
            if g is None:
                raise ParseError("edge before header", lineno)
            if len(parts) != 2:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[0]) - 1, int(parts[1]) - 1
            except ValueError:
                raise ParseError(f"malformed edge line {line!r}", lineno) from None
            if u == v:
                raise ParseError("self-loop", lineno)
            if not (0 <= u < g.n and 0 <= v < g.n):
                raise ParseError("vertex id out of range", lineno)
            g.add_edge(u, v)
            edges_seen += 1
    if g is None:
        raise ParseError("missing 'p tw' header")
    if edges_seen != m_declared:
        raise ParseError(f"header declared {m_declared} edges but found {edges_seen}")
    return g


def write_graph(g: Graph) -> str:
    lines = [f"p tw {g.n} {g.m}"]
    for u, v in sorted(g.edges()):
        lines.append(f"{u + 1} {v + 1}")
    return "\n".join(lines) + "\n"
