"""Hypergraphs: parsing, serialization, and basic accessors.

File format (line based, ``#`` comments allowed)::

    p hg <n> <m>
    e v1 v2 ...        # one line per hyperedge, 1-based vertex ids

Vertex ids are dense 0-based integers internally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class Hypergraph:
    n: int
    edges: tuple[tuple[int, ...], ...]
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        for e in self.edges:
            if not e:
                raise ValueError("empty hyperedge")
            if any(v < 0 or v >= self.n for v in e):
                raise ValueError("vertex id out of range")
            if len(set(e)) != len(e):
                raise ValueError("duplicate vertex in hyperedge")

    @property
    def m(self) -> int:
        return len(self.edges)

    def size(self) -> int:
        """||H|| = |V| + sum of edge cardinalities."""
        return self.n + sum(len(e) for e in self.edges)

    def vertex_name(self, v: int) -> str:
        if self.names is not None:
            return self.names[v]
        return str(v + 1)

    def edge_name(self, i: int) -> str:
        return f"e{i}"

    def dedupe(self) -> "Hypergraph":
        """Drop duplicate hyperedges, keeping first occurrences."""
        seen = set()
        kept = []
        for e in self.edges:
            if e not in seen:
                seen.add(e)
                kept.append(e)
        return Hypergraph(self.n, tuple(kept), self.names)


def _make_edge(vertices) -> tuple[int, ...]:
    return tuple(sorted(vertices))


def hypergraph_from_edges(n: int, edges, names=None) -> Hypergraph:
    return Hypergraph(n, tuple(_make_edge(e) for e in edges),
                      tuple(names) if names is not None else None)


def parse_hypergraph(text: str | bytes) -> Hypergraph:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    n = m = None
    edges = []
    symbolic: dict[str, int] = {}
    uses_symbols = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate header", lineno)
            if len(parts) != 4 or parts[1] != "hg":
                raise ParseError("malformed header (expected 'p hg <n> <m>')", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("malformed header (non-integer counts)", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("malformed header (negative counts)", lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge before header", lineno)
            tokens = parts[1:]
            if not tokens:
                raise ParseError("empty hyperedge", lineno)
            verts = []
            for tok in tokens:
                if tok.isdigit():
                    v = int(tok) - 1
                    if v < 0 or v >= n:
                        raise ParseError(f"vertex id {tok} out of range", lineno)
                else:
                    uses_symbols = True
                    if tok not in symbolic:
                        if len(symbolic) >= n:
                            raise ParseError(f"vertex name {tok!r} exceeds declared count", lineno)
                        symbolic[tok] = len(symbolic)
                    v = symbolic[tok]
                verts.append(v)
            if len(set(verts)) != len(verts):
                raise ParseError("duplicate vertex in hyperedge", lineno)
            edges.append(_make_edge(verts))
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise ParseError("missing 'p hg' header")
    if len(edges) != m:
        raise ParseError(f"header declared {m} edges but found {len(edges)}")
    names = None
    if uses_symbols:
        by_id = sorted(symbolic, key=symbolic.get)
        names = tuple(by_id) + tuple(str(i + 1) for i in range(len(by_id), n))
    return Hypergraph(n, tuple(edges), names)


def write_hypergraph(h: Hypergraph) -> str:
    lines = [f"p hg {h.n} {h.m}"]
    for e in h.edges:
        lines.append("e " + " ".join(str(v + 1) for v in e))
    return "\n".join(lines) + "\n"
