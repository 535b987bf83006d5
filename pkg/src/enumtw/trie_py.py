"""Pure-Python factor trie over the fixed 8-symbol label alphabet.

Keys are ``bytes`` of a fixed depth (one byte per bag slot, label index 0-7).
Lookup and insert walk at most ``depth`` edges; prefixes are shared.
"""

from __future__ import annotations


class Trie:
    __slots__ = ("depth", "_root", "_count", "_accept_empty")

    def __init__(self, depth: int):
        self.depth = depth
        self._root: dict = {}
        self._count = 0
        self._accept_empty = False

    def insert(self, key: bytes) -> None:
        if len(key) != self.depth:
            raise ValueError(f"key length {len(key)} != trie depth {self.depth}")
        if self.depth == 0:
            if not self._accept_empty:
                self._accept_empty = True
                self._count = 1
            return
        node = self._root
        for c in key[:-1]:
            nxt = node.get(c)
            if nxt is None:
                nxt = {}
                node[c] = nxt
            node = nxt
        last = key[-1]
        if last not in node:
            node[last] = True
            self._count += 1

    def lookup(self, key: bytes) -> bool:
        if len(key) != self.depth:
            raise ValueError(f"key length {len(key)} != trie depth {self.depth}")
        if self.depth == 0:
            return self._accept_empty
        node = self._root
        for c in key[:-1]:
            node = node.get(c)
            if node is None:
                return False
        return key[-1] in node

    __contains__ = lookup

    def __len__(self) -> int:
        return self._count

    def keys(self):
        """Iterate accepted keys in lexicographic order."""
        if self.depth == 0:
            if self._accept_empty:
                yield b""
            return

        last = self.depth - 1

        def walk(node, prefix):
            if len(prefix) == last:
                for c in sorted(node):
                    yield prefix + bytes([c])
            else:
                for c in sorted(node):
                    yield from walk(node[c], prefix + bytes([c]))

        yield from walk(self._root, b"")

    def keys_constrained(self, allowed):
        """Iterate accepted keys whose symbol at depth d lies in allowed[d]."""
        if self.depth == 0:
            if self._accept_empty:
                yield b""
            return

        last = self.depth - 1

        def walk(node, d, prefix):
            ok = allowed[d]
            if d == last:
                for c in sorted(node):
                    if c in ok:
                        yield prefix + bytes([c])
            else:
                for c in sorted(node):
                    if c in ok:
                        yield from walk(node[c], d + 1, prefix + bytes([c]))

        yield from walk(self._root, 0, b"")

    def node_count(self) -> int:
        """Internal trie nodes, root included (used for memory accounting)."""
        if self.depth == 0:
            return 1
        total = 1

        def walk(node, level):
            nonlocal total
            total += len(node)
            if level < self.depth - 1:
                for child in node.values():
                    walk(child, level + 1)

        walk(self._root, 0)
        return total


BACKEND = "python"
