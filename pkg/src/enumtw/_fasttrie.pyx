# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled factor trie over the fixed 8-symbol label alphabet.

Same contract as enumtw.trie_py.Trie: fixed-depth byte-string keys,
prefix-shared storage, O(depth) insert and lookup.
"""

from libc.stdlib cimport malloc, realloc, free
from libc.string cimport memset

cdef int ALPHABET = 8


cdef class Trie:
    cdef int depth
    cdef long _count
    cdef bint _accept_empty
    cdef int *_children        # flat [capacity * 8] child table, -1 = absent
    cdef long _nodes           # nodes in use
    cdef long _capacity

    def __cinit__(self, int depth):
        self.depth = depth
        self._count = 0
        self._accept_empty = False
        self._capacity = 64
        self._children = <int *> malloc(self._capacity * ALPHABET * sizeof(int))
        if self._children == NULL:
            raise MemoryError()
        memset(self._children, 0xFF, self._capacity * ALPHABET * sizeof(int))
        self._nodes = 1  # root

    def __dealloc__(self):
        if self._children != NULL:
            free(self._children)

    cdef long _new_node(self) except -1:
        cdef long idx = self._nodes
        cdef long newcap
        if idx >= self._capacity:
            newcap = self._capacity * 2
            self._children = <int *> realloc(self._children, newcap * ALPHABET * sizeof(int))
            if self._children == NULL:
                raise MemoryError()
            memset(self._children + self._capacity * ALPHABET, 0xFF,
                   (newcap - self._capacity) * ALPHABET * sizeof(int))
            self._capacity = newcap
        self._nodes += 1
        return idx

    def insert(self, bytes key):
        cdef const unsigned char *k = key
        cdef int i, c
        cdef long node = 0, nxt
        if len(key) != self.depth:
            raise ValueError(f"key length {len(key)} != trie depth {self.depth}")
        if self.depth == 0:
            if not self._accept_empty:
                self._accept_empty = True
                self._count = 1
            return
        for i in range(self.depth - 1):
            c = k[i]
            nxt = self._children[node * ALPHABET + c]
            if nxt < 0:
                nxt = self._new_node()
                self._children[node * ALPHABET + c] = nxt
            node = nxt
        c = k[self.depth - 1]
        if self._children[node * ALPHABET + c] == -1:
            self._children[node * ALPHABET + c] = -2  # leaf marker
            self._count += 1

    cpdef bint lookup(self, bytes key) except? 0:
        cdef const unsigned char *k = key
        cdef int i, c
        cdef long node = 0
        if len(key) != self.depth:
            raise ValueError(f"key length {len(key)} != trie depth {self.depth}")
        if self.depth == 0:
            return self._accept_empty
        for i in range(self.depth - 1):
            c = k[i]
            node = self._children[node * ALPHABET + c]
            if node < 0:
                return False
        return self._children[node * ALPHABET + k[self.depth - 1]] == -2

    def __contains__(self, bytes key):
        return self.lookup(key)

    def __len__(self):
        return self._count

    def keys(self):
        """Iterate accepted keys in lexicographic order."""
        if self.depth == 0:
            if self._accept_empty:
                yield b""
            return
        yield from self._walk(0, b"")

    def _walk(self, long node, bytes prefix):
        cdef int c
        cdef long nxt
        if len(prefix) == self.depth - 1:
            for c in range(ALPHABET):
                if self._children[node * ALPHABET + c] == -2:
                    yield prefix + bytes([c])
        else:
            for c in range(ALPHABET):
                nxt = self._children[node * ALPHABET + c]
                if nxt >= 0:
                    yield from self._walk(nxt, prefix + bytes([c]))

    def keys_constrained(self, allowed):
        """Iterate accepted keys whose symbol at depth d lies in allowed[d]."""
        cdef int d, c
        if self.depth == 0:
            if self._accept_empty:
                yield b""
            return
        masks = bytearray(self.depth)
        for d in range(self.depth):
            for c in allowed[d]:
                masks[d] |= (1 << c)
        yield from self._walk_masked(0, b"", bytes(masks))

    def _walk_masked(self, long node, bytes prefix, bytes masks):
        cdef int c
        cdef long nxt
        cdef int d = len(prefix)
        cdef unsigned char mask = masks[d]
        if d == self.depth - 1:
            for c in range(ALPHABET):
                if (mask >> c) & 1 and self._children[node * ALPHABET + c] == -2:
                    yield prefix + bytes([c])
        else:
            for c in range(ALPHABET):
                if (mask >> c) & 1:
                    nxt = self._children[node * ALPHABET + c]
                    if nxt >= 0:
                        yield from self._walk_masked(nxt, prefix + bytes([c]), masks)

    def node_count(self):
        return self._nodes + self._count


BACKEND = "cython"
