import random

import pytest

from enumtw import trie as trie_mod
from enumtw import trie_py


def _backends():
    yield trie_py.Trie
    if trie_mod.BACKEND == "cython":
        yield trie_mod.Trie


def test_backend_reported():
    assert trie_mod.BACKEND in ("cython", "python")


@pytest.mark.parametrize("depth", [0, 1, 3, 6])
def test_backends_agree(depth):
    rng = random.Random(depth)
    keys = {bytes(rng.randrange(8) for _ in range(depth))
            for _ in range(50)}
    tries = [cls(depth) for cls in _backends()]
    for k in sorted(keys):
        for t in tries:
            t.insert(k)
            t.insert(k)  # idempotent
    probes = {bytes(rng.randrange(8) for _ in range(depth)) for _ in range(80)}
    for t in tries:
        assert len(t) == len(keys)
        assert sorted(t.keys()) == sorted(keys)
        for p in probes | keys:
            assert t.lookup(p) == (p in keys)


def test_backends_agree_constrained_walk():
    rng = random.Random(5)
    depth = 5
    keys = {bytes(rng.randrange(8) for _ in range(depth)) for _ in range(120)}
    tries = [cls(depth) for cls in _backends()]
    for k in keys:
        for t in tries:
            t.insert(k)
    for trial in range(30):
        allowed = [frozenset(rng.sample(range(8), rng.randint(1, 8)))
                   for _ in range(depth)]
        want = sorted(k for k in keys if all(c in a for c, a in zip(k, allowed)))
        for t in tries:
            assert sorted(t.keys_constrained(allowed)) == want
