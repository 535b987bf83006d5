"""Compare the compiled trie kernel against the pure-Python fallback.

Runs micro-benchmarks on raw trie operations and a full preprocessing plus
enumeration pipeline under each backend (the backend is chosen at import
time, so each measurement runs in a subprocess).

Usage: python3 benchmarks/bench_tries.py
"""

from __future__ import annotations

import json
import os
import subprocess
import sys

WORKER = """
import json, random, time
from enumtw.trie import Trie, BACKEND

def micro():
    rng = random.Random(0)
    keys = [bytes(rng.randrange(8) for _ in range(8)) for _ in range(60000)]
    t0 = time.perf_counter()
    trie = Trie(8)
    for k in keys:
        trie.insert(k)
    t_insert = time.perf_counter() - t0
    t0 = time.perf_counter()
    hits = 0
    for _ in range(4):
        for k in keys:
            hits += trie.lookup(k)
    t_lookup = time.perf_counter() - t0
    t0 = time.perf_counter()
    allowed = [frozenset({0, 1, 2, 5})] * 8
    n = sum(1 for _ in trie.keys_constrained(allowed))
    t_walk = time.perf_counter() - t0
    return {"insert_s": t_insert, "lookup_s": t_lookup, "walk_s": t_walk,
            "entries": len(trie), "walk_matches": n}

def pipeline():
    from enumtw.generators import random_partial_ktree
    from enumtw.pipeline import domination_run
    t0 = time.perf_counter()
    total = 0
    for seed in range(6):
        g = random_partial_ktree(40, 3, seed=100 + seed, keep=0.85)
        run = domination_run(g)
        count = 0
        for _ in run.solutions():
            count += 1
            if count >= 400:
                break
        total += count
    return {"pipeline_s": time.perf_counter() - t0, "solutions": total}

out = {"backend": BACKEND}
out.update(micro())
out.update(pipeline())
print(json.dumps(out))
"""


def run(backend: str) -> dict:
    env = dict(os.environ)
    if backend == "python":
        env["ENUMTW_PURE_PYTHON"] = "1"
    else:
        env.pop("ENUMTW_PURE_PYTHON", None)
    res = subprocess.run([sys.executable, "-c", WORKER], env=env,
                         capture_output=True, text=True, check=True)
    return json.loads(res.stdout)


def main():
    rows = [run("cython"), run("python")]
    if rows[0]["backend"] == rows[1]["backend"]:
        print("compiled kernel unavailable; showing pure-Python numbers only")
        rows = rows[:1]
    cols = ("backend", "insert_s", "lookup_s", "walk_s", "pipeline_s",
            "entries", "solutions")
    print(",".join(cols))
    for r in rows:
        print(",".join(f"{r[c]:.3f}" if isinstance(r[c], float) else str(r[c])
                       for c in cols))
    if len(rows) == 2:
        for metric in ("insert_s", "lookup_s", "walk_s", "pipeline_s"):
            speedup = rows[1][metric] / rows[0][metric]
            print(f"# {metric}: compiled is {speedup:.1f}x faster")
        assert rows[0]["entries"] == rows[1]["entries"]
        assert rows[0]["solutions"] == rows[1]["solutions"]


if __name__ == "__main__":
    main()
