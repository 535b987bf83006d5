"""Per-node factor tables: which bag labelings admit a consistent partial solution.

The dynamic program runs bottom-up over a nice disjoint-branch TD and stores
each node's accepted labelings in a fixed-depth trie keyed in enumeration
order.  ``consistent_subset_semantics`` is the direct, set-quantified
specification of the same relation; it is used only by tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import labels as L
from .dbtd import (KAPPA_TRIPLE, PAIR_C0_C1, NiceDisjointBranchTD,
                   local_constraint_eval)
from .treedecomp import DJOIN, FORGET, INTRODUCE, LEAF
from .trie import Trie

_SIGMA = (L.S0, L.S1, L.SI)
_FRESH_OK = frozenset({L.SI, L.R0, L.W0, L.S0})


@dataclass
class FactorTables:
    """One trie per TD node plus the bag orders the keys follow."""

    tries: list[Trie]
    bag_orders: list[list[int]]  # per node: bag sorted by enumeration rank

    def total_entries(self) -> int:
        return sum(len(t) for t in self.tries)

    def total_nodes(self) -> int:
        return sum(t.node_count() for t in self.tries)

    def dump_node(self, u: int) -> list[str]:
        """Sorted accepted labelings of node u as label-name strings."""
        return sorted(L.labeling_str(key) for key in self.tries[u].keys())


def _bag_local_ok(labeling, positions, nbr_pos) -> bool:
    """In-bag validity of one labeling.

    Checks, for every bag vertex: an independent solution vertex has only
    rho neighbors in the bag, and a private neighbor's in-bag dominator
    count plus its pending count stays at most one.
    """
    for p in positions:
        c = labeling[p]
        if c == L.SI:
            for q in nbr_pos[p]:
                if labeling[q] < L.R0:
                    return False
        elif c == L.W0 or c == L.W1:
            budget = 1 - (c - L.W0)
            for q in nbr_pos[p]:
                if labeling[q] <= L.SI:
                    budget -= 1
                    if budget < 0:
                        return False
    return True


def _forget_assertions_ok(cv, counts) -> bool:
    """The six forget-time assertions on the vertex being forgotten.

    ``counts`` holds (k_sigma, k_si, k_w0, k_w1) over the forgotten vertex's
    in-bag neighbors.
    """
    k_sigma, k_si, k_w0, k_w1 = counts
    if cv == L.SI:
        return k_sigma == 0 and k_w0 == 0 and k_w1 == 0
    if cv >= L.R0:
        return (cv - L.R0) + k_sigma >= 2
    if cv == L.W1:
        return k_sigma == 0
    if cv == L.W0:
        return k_si == 0 and k_sigma == 1
    if cv == L.S1:
        return k_si == 0 and k_w1 == 0
    if cv == L.S0:
        return k_si == 0 and k_w1 == 0 and k_w0 >= 1
    raise AssertionError(cv)


def compute_factors(db: NiceDisjointBranchTD, rank: dict[int, int]) -> FactorTables:
    """Bottom-up DP filling one trie per node.

    ``rank`` is the enumeration order over augmented vertices; trie keys list
    bag labels in ascending rank.
    """
    nnodes = len(db.bags)
    bag_orders: list[list[int]] = [sorted(db.bags[u], key=rank.__getitem__)
                                   for u in range(nnodes)]
    pos_in_bag: list[dict[int, int]] = [
        {x: i for i, x in enumerate(bo)} for bo in bag_orders]
    nbr_pos: list[list[list[int]]] = []
    for u in range(nnodes):
        bo = bag_orders[u]
        pos = pos_in_bag[u]
        nbr_pos.append([[pos[w] for w in db.aug_adj[x] if w in pos] for x in bo])

    tries: list[Trie | None] = [None] * nnodes
    order = db.depth_first_order()
    for u in reversed(order):
        kind = db.kinds[u]
        tag = kind[0]
        bo = bag_orders[u]
        trie = Trie(len(bo))
        if tag == LEAF:
            trie.insert(b"")
        elif tag == INTRODUCE:
            _do_introduce(db, u, kind[1], trie, tries, bag_orders, pos_in_bag, nbr_pos)
        elif tag == FORGET:
            _do_forget(db, u, kind[1], trie, tries, bag_orders, pos_in_bag, nbr_pos)
        elif tag == DJOIN:
            _do_join(db, u, trie, tries, bag_orders, pos_in_bag, nbr_pos)
        else:
            raise ValueError(f"unexpected node kind {tag}")
        tries[u] = trie
    return FactorTables(tries, bag_orders)  # type: ignore[arg-type]


def _triple_constraints_for(db, u, v):
    """Triples at node u that involve v, as (role, *) descriptors."""
    out = []
    for trip in db.triples[u]:
        if v in trip:
            out.append(trip)
    return out


def _do_introduce(db, u, v, trie, tries, bag_orders, pos_in_bag, nbr_pos):
    child = db.children[u][0]
    child_trie = tries[child]
    pos = pos_in_bag[u]
    p = pos[v]
    my_nbr = nbr_pos[u]
    fresh_rule = not db.cluster_introduce[u]
    domain = db.domains[v]
    # at a cluster introduce, the introduced original's label is forced by
    # its two copies (both already in the bag)
    forced_from = None
    for tv, c0, c1 in db.triples[u]:
        if tv == v and c0 in pos and c1 in pos:
            forced_from = (pos[c0], pos[c1])
            break

    for key in child_trie.keys():
        if forced_from is not None:
            q0, q1 = forced_from
            l0 = key[q0] if q0 < p else key[q0 - 1]
            l1 = key[q1] if q1 < p else key[q1 - 1]
            forced = KAPPA_TRIPLE.get((l0, l1))
            if forced is None or forced not in domain:
                continue
            labels = (forced,)
        else:
            labels = domain
        for c in labels:
            if fresh_rule and c not in _FRESH_OK:
                continue
            cand = key[:p] + bytes([c]) + key[p:]
            if not _intro_local_ok(cand, p, my_nbr):
                continue
            trie.insert(cand)


def _intro_local_ok(labeling, p, nbr_pos) -> bool:
    """Incremental in-bag checks triggered by the vertex at position p."""
    c = labeling[p]
    if c == L.SI:
        for q in nbr_pos[p]:
            if labeling[q] < L.R0:
                return False
    elif c < L.R0:
        for q in nbr_pos[p]:
            if labeling[q] == L.SI:
                return False
    if c == L.W0 or c == L.W1:
        budget = 1 - (c - L.W0)
        for q in nbr_pos[p]:
            if labeling[q] <= L.SI:
                budget -= 1
                if budget < 0:
                    return False
    if c <= L.SI:
        # the new solution vertex raises its omega-neighbors' dominator counts
        for q in nbr_pos[p]:
            cq = labeling[q]
            if cq == L.W0 or cq == L.W1:
                budget = 1 - (cq - L.W0)
                for r in nbr_pos[q]:
                    if labeling[r] <= L.SI:
                        budget -= 1
                        if budget < 0:
                            return False
    return True


# child label -> possible parent labels, per forgotten-label family
_RHO_LIFT = {L.R0: (L.R0, L.R1), L.R1: (L.R2,), L.R2: ()}

_ALL8 = frozenset(range(8))
# copy0 label -> compatible copy1 labels, and the reverse
_COMPAT_0TO1: dict[int, frozenset[int]] = {
    c: frozenset(b for (a, b) in PAIR_C0_C1 if a == c) for c in range(8)}
_COMPAT_1TO0: dict[int, frozenset[int]] = {
    c: frozenset(a for (a, b) in PAIR_C0_C1 if b == c) for c in range(8)}


def _do_forget(db, u, v, trie, tries, bag_orders, pos_in_bag, nbr_pos):
    child = db.children[u][0]
    child_trie = tries[child]
    child_pos = pos_in_bag[child]
    p = child_pos[v]
    skip_assertions = db.is_copy[v]
    vn_positions = [child_pos[w] for w in db.aug_adj[v] if w in child_pos]

    for key in child_trie.keys():
        cv = key[p]
        if not skip_assertions:
            k_sigma = k_si = k_w0 = k_w1 = 0
            for q in vn_positions:
                cq = key[q]
                if cq <= L.SI:
                    k_sigma += 1
                    if cq == L.SI:
                        k_si += 1
                elif cq == L.W0:
                    k_w0 += 1
                elif cq == L.W1:
                    k_w1 += 1
            if not _forget_assertions_ok(cv, (k_sigma, k_si, k_w0, k_w1)):
                continue
        base = key[:p] + key[p + 1:]
        # rewrite the forgotten vertex's neighbors child->parent
        options: list[list[int]] = []
        ok = True
        touched: list[int] = []
        if cv <= L.SI or cv == L.W0:
            for q in vn_positions:
                cq = key[q]
                qq = q if q < p else q - 1
                if cv <= L.SI:
                    if cq >= L.R0:
                        lift = _RHO_LIFT[cq]
                        if not lift:
                            ok = False
                            break
                        touched.append(qq)
                        options.append(list(lift))
                    elif cq == L.W0:
                        touched.append(qq)
                        options.append([L.W1])
                    elif cq == L.W1 or cq == L.SI:
                        ok = False
                        break
                    # sigma neighbors keep their label
                elif cv == L.W0:
                    if cq == L.S0 or cq == L.S1:
                        touched.append(qq)
                        options.append([L.S1])
                    elif cq == L.SI:
                        ok = False
                        break
        if not ok:
            continue
        if not touched:
            trie.insert(base)
            continue
        _insert_variants(trie, base, touched, options)


def _insert_variants(trie, base, touched, options):
    work = bytearray(base)
    k = len(touched)

    def rec(i):
        if i == k:
            trie.insert(bytes(work))
            return
        for lab in options[i]:
            work[touched[i]] = lab
            rec(i + 1)

    rec(0)


def _do_join(db, u, trie, tries, bag_orders, pos_in_bag, nbr_pos):
    ch0, ch1 = db.children[u]
    bo = bag_orders[u]
    left_bo, right_bo = bag_orders[ch0], bag_orders[ch1]
    pos = pos_in_bag[u]
    left_slots = [pos[x] for x in left_bo]
    right_slots = [pos[x] for x in right_bo]
    # cross-side in-bag edges require a joint validity pass
    left_set = set(left_bo)
    cross = any(w in left_set for x in right_bo for w in db.aug_adj[x])
    # cluster copy pairs link one left slot to one right slot; walking the
    # right trie constrained by them skips incompatible pairs wholesale
    left_index = {x: i for i, x in enumerate(left_bo)}
    right_index = {x: i for i, x in enumerate(right_bo)}
    links: list[tuple[int, int, dict[int, frozenset[int]]]] = []
    for _v, a, b in db.triples[u]:
        if a in left_index and b in right_index:
            links.append((left_index[a], right_index[b], _COMPAT_0TO1))
        elif b in left_index and a in right_index:
            links.append((left_index[b], right_index[a], _COMPAT_1TO0))
    positions = range(len(bo))
    my_nbr = nbr_pos[u]

    right_trie = tries[ch1]
    base_allowed = [_ALL8] * len(right_bo)
    template = bytearray(len(bo))
    for lk in tries[ch0].keys():
        for i, s in enumerate(left_slots):
            template[s] = lk[i]
        if links:
            allowed = list(base_allowed)
            for li, ri, compat in links:
                allowed[ri] = compat[lk[li]]
            right_iter = right_trie.keys_constrained(allowed)
        else:
            right_iter = right_trie.keys()
        for rk in right_iter:
            for i, s in enumerate(right_slots):
                template[s] = rk[i]
            if cross and not _bag_local_ok(template, positions, my_nbr):
                continue
            trie.insert(bytes(template))


# ---------------------------------------------------------------------------
# Specification oracle (tests only): direct evaluation of the consistency
# relation between a bag labeling and a candidate partial solution.
# ---------------------------------------------------------------------------


def _cluster_maps(db: NiceDisjointBranchTD) -> tuple[dict[int, int], dict[int, list[int]]]:
    cached = getattr(db, "_cluster_maps_cache", None)
    if cached is not None:
        return cached
    parent: dict[int, int] = {}
    kids: dict[int, list[int]] = {}
    seen = set()
    for u in range(len(db.bags)):
        for trip in db.triples[u]:
            if trip in seen:
                continue
            seen.add(trip)
            v, a, b = trip
            parent[a] = v
            parent[b] = v
            kids.setdefault(v, []).extend((a, b))
    db._cluster_maps_cache = (parent, kids)
    return parent, kids


def subtree_vertices(db: NiceDisjointBranchTD, u: int) -> frozenset[int]:
    out: set[int] = set()
    for t in db.subtree_nodes(u):
        out |= db.bags[t]
    return frozenset(out)


def consistent_subset_semantics(db: NiceDisjointBranchTD, u: int,
                                assignment: dict[int, int],
                                d_sub: frozenset[int] | set[int],
                                v_sub: frozenset[int] | None = None) -> bool:
    """Is ``d_sub`` a partial solution consistent with the bag labeling?

    A vertex split into copies is treated as one logical vertex: the copies
    mirror its membership and its counts aggregate over the neighborhoods of
    all its in-scope copy descendants.  For copy clusters that straddle the
    bag boundary, the out-of-bag members must admit labels of their own that
    describe ``d_sub`` inside their branch and satisfy the cluster clauses
    jointly with the in-bag labels.
    """
    bag = db.bags[u]
    if v_sub is None:
        v_sub = subtree_vertices(db, u)
    d_sub = frozenset(d_sub)
    if not d_sub <= v_sub:
        return False
    parent_of, kids_of = _cluster_maps(db)

    # copy clusters agree on membership inside the subtree
    for c, par in parent_of.items():
        if c in v_sub and par in v_sub:
            if (c in d_sub) != (par in d_sub):
                return False

    def resolve(x: int) -> int:
        """Topmost in-scope representative of x's copy cluster."""
        while True:
            par = parent_of.get(x)
            if par is None or par not in v_sub:
                return x
            x = par

    def eff_neighbors(x: int) -> set[int]:
        """Fragment-level neighbors of the logical vertex rooted at x."""
        out: set[int] = set()
        stack = [x]
        while stack:
            y = stack.pop()
            out |= db.aug_adj[y] & v_sub
            stack.extend(k for k in kids_of.get(y, ()) if k in v_sub)
        return out

    def logical_private_of(a: int, x: int) -> bool:
        """Is logical vertex a (not in D) a private neighbor of x?

        A bag vertex can only serve as a private witness when its label is an
        omega label: a rho label commits it to a second dominator.
        """
        if a in assignment and assignment[a] not in (L.W0, L.W1):
            return False
        doms = eff_neighbors(a) & d_sub
        return len(doms) == 1 and db.origin[next(iter(doms))] == db.origin[x]

    def label_ok(x: int, lx: int, in_bag: bool) -> bool:
        if (lx <= L.SI) != (x in d_sub):
            return False
        effn = eff_neighbors(x)
        doms = effn & d_sub
        if lx == L.W0 or lx == L.W1:
            return len(doms) <= 1 and len(doms - bag) == lx - L.W0
        if lx >= L.R0:
            return len(doms - bag) >= lx - L.R0
        if lx == L.S1:
            if in_bag and any(assignment.get(w) == L.W1
                              for w in db.aug_adj[x] & bag):
                return False
            return any(a not in bag and a not in d_sub and logical_private_of(a, x)
                       for a in {resolve(w) for w in effn})
        if lx == L.S0:
            return all(len(eff_neighbors(a) & d_sub) >= 2
                       for a in {resolve(w) for w in effn}
                       if a not in bag and a not in d_sub)
        # sI: independent in the solution, all logical neighbors doubly dominated
        if doms:
            return False
        for a in {resolve(w) for w in effn}:
            if a in bag:
                if a in assignment and assignment[a] < L.R0:
                    return False
            elif a in d_sub or len(eff_neighbors(a) & d_sub) < 2:
                return False
        return True

    for x, lx in assignment.items():
        if not label_ok(x, lx, True):
            return False

    # straddling copy clusters at this node: the forgotten members must carry
    # labels that hold for d_sub and complete the cluster clauses (above the
    # cluster the aggregation is captured by the effective neighborhoods)
    for trip in db.triples[u]:
        present = [m for m in trip if m in assignment]
        if not present:
            continue
        missing = [m for m in trip if m not in assignment and m in v_sub]
        if not missing:
            continue
        base = {m: assignment[m] for m in present}
        if not _some_completion(db, trip, base, missing, label_ok):
            return False

    below = v_sub - bag
    for x in below:
        if resolve(x) != x:
            continue  # fragment of a logical vertex checked elsewhere
        effn = eff_neighbors(x)
        if x not in d_sub:
            if not effn & d_sub:
                return False
        else:
            has_private = any(
                a not in d_sub and logical_private_of(a, x)
                for a in {resolve(w) for w in effn})
            if not has_private and effn & d_sub:
                return False
    return True


def _some_completion(db, trip, base, missing, label_ok) -> bool:
    """Can the missing triple members be labeled so the clauses and their own
    branch conditions hold?"""

    def rec(i: int, assign: dict[int, int]) -> bool:
        if i == len(missing):
            return local_constraint_eval([trip], assign)
        x = missing[i]
        for lx in db.domains[x]:
            if label_ok(x, lx, False):
                assign[x] = lx
                if rec(i + 1, assign):
                    del assign[x]
                    return True
                del assign[x]
        return False

    return rec(0, dict(base))
