import random

from helpers import g9_fixture, p3_fixture
from enumtw import labels as L
from enumtw.dbtd import nice_dbtd_from_dbtd, transform_to_dbjt
from enumtw.enumeration import (Enumerator, check_order_invariants,
                                compute_order, increment_labeling,
                                is_extendable, validate_prefix)
from enumtw.factors import compute_factors
from enumtw.generators import (gnp_graph, path_graph,
                               random_disjoint_branch_td, random_partial_ktree)
from enumtw.graph import graph_from_edges
from enumtw.oracle import brute_minimal_dominating_sets
from enumtw.pipeline import domination_run
from enumtw.treedecomp import make_nice, min_fill_td, validate_td


def test_compute_order_g9():
    g, db, node_u = g9_fixture()
    order = compute_order(db)
    assert [db.names[x] for x in order.Q] == list("hfagibcde")
    assert order.B[2] == node_u  # c's home bag is the {a,b,c} node


def test_order_invariants_on_fixture():
    g, db, _ = g9_fixture()
    order = compute_order(db)
    assert check_order_invariants(db, order) == []


def test_order_invariants_random_structures():
    checked = 0
    for seed in range(300):
        td, root, g = random_disjoint_branch_td(seed)
        if g.n == 0 or validate_td(g, td):
            continue
        db = nice_dbtd_from_dbtd(td, root, g)
        order = compute_order(db)  # raises if the home map is not injective
        assert check_order_invariants(db, order) == [], f"seed {seed}"
        checked += 1
        if checked >= 100:
            break
    assert checked >= 100
    for seed in range(8):
        g = random_partial_ktree(12, 2, seed=660 + seed)
        db = transform_to_dbjt(make_nice(min_fill_td(g, 0), g), g)
        order = compute_order(db)
        assert check_order_invariants(db, order) == []


def test_increment_sigma_i_first_vertex():
    out = increment_labeling({}, vertex=0, label=L.SI, prefix_neighbors=[])
    assert out == [{0: L.SI}]


def test_increment_two_way_split():
    theta = {0: L.S1}
    out = increment_labeling(theta, vertex=1, label=L.W0, prefix_neighbors=[0])
    assert {0: L.S0, 1: L.W0} in out
    assert {0: L.S1, 1: L.W0} in out
    assert len(out) == 2


def test_increment_sigma_next_to_independent():
    theta = {0: L.SI}
    assert increment_labeling(theta, vertex=1, label=L.S0, prefix_neighbors=[0]) == []
    assert increment_labeling(theta, vertex=1, label=L.S1, prefix_neighbors=[0]) == []


def test_increment_rho_decrement_and_index():
    theta = {0: L.R2}
    out = increment_labeling(theta, vertex=1, label=L.S1, prefix_neighbors=[0])
    assert out == [{0: L.R1, 1: L.S1}]
    # the rho index is forced by the earlier dominator count
    assert increment_labeling({0: L.S0}, 1, L.R2, [0]) == []
    assert increment_labeling({0: L.S0}, 1, L.R1, [0]) == [{0: L.S0, 1: L.R1}]


def test_increment_w0_needs_unseen_dominator():
    # the unique earlier dominator must still have a pending private slot
    assert increment_labeling({0: L.S0}, 1, L.W0, [0]) == []


def _p3_prepared():
    g, db = p3_fixture()
    order = compute_order(db)
    tables = compute_factors(db, order.rank)
    return g, db, order, tables


def test_is_extendable_p3_verdicts():
    g, db, order, tables = _p3_prepared()
    assert [db.names[x] for x in order.Q] == ["1", "2", "3"]
    assert is_extendable(tables, order, db, {0: L.SI}, 0)
    assert not is_extendable(tables, order, db, {0: L.S1}, 0)
    assert not is_extendable(tables, order, db, {0: L.S0, 1: L.W0}, 1)


def test_enum_path_exact_order():
    got = [sorted(s) for s in domination_run(path_graph(3)).solutions()]
    assert got == [[1], [0, 2]]


def test_enum_g9_contains_dfi():
    g, db, _ = g9_fixture()
    order = compute_order(db)
    tables = compute_factors(db, order.rank)
    sols = set(Enumerator(db, order, tables, 9).solutions())
    assert frozenset({3, 5, 8}) in sols  # {d, f, i}
    assert sols == brute_minimal_dominating_sets(g)


def test_enum_single_vertex():
    g = graph_from_edges(1, [])
    assert list(domination_run(g).solutions()) == [frozenset({0})]


def test_enum_empty_graph():
    g = graph_from_edges(0, [])
    assert list(domination_run(g).solutions()) == [frozenset()]


def test_enum_bijection_small_random():
    rng = random.Random(9)
    for i in range(60):
        n = rng.randint(1, 9)
        g = gnp_graph(n, rng.choice((0.2, 0.4, 0.6)), 7000 + i)
        run = domination_run(g, debug=True)
        got = list(run.solutions())
        assert len(got) == len(set(got)), f"instance {i} emitted duplicates"
        assert set(got) == brute_minimal_dominating_sets(g), f"instance {i}"
        assert run.stats.dead_branches == 0, f"instance {i}"


def test_prefix_validator_clean_on_path():
    g, db, order, tables = _p3_prepared()
    assert validate_prefix(db, order, {0: L.SI}) == []
    assert validate_prefix(db, order, {0: L.SI, 1: L.R1}) == []
    assert validate_prefix(db, order, {0: L.SI, 1: L.W0}) != []


def test_delay_stats_report():
    run = domination_run(path_graph(6))
    list(run.solutions())
    st = run.stats
    assert st.solutions == 4 or st.solutions > 0
    assert len(st.gaps) == st.solutions
    rep = st.report()
    assert rep.startswith("# delay")
    assert f"n={st.n}" in rep


def test_limit_early_termination():
    run = domination_run(path_graph(12))
    got = []
    for s in run.solutions():
        got.append(s)
        if len(got) == 3:
            break
    assert len(got) == 3


def test_gap_lookup_bound():
    # no vain branches: lookups per gap stay within 2 * |F| * N
    for g in (path_graph(10), gnp_graph(8, 0.4, 77)):
        run = domination_run(g)
        list(run.solutions())
        st = run.stats
        assert st.gap_lookups
        assert max(st.gap_lookups) <= 2 * 8 * st.n


def test_gap_writes_grow_linearly_on_paths():
    peaks = {}
    for k in (4, 8, 16, 32, 64):
        run = domination_run(path_graph(k))
        count = 0
        for _ in run.solutions():
            count += 1
            if count >= 200:
                break
        peaks[k] = max(run.stats.gap_writes)
    c = peaks[4] / 4
    for k, peak in peaks.items():
        assert peak <= c * k * 2.5  # linear trend with slack for small sizes
