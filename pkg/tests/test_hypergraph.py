import pytest
from hypothesis import given, strategies as st

from enumtw.errors import ParseError
from enumtw.hypergraph import (hypergraph_from_edges, parse_hypergraph,
                               write_hypergraph)


def test_parse_basic():
    h = parse_hypergraph("p hg 3 2\ne 1 2\ne 2 3\n")
    assert h.n == 3
    assert h.edges == ((0, 1), (1, 2))
    assert h.size() == 7


def test_parse_smallest():
    h = parse_hypergraph("p hg 1 1\ne 1\n")
    assert h.n == 1
    assert h.edges == ((0,),)


def test_parse_empty_hyperedge():
    with pytest.raises(ParseError, match="empty hyperedge at line 2"):
        parse_hypergraph("p hg 2 1\ne\n")


def test_parse_out_of_range():
    with pytest.raises(ParseError, match="out of range"):
        parse_hypergraph("p hg 2 1\ne 1 3\n")


def test_parse_duplicate_vertex_in_edge():
    with pytest.raises(ParseError, match="duplicate vertex"):
        parse_hypergraph("p hg 2 1\ne 1 1\n")


def test_parse_header_errors():
    with pytest.raises(ParseError):
        parse_hypergraph("e 1\n")
    with pytest.raises(ParseError):
        parse_hypergraph("p hg 2\ne 1\n")
    with pytest.raises(ParseError, match="declared 2 edges"):
        parse_hypergraph("p hg 2 2\ne 1\n")


def test_symbolic_names():
    h = parse_hypergraph("p hg 3 2\ne x y\ne y z\n")
    assert h.names[:3] == ("x", "y", "z")
    assert h.edges == ((0, 1), (1, 2))


def test_comments_and_blanks():
    h = parse_hypergraph("# heading\np hg 2 1\n\ne 1 2  # trailing\n")
    assert h.edges == ((0, 1),)


def test_size_counts_tokens():
    h = hypergraph_from_edges(4, [[0, 1, 2], [3]])
    assert h.size() == 4 + 3 + 1


def test_duplicate_edges_kept_and_dedupe():
    h = hypergraph_from_edges(2, [[0, 1], [1, 0], [0]])
    assert h.m == 3
    assert h.dedupe().edges == ((0, 1), (0,))


def test_m_zero_is_legal():
    h = parse_hypergraph("p hg 3 0\n")
    assert h.n == 3 and h.m == 0


def test_roundtrip():
    h = hypergraph_from_edges(4, [[2, 0], [1, 3], [3]])
    assert parse_hypergraph(write_hypergraph(h)).edges == h.edges


@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(
        st.sets(st.integers(0, n - 1), min_size=1), min_size=0, max_size=6))))
def test_roundtrip_property(case):
    n, edges = case
    h = hypergraph_from_edges(n, edges)
    back = parse_hypergraph(write_hypergraph(h))
    assert back.n == h.n and back.edges == h.edges
    assert back.size() == h.size()
