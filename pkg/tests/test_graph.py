import itertools
import pickle

import numpy as np
import pytest
from hypothesis import given, settings

from pathseries.graph import (Graph, GraphError, VertexSet, is_dominating, parse_edge_list,
                              restrict, weak_neighborhood, weakly_connected_components)
from pathseries.rings import BIGINT, FLOAT, WORD
from pathseries.testing import path_graph

from .conftest import digraphs


def test_parse_directed_triangle():
    g = parse_edge_list("0 1\n1 2\n2 0\n", directed=True)
    assert g.n == 3
    assert g.arcs == ((0, 1), (1, 2), (2, 0))
    assert all(w == 1 for w in g.weights.values())
    assert g.directed


def test_parse_undirected_expands_both_arcs():
    g = parse_edge_list("0 1\n", directed=False)
    assert g.arcs == ((0, 1), (1, 0))
    assert not g.directed


def test_parse_undirected_self_loop_is_one_arc():
    g = parse_edge_list("0 0 5\n0 1\n", directed=False)
    assert g.arcs == ((0, 0), (0, 1), (1, 0))
    assert g.weight(0, 0) == 5


def test_parse_duplicate_edge():
    with pytest.raises(GraphError, match="duplicate"):
        parse_edge_list("0 1\n0 1\n")


def test_parse_undirected_duplicate_through_reverse():
    with pytest.raises(GraphError, match="duplicate"):
        parse_edge_list("0 1\n1 0\n", directed=False)


@pytest.mark.parametrize("text", ["0\n", "0 1 2 3\n", "a 1\n", "-1 0\n", "0 1.5\n", "n\n"])
def test_parse_malformed(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_parse_weights_per_ring():
    assert parse_edge_list("0 1 7\n").weight(0, 1) == 7
    assert parse_edge_list("0 1 0.25\n", ring=FLOAT).weight(0, 1) == 0.25
    with pytest.raises(GraphError):
        parse_edge_list("0 1 0.25\n", ring=BIGINT)
    g = parse_edge_list("0 1\n", directed=False, ring=WORD)
    assert g.weight(1, 0) == WORD.letter(1, 0)


def test_parse_comments_blank_lines_and_header():
    g = parse_edge_list("# comment\n\nn 4\n0 1\n\n# x\n1 2\n")
    assert g.n == 4
    assert g.weak_adj[3] == ()


def test_parse_rejects_gaps_without_header():
    with pytest.raises(GraphError, match="dense"):
        parse_edge_list("0 1\n3 4\n")


def test_parse_header_too_small():
    with pytest.raises(GraphError):
        parse_edge_list("n 2\n0 5\n")


def test_parse_empty():
    with pytest.raises(GraphError):
        parse_edge_list("# nothing\n")


def test_graph_rejects_bad_arcs():
    with pytest.raises(GraphError):
        Graph(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1), (0, 1)])
    with pytest.raises(GraphError):
        Graph(0, [])


def test_graph_is_immutable_and_picklable(triangle):
    with pytest.raises(AttributeError):
        triangle.n = 4
    assert pickle.loads(pickle.dumps(triangle)) == triangle


def test_vertex_set_iterates_ascending():
    s = VertexSet([5, 1, 3])
    assert list(s) == [1, 3, 5]
    assert isinstance(s | {0}, VertexSet)
    assert list(s - {3}) == [1, 5]


def test_restrict_examples(triangle):
    m = restrict(triangle, {0, 1})
    assert m.index_map == (0, 1)
    assert m.entries == ((0, 1), (0, 0))
    m = restrict(triangle, {0, 2})
    assert m.entries == ((0, 0), (1, 0))
    full = restrict(triangle, range(3))
    assert full.entries == ((0, 1, 0), (0, 0, 1), (1, 0, 0))
    with pytest.raises(GraphError):
        restrict(triangle, set())


def test_weak_neighborhood_examples(triangle):
    assert weak_neighborhood(triangle, {0}) == {1, 2}
    assert weak_neighborhood(triangle, {0, 1, 2}) == set()
    assert weak_neighborhood(path_graph(3), {0}) == {1}
    with pytest.raises(GraphError):
        weak_neighborhood(triangle, [])


def test_is_dominating_examples(triangle, path3):
    assert is_dominating(triangle, {0})
    assert not is_dominating(path_graph(4), {0})
    assert is_dominating(path3, {0, 1, 2})


def test_components_examples(triangle, path3):
    assert weakly_connected_components(path3, {0, 2}) == [{0}, {2}]
    assert weakly_connected_components(triangle, {0, 1, 2}) == [{0, 1, 2}]
    assert weakly_connected_components(triangle, {0, 2}) == [{0, 2}]


@given(digraphs(max_n=7))
def test_weak_adjacency_invariants(g):
    for v in range(g.n):
        assert v not in g.weak_adj[v]
        assert set(g.weak_adj[v]) == (set(g.out_adj[v]) | set(g.in_adj[v])) - {v}
        for u in g.weak_adj[v]:
            assert v in g.weak_adj[u]


@settings(max_examples=60)
@given(digraphs(max_n=7))
def test_components_partition(g):
    for size in range(1, g.n + 1):
        for S in itertools.combinations(range(g.n), size):
            comps = weakly_connected_components(g, S)
            assert sorted(v for c in comps for v in c) == list(S)
            assert [min(c) for c in comps] == sorted(min(c) for c in comps)
            where = {v: i for i, c in enumerate(comps) for v in c}
            for u, v in g.arcs:
                if u in where and v in where:
                    assert where[u] == where[v]
            for c in comps:
                assert len(weakly_connected_components(g, c)) == 1


def _padded(g, S):
    M = np.zeros((g.n, g.n), dtype=np.int64)
    m = restrict(g, S)
    M[np.ix_(m.index_map, m.index_map)] = np.array(m.entries, dtype=np.int64)
    return M


@settings(max_examples=40)
@given(digraphs(max_n=8, weighted=True))
def test_power_decomposition_over_components(g):
    # zero-padded W_S^m equals the sum of zero-padded W_C^m over components
    for S in itertools.islice(itertools.chain.from_iterable(
            itertools.combinations(range(g.n), s) for s in range(1, g.n + 1)), 60):
        comps = weakly_connected_components(g, S)
        WS = _padded(g, S)
        for m in range(1, g.n + 1):
            total = sum(np.linalg.matrix_power(_padded(g, c), m) for c in comps)
            assert np.array_equal(np.linalg.matrix_power(WS, m), total)


@given(digraphs(max_n=6, weighted=True))
def test_restrict_embed_roundtrip(g):
    S = list(range(0, g.n, 2))
    full = restrict(g, S).embed(g.n)
    for i in range(g.n):
        for j in range(g.n):
            expected = g.weight(i, j) if i in S and j in S else 0
            assert full[i][j] == expected


@given(digraphs(max_n=6))
def test_neighborhood_disjoint_and_domination_matches_coverage(g):
    for size in range(1, g.n + 1):
        for C in itertools.combinations(range(g.n), size):
            nb = weak_neighborhood(g, C)
            assert not nb & set(C)
            covered = set(C) | {u for u in range(g.n)
                                if any(g.has_arc(u, c) or g.has_arc(c, u) for c in C)}
            assert is_dominating(g, C) == (covered == set(range(g.n)))
