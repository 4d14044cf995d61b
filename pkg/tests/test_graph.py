import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from graph_frames import (
    Graph,
    adjacency_matrix,
    complete,
    connected_components,
    cycle,
    degree_info,
    degree_matrix,
    disjoint_union,
    eigh,
    empty,
    from_edge_list,
    has_null_vertex,
    is_regular,
    laplacian_matrix,
    path,
    random_connected_graph,
    random_graph,
    star,
)
from graph_frames.errors import InputError
from graph_frames.graph import DisjointSet, induced_subgraph
from graph_frames.survey import enumerate_graphs

from .conftest import C4_LAPLACIAN, STAR_LAPLACIAN


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, tuple(chosen))


def test_from_edge_list_cycle():
    g = from_edge_list(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert g == cycle(4)
    assert g.edges == ((0, 1), (0, 3), (1, 2), (2, 3))


def test_from_edge_list_dedups():
    g = from_edge_list(3, [(0, 1), (1, 0), (0, 1), (2, 1)])
    assert g.edges == ((0, 1), (1, 2))


def test_single_vertex():
    g = from_edge_list(1, [])
    assert g.n == 1 and g.edges == ()


@pytest.mark.parametrize(
    "n, pairs, match",
    [(3, [(0, 0)], "self-loop"), (2, [(0, 2)], "outside"), (0, [], "positive"), (-1, [], "positive"), (2, [(0,)], "pair")],
)
def test_from_edge_list_errors(n, pairs, match):
    with pytest.raises(InputError, match=match):
        from_edge_list(n, pairs)


def test_generators():
    k4 = complete(4)
    assert k4.m == 6 and degree_info(k4).degrees.tolist() == [3, 3, 3, 3]
    s = star(4)
    assert degree_info(s).degrees.tolist() == [3, 1, 1, 1]
    assert path(3).edges == ((0, 1), (1, 2))
    assert path(1).edges == ()
    u = disjoint_union(complete(3), complete(3))
    assert u.n == 6 and connected_components(u).count == 2
    with pytest.raises(InputError):
        cycle(2)


def test_random_graph_reproducible():
    a = random_graph(12, 0.4, seed=5)
    b = random_graph(12, 0.4, seed=5)
    assert a == b
    assert random_graph(12, 0.4, seed=6) != a
    assert random_graph(6, 0.0, 1).m == 0
    assert random_graph(6, 1.0, 1) == complete(6)
    with pytest.raises(InputError):
        random_graph(5, 1.5, 0)


def test_random_graph_frozen_draw():
    # pins the PRNG stream: a change here breaks reproducibility of reports
    # PCG64(0) draws: .637 .270 .041 .017 .813 .913 .607 .729 .544 .935
    assert random_graph(5, 0.5, seed=0).edges == ((0, 2), (0, 3), (0, 4))


def test_random_connected():
    g = random_connected_graph(8, 0.3, seed=2)
    assert connected_components(g).count == 1


def test_laplacian_examples():
    np.testing.assert_array_equal(laplacian_matrix(cycle(4)), C4_LAPLACIAN)
    np.testing.assert_array_equal(laplacian_matrix(star(4)), STAR_LAPLACIAN)
    np.testing.assert_array_equal(laplacian_matrix(empty(3)), np.zeros((3, 3)))


@given(graphs())
def test_laplacian_is_degree_minus_adjacency(g):
    lap = laplacian_matrix(g)
    assert np.array_equal(lap, degree_matrix(g) - adjacency_matrix(g))
    assert np.array_equal(lap, lap.T)
    assert np.all(lap.sum(axis=1) == 0)
    info = degree_info(g)
    assert info.degrees.sum() == 2 * g.m
    assert info.delta <= info.Delta <= g.n - 1


def test_components_examples():
    assert connected_components(cycle(4)).count == 1
    u = connected_components(disjoint_union(complete(3), complete(3)))
    assert u.count == 2 and u.labels == (0, 0, 0, 1, 1, 1)
    assert connected_components(empty(4)).count == 4
    interleaved = connected_components(Graph(5, ((1, 3), (0, 4))))
    assert interleaved.labels == (0, 1, 2, 1, 0)
    assert interleaved.members() == [[0, 4], [1, 3], [2]]


def _bfs_reachable(g, s):
    adj = g.neighbours()
    seen, stack = {s}, [s]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


@given(graphs(max_n=9))
def test_components_match_traversal(g):
    labels = connected_components(g).labels
    for v in range(g.n):
        reach = _bfs_reachable(g, v)
        assert {w for w in range(g.n) if labels[w] == labels[v]} == reach
    # ids ordered by smallest member
    firsts = [labels.index(c) for c in range(max(labels) + 1)]
    assert firsts == sorted(firsts)


def test_disjoint_set():
    ds = DisjointSet(5)
    assert ds.union(0, 1) and ds.union(3, 4) and not ds.union(1, 0)
    assert ds.find(0) == ds.find(1) and ds.find(2) != ds.find(3)


def test_regularity_and_null_vertices():
    assert is_regular(complete(5)) == (True, 4)
    assert is_regular(star(4)) == (False, None)
    assert not has_null_vertex(star(4))
    g = disjoint_union(complete(3), Graph(1))
    assert is_regular(g) == (False, None) and has_null_vertex(g)


def test_union_laplacian_block_diagonal():
    a, b = star(4), cycle(5)
    lap = laplacian_matrix(disjoint_union(a, b))
    np.testing.assert_array_equal(lap[:4, :4], laplacian_matrix(a))
    np.testing.assert_array_equal(lap[4:, 4:], laplacian_matrix(b))
    assert not lap[:4, 4:].any() and not lap[4:, :4].any()


def test_induced_subgraph():
    g = Graph(5, ((0, 2), (2, 4), (1, 3)))
    assert induced_subgraph(g, [0, 2, 4]).edges == ((0, 1), (1, 2))


def _zero_multiplicity_matches(n):
    for _, g in enumerate_graphs(n):
        values = eigh(laplacian_matrix(g)).values
        if int(np.sum(np.abs(values) <= 1e-9)) != connected_components(g).count:
            return False
    return True


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_zero_eigenvalue_multiplicity_is_component_count(n):
    assert _zero_multiplicity_matches(n)


@pytest.mark.slow
def test_zero_eigenvalue_multiplicity_is_component_count_n6():
    assert _zero_multiplicity_matches(6)
