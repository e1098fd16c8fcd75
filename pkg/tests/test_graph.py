import random

import pytest
from hypothesis import given

from conftest import graphs, max_independent_size
from wlpgraph.graph import (
    GraphError,
    cycle,
    delete_closed_neighborhood,
    delete_vertex,
    disjoint_union,
    empty_graph,
    format_edge_list,
    from_edge_list,
    induced_subgraph,
    is_independent,
    mask_of,
    members,
    pan,
    parse_edge_list,
    path,
    relabel,
    tadpole,
)


def assert_simple(g):
    for v in range(g.n):
        assert not (g.adj[v] >> v) & 1
        for u in range(g.n):
            assert ((g.adj[v] >> u) & 1) == ((g.adj[u] >> v) & 1)


@pytest.mark.parametrize("n,edges,degrees", [
    (1, 0, (0,)),
    (2, 1, (1, 1)),
    (5, 4, (1, 2, 2, 2, 1)),
])
def test_path(n, edges, degrees):
    g = path(n)
    assert g.n == n and g.num_edges == edges
    assert g.degree_sequence() == degrees
    assert g.edges() == [(i, i + 1) for i in range(n - 1)]


def test_path_rejects_zero():
    with pytest.raises(GraphError):
        path(0)


@pytest.mark.parametrize("m", [3, 4, 6, 11])
def test_cycle(m):
    g = cycle(m)
    assert g.num_edges == m
    assert set(g.degree_sequence()) == {2}


@pytest.mark.parametrize("m", [-1, 0, 1, 2])
def test_cycle_rejects_small(m):
    with pytest.raises(GraphError):
        cycle(m)


def test_tadpole_6_6():
    g = tadpole(6, 6)
    assert (g.n, g.num_edges) == (12, 12)
    # cycle part is C_6, bridge joins x_6 to y_1
    assert induced_subgraph(g, mask_of(range(6))) == cycle(6)
    assert (5, 6) in g.edges()
    assert g.label(5) == "x_6" and g.label(6) == "y_1"
    assert induced_subgraph(g, mask_of(range(6, 12))) == path(6)


def test_tadpole_small_shapes():
    assert sorted(tadpole(4, 2).degree_sequence()) == [1, 2, 2, 2, 2, 3]
    p5 = tadpole(5, 1)
    assert (p5.n, p5.num_edges) == (6, 6)
    with pytest.raises(GraphError):
        tadpole(2, 3)
    with pytest.raises(GraphError):
        tadpole(4, -1)


@pytest.mark.parametrize("m", range(3, 9))
def test_tadpole_degenerate_cases(m):
    assert tadpole(m, 0) == cycle(m)
    assert tadpole(m, 0).adj == cycle(m).adj
    assert pan(m) == tadpole(m, 1)
    assert pan(m).adj == tadpole(m, 1).adj


def test_pan_independence_number():
    assert pan(5).n == 6 and pan(5).num_edges == 6
    assert max_independent_size(pan(6)) == 4
    assert max_independent_size(pan(5)) == 3


def test_disjoint_union():
    g = disjoint_union(path(1), path(1))
    assert (g.n, g.num_edges) == (2, 0)
    g = disjoint_union(cycle(3), path(2))
    assert (g.n, g.num_edges) == (5, 4)
    assert g.edges() == [(0, 1), (0, 2), (1, 2), (3, 4)]
    c = cycle(5)
    assert disjoint_union(c, empty_graph(0)) == c
    assert disjoint_union(empty_graph(0), c) == c


@given(graphs(max_n=7), graphs(max_n=7))
def test_disjoint_union_properties(g1, g2):
    u = disjoint_union(g1, g2)
    assert u.num_edges == g1.num_edges + g2.num_edges
    assert induced_subgraph(u, g1.vertex_mask) == g1
    assert induced_subgraph(u, u.vertex_mask & ~g1.vertex_mask) == g2
    assert_simple(u)


def test_from_edge_list():
    assert from_edge_list(3, [(0, 1), (1, 2)]) == path(3)
    g = from_edge_list(4, [(0, 1), (1, 0)])
    assert g.num_edges == 1 and g.n == 4
    with pytest.raises(GraphError, match="loops not allowed"):
        from_edge_list(2, [(0, 0)])
    with pytest.raises(GraphError, match="vertex out of range"):
        from_edge_list(2, [(0, 2)])


def test_constructors_are_simple():
    for g in [path(7), cycle(9), tadpole(5, 4), pan(3), disjoint_union(cycle(4), tadpole(3, 2))]:
        assert_simple(g)


def test_delete_closed_neighborhood():
    g, keep = delete_closed_neighborhood(path(3), 1)
    assert g.n == 0 and keep == 0
    g, keep = delete_closed_neighborhood(cycle(5), 0)
    assert g == path(2) and keep == mask_of([2, 3])
    # N[x_4] in T_{4,2} is {x_1, x_3, x_4, y_1}; x_2 and y_2 survive, isolated
    g, keep = delete_closed_neighborhood(tadpole(4, 2), 3)
    assert keep == mask_of([1, 5])
    assert g == empty_graph(2)
    with pytest.raises(GraphError):
        delete_closed_neighborhood(path(3), 3)


@given(graphs(min_n=1, max_n=10))
def test_delete_closed_neighborhood_removes_neighbors(g):
    for v in range(g.n):
        sub, keep = delete_closed_neighborhood(g, v)
        assert keep & g.closed_neighborhood(v) == 0
        assert sub.n == keep.bit_count()
        assert sub == induced_subgraph(g, keep)
        _, keep_v = delete_vertex(g, v)
        assert not (keep_v >> v) & 1 and keep_v.bit_count() == g.n - 1


def test_is_independent():
    c4 = cycle(4)
    assert is_independent(c4, mask_of([0, 2]))
    assert not is_independent(c4, mask_of([0, 1]))
    for g in [c4, path(1), empty_graph(0)]:
        assert is_independent(g, 0)
    with pytest.raises(GraphError):
        is_independent(c4, mask_of([4]))


def test_members_roundtrip():
    assert list(members(mask_of([0, 3, 64, 200]))) == [0, 3, 64, 200]


def test_wide_graphs():
    # well past 128 vertices; masks are Python ints
    g = path(150)
    assert g.num_edges == 149
    assert is_independent(g, mask_of(range(0, 150, 2)))


def test_relabel_is_isomorphic():
    g = tadpole(5, 3)
    perm = list(range(g.n))
    random.Random(3).shuffle(perm)
    h = relabel(g, perm)
    assert sorted(h.degree_sequence()) == sorted(g.degree_sequence())
    assert {frozenset((perm[u], perm[v])) for u, v in g.edges()} == {frozenset(e) for e in h.edges()}
    with pytest.raises(GraphError):
        relabel(g, [0] * g.n)


def test_edge_list_format_roundtrip():
    g = tadpole(4, 3)
    text = format_edge_list(g)
    assert text.splitlines()[0] == "n 7"
    assert parse_edge_list(text) == g
    commented = "# a comment\nn 3\n# another\n0 1\n\n1 2\n"
    assert parse_edge_list(commented) == path(3)


@pytest.mark.parametrize("text", ["0 1\n", "n x\n", "n 3\n0\n", "n 3\n0 a\n", "", "n 2\n1 1\n"])
def test_edge_list_errors(text):
    with pytest.raises(GraphError):
        parse_edge_list(text)


def test_graph_rejects_asymmetric():
    from wlpgraph.graph import Graph
    with pytest.raises(GraphError):
        Graph(2, (0b10, 0))
