import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from facility_game import (
    BadVertexId,
    DisconnectedNetwork,
    DuplicateEdge,
    NegativeCost,
    Network,
    SelfLoop,
    all_pairs_shortest_paths,
    path,
    validate,
)
from facility_game.network import CapacityIgnoredWarning, path_cost

from .oracles import all_pairs_oracle
from .strategies import connected_edges

EXAMPLE_EDGES = [(1, 2, 1), (2, 3, 2), (2, 4, 2), (2, 5, 2), (5, 6, 3), (6, 7, 3), (6, 8, 3)]


@pytest.fixture
def net():
    return Network(8, EXAMPLE_EDGES)


def test_example_network_is_valid(net):
    assert validate(net) is None
    assert len(net.edges) == 7


def test_single_vertex_is_valid():
    validate(Network(1, ()))


def test_two_isolated_vertices_disconnected():
    with pytest.raises(DisconnectedNetwork) as err:
        validate(Network(2, ()))
    assert {err.value.u, err.value.v} == {1, 2}


@pytest.mark.parametrize(
    "edges, error",
    [
        ([(1, 3, 1)], BadVertexId),
        ([(0, 1, 1)], BadVertexId),
        ([(1, 2, -1)], NegativeCost),
        ([(1, 2, 1), (2, 1, 4)], DuplicateEdge),
        ([(1, 1, 0), (1, 2, 1)], SelfLoop),
    ],
)
def test_invalid_networks(edges, error):
    with pytest.raises(error):
        validate(Network(2, edges))


def test_first_violation_is_reported():
    with pytest.raises(BadVertexId):
        validate(Network(3, [(1, 9, -4)]))


def test_capacity_is_stored_but_warned(net):
    capped = Network(2, [(1, 2, 5, 100.0)])
    assert capped.edges[0].capacity == 100.0
    with pytest.warns(CapacityIgnoredWarning):
        validate(capped)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        validate(net)


def test_example_distances(net, backend):
    oracle = all_pairs_shortest_paths(net, backend=backend)
    assert [[oracle.dist(k, w) for w in (2, 6)] for k in (4, 5, 8)] == [[2, 7], [2, 3], [8, 3]]
    assert all(oracle.dist(v, v) == 0 for v in net.vertices)


def test_example_path_1_to_7(net, backend):
    oracle = all_pairs_shortest_paths(net, backend=backend)
    route = path(oracle, 1, 7)
    assert route == [1, 2, 5, 6, 7]
    assert path_cost(net, route) == 9 == all_pairs_oracle(8, EXAMPLE_EDGES)[0][6]


def test_trivial_path(net):
    oracle = all_pairs_shortest_paths(net)
    assert path(oracle, 4, 4) == [4]


def test_path_rejects_bad_vertex(net):
    oracle = all_pairs_shortest_paths(net)
    with pytest.raises(BadVertexId):
        path(oracle, 0, 3)


@settings(max_examples=300, deadline=None)
@given(connected_edges())
def test_closure_matches_label_correcting(graph):
    n, edges = graph
    net = Network(n, edges)
    expected = all_pairs_oracle(n, edges)
    for backend in ("python", "compiled"):
        assert all_pairs_shortest_paths(net, backend=backend).matrix() == expected


@settings(max_examples=200, deadline=None)
@given(connected_edges())
def test_paths_realise_distances(graph):
    n, edges = graph
    net = Network(n, edges)
    oracle = all_pairs_shortest_paths(net)
    for u in net.vertices:
        for v in net.vertices:
            route = path(oracle, u, v)
            assert route[0] == u and route[-1] == v
            assert path_cost(net, route) == oracle.dist(u, v)


@settings(max_examples=200, deadline=None)
@given(connected_edges())
def test_symmetry_and_triangle_inequality(graph):
    n, edges = graph
    d = all_pairs_shortest_paths(Network(n, edges)).matrix()
    for u in range(n):
        for v in range(n):
            assert d[u][v] == d[v][u]
            for w in range(n):
                assert d[u][w] <= d[u][v] + d[v][w]


@settings(max_examples=200, deadline=None)
@given(connected_edges())
def test_closure_is_idempotent(graph):
    n, edges = graph
    d = all_pairs_shortest_paths(Network(n, edges)).matrix()
    closed = [(u + 1, v + 1, d[u][v]) for u in range(n) for v in range(u + 1, n)]
    assert all_pairs_shortest_paths(Network(n, closed)).matrix() == d


@settings(max_examples=200, deadline=None)
@given(connected_edges(), st.data())
def test_decreasing_an_edge_never_increases_distances(graph, data):
    n, edges = graph
    if not edges:
        return
    before = all_pairs_shortest_paths(Network(n, edges)).matrix()
    i = data.draw(st.integers(0, len(edges) - 1))
    u, v, c = edges[i]
    lowered = list(edges)
    lowered[i] = [u, v, data.draw(st.integers(0, c))]
    after = all_pairs_shortest_paths(Network(n, lowered)).matrix()
    assert all(a <= b for ra, rb in zip(after, before) for a, b in zip(ra, rb))


def test_huge_costs_fall_back_to_exact_python():
    big = 2**70
    oracle = all_pairs_shortest_paths(Network(3, [(1, 2, big), (2, 3, big)]))
    assert oracle.dist(1, 3) == 2 * big


def test_non_integer_cost_rejected():
    with pytest.raises(TypeError):
        validate(Network(2, [(1, 2, 1.5)]))
