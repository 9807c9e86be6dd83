"""Graph container, metrics, canonical codes, and graph6 round-trips."""

import pytest

from rhomin.graphs import (
    Graph6Error,
    GraphError,
    add_edge,
    add_pendant_path,
    build_graph,
    canonical_code,
    connected_components,
    cycle_graph,
    delete_edge,
    delete_vertex,
    delete_vertices,
    diameter,
    disjoint_union,
    distances,
    graph6_decode,
    graph6_encode,
    is_connected,
    is_tree,
    is_unicyclic,
    path_graph,
    star_graph,
    subdivide_edge,
    two_core_cycle,
)


def test_build_rejects_bad_edges():
    with pytest.raises(GraphError):
        build_graph(3, [(0, 3)])
    with pytest.raises(GraphError):
        build_graph(3, [(1, 1)])
    g = build_graph(3, [(0, 1), (1, 0)])  # duplicates collapse
    assert g.edge_count == 1


def test_basic_metrics():
    p5 = path_graph(5)
    assert diameter(p5) == 4
    assert is_tree(p5)
    assert not is_unicyclic(p5)
    c6 = cycle_graph(6)
    assert diameter(c6) == 3
    assert is_unicyclic(c6)
    assert two_core_cycle(c6) is not None and len(two_core_cycle(c6)) == 6
    k13 = star_graph(4)
    assert diameter(k13) == 2
    assert [k13.degree(v) for v in range(4)] == [3, 1, 1, 1]


def test_distances_and_components():
    g = disjoint_union(path_graph(3), path_graph(2))
    assert not is_connected(g)
    assert len(connected_components(g)) == 2
    assert diameter(g) is None
    d = distances(path_graph(4), 0)
    assert d == [0, 1, 2, 3]


def test_editing_helpers():
    g = path_graph(3)
    g2, tip = add_pendant_path(g, 1, 2)
    assert g2.n == 5 and g2.degree(1) == 3 and g2.degree(tip) == 1
    g3 = subdivide_edge(path_graph(2), 0, 1)
    assert canonical_code(g3) == canonical_code(path_graph(3))
    g4 = delete_vertex(cycle_graph(4), 0)
    assert canonical_code(g4) == canonical_code(path_graph(3))
    g5 = delete_edge(cycle_graph(4), 0, 1)
    assert canonical_code(g5) == canonical_code(path_graph(4))
    g6 = delete_vertices(path_graph(5), [0, 4])
    assert canonical_code(g6) == canonical_code(path_graph(3))
    assert add_edge(path_graph(3), 0, 2).edge_count == 3


def test_canonical_code_tree_invariance():
    # same tree, two labelings
    a = build_graph(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    b = build_graph(5, [(4, 3), (3, 1), (1, 0), (1, 2)])
    assert canonical_code(a) == canonical_code(b)
    assert canonical_code(a) != canonical_code(path_graph(5))


def test_canonical_code_unicyclic_invariance():
    a = build_graph(5, [(0, 1), (1, 2), (2, 0), (1, 3), (3, 4)])
    b = build_graph(5, [(4, 2), (2, 0), (0, 4), (2, 3), (3, 1)])
    assert canonical_code(a) == canonical_code(b)


def test_canonical_code_dense_small():
    a = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    b = build_graph(4, [(2, 3), (3, 0), (0, 1), (1, 2), (3, 1)])
    assert canonical_code(a) == canonical_code(b)


def test_graph6_round_trip():
    for g in (path_graph(1), path_graph(7), cycle_graph(9), star_graph(5)):
        assert canonical_code(graph6_decode(graph6_encode(g))) == canonical_code(g)
    with pytest.raises(Graph6Error):
        graph6_decode("\x01bad")


def test_graph6_against_networkx():
    nx = pytest.importorskip("networkx")
    import random

    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 12)
        edges = [
            (u, v)
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.4
        ]
        g = build_graph(n, edges)
        ours = graph6_encode(g)
        theirs = nx.to_graph6_bytes(_nx_graph(nx, n, edges),
                                    header=False).decode().strip()
        assert ours == theirs
        back = graph6_decode(ours)
        assert back.n == n and sorted(back.edges()) == sorted(edges)


def _nx_graph(nx, n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g
