import numpy as np
import pytest

from coronapd.graphs import (
    UNREACHABLE,
    Graph,
    GraphError,
    all_pairs_distances,
    build_family,
    diameter,
    eccentricity,
    format_edgelist,
    h_features,
    is_complete,
    is_empty_graph,
    is_path_graph,
    load_edgelist,
    parse_family,
    read_edgelist,
    star_hub,
    star_leaf_count,
)


def test_path_distances():
    d = build_family("path", 4).distances
    assert d.tolist() == [[0, 1, 2, 3], [1, 0, 1, 2], [2, 1, 0, 1], [3, 2, 1, 0]]


def test_cycle_and_complete_diameter():
    assert diameter(build_family("cycle", 5)) == 2
    assert diameter(build_family("cycle", 6)) == 3
    assert diameter(build_family("complete", 4)) == 1
    assert diameter(build_family("path", 1)) == 0


def test_empty_graph_is_unreachable_off_diagonal():
    d = build_family("empty", 3).distances
    assert d[0, 0] == 0 and d[0, 1] == UNREACHABLE
    with pytest.raises(GraphError, match="diameter undefined"):
        diameter(build_family("empty", 3))


def test_distances_read_only():
    d = build_family("path", 3).distances
    with pytest.raises(ValueError):
        d[0, 1] = 5


def test_distance_matrix_symmetric_and_matches_bfs(rng):
    from conftest import random_connected_graph

    for _ in range(20):
        g = random_connected_graph(rng, rng.randrange(2, 10), 0.3)
        d = all_pairs_distances(g)
        assert np.array_equal(d, d.T)
        for u in range(g.order):
            for v in g.adjacency[u]:
                assert d[u, v] == 1
        # triangle inequality
        n = g.order
        for k in range(n):
            assert (d <= d[:, [k]] + d[[k], :]).all()


def test_star_family_layout():
    g = build_family("star", 4)
    assert g.order == 5 and g.degree(0) == 4
    assert star_leaf_count(g) == 4 and star_hub(g) == 0
    assert star_leaf_count(build_family("path", 3)) == 2
    assert star_leaf_count(build_family("path", 2)) is None
    assert star_leaf_count(build_family("cycle", 4)) is None


def test_recognizers():
    assert is_path_graph(build_family("path", 5))
    assert is_path_graph(build_family("star", 2))
    assert not is_path_graph(build_family("cycle", 4))
    assert not is_path_graph(build_family("star", 3))
    assert is_complete(build_family("complete", 1)) and is_complete(build_family("path", 2))
    assert is_empty_graph(build_family("empty", 3)) and not is_empty_graph(build_family("path", 2))


def test_h_features_counts():
    f = h_features(build_family("complete", 3))
    assert (f.alpha_ge2, f.beta, f.c) == (1, 0, 3)
    f = h_features(build_family("empty", 2))
    assert (f.alpha_ge2, f.beta, f.c) == (0, 2, 1)
    f = h_features(Graph.from_edges(3, [(0, 1)]))
    assert (f.alpha_ge2, f.beta, f.c) == (1, 1, 2)
    f = h_features(Graph.from_edges(5, [(0, 1), (2, 3), (3, 4)]))
    assert (f.alpha_ge2, f.beta, f.c, f.component_count) == (2, 0, 2, 2)
    assert f.diameter is None
    f = h_features(build_family("cycle", 5))
    assert (f.alpha_ge2, f.beta, f.c, f.diameter) == (1, 0, 0, 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_empty_features(n):
    f = h_features(build_family("empty", n))
    assert f.beta == n and f.c == 1 and f.alpha_ge2 + f.beta == f.component_count


def test_eccentricity():
    g = build_family("path", 5)
    assert [eccentricity(g, v) for v in range(5)] == [4, 3, 2, 3, 4]


@pytest.mark.parametrize(
    "text,order,size",
    [("path:1", 1, 0), ("cycle:3", 3, 3), ("complete:4", 4, 6), ("star:3", 4, 3), ("empty:2", 2, 0)],
)
def test_parse_family(text, order, size):
    g = parse_family(text)
    assert g.order == order and len(g.edges) == size and g.name == text


@pytest.mark.parametrize("text", ["path:0", "cycle:2", "wheel:4", "path", "path:x", "star:0"])
def test_parse_family_rejects(text):
    with pytest.raises(GraphError):
        parse_family(text)


def test_edgelist_round_trip(tmp_path):
    g = build_family("cycle", 5)
    text = format_edgelist(g, ["a comment"])
    assert text.startswith("# a comment\n")
    h = read_edgelist(text)
    assert h == g
    p = tmp_path / "c5.txt"
    p.write_text(text)
    assert load_edgelist(p) == g


@pytest.mark.parametrize(
    "text",
    ["", "3\n0 3\n", "3\n1 0\n", "3\n0 1\n0 1\n", "3\n0 0\n", "x\n", "3\n0 1 2\n"],
)
def test_edgelist_errors(text):
    with pytest.raises(GraphError):
        read_edgelist(text)


def test_invalid_edges_rejected():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(1, 1)])


def test_induced_relabels():
    g = build_family("path", 5).induced([1, 2, 4])
    assert g.order == 3 and g.edge_list() == [(0, 1)]
