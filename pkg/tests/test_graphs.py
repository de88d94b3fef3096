import numpy as np
import pytest

from graphlimits import Graph, Multigraph, Seed, grow_pag
from graphlimits.graphs import chessboard, dumps, half_graph, load, loads, named_graph, parity_order, save


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(np.array([[0, 1], [0, 0]], dtype=bool))
    with pytest.raises(ValueError):
        Graph(np.eye(2, dtype=bool))
    with pytest.raises(ValueError):
        Multigraph(np.array([[1]]))


def test_edge_list_format_simple():
    g = Graph.from_edges(4, [(2, 3), (0, 1), (0, 3)])
    text = dumps(g)
    assert text == "4 3\n0 1 1\n0 3 1\n2 3 1\n"
    assert loads(text) == g


def test_edge_list_format_multi():
    g = Multigraph.from_edges(3, [(0, 1), (1, 0), (2, 2), (0, 2)])
    text = dumps(g)
    assert text.splitlines() == ["3 4 multi", "0 1 2", "0 2 1", "2 2 1"]
    assert loads(text) == g


def test_roundtrip_file(tmp_path):
    g = grow_pag(20, 50, Seed(4))
    save(g, tmp_path / "g.el")
    assert load(tmp_path / "g.el") == g


@pytest.mark.parametrize("text", ["", "3 1\n0 0 1\n", "2 1\n0 1 2\n", "2 2\n0 1\n", "2 1 extra\n0 1\n", "2 1\n0 5\n"])
def test_bad_edge_lists(text):
    with pytest.raises(ValueError):
        loads(text)


def test_two_column_lines_accepted():
    assert loads("3 2\n0 1\n1 2\n") == Graph.from_edges(3, [(0, 1), (1, 2)])


def test_multigraph_degrees_count_loops_twice():
    g = Multigraph.from_edges(2, [(0, 0), (0, 1)])
    assert g.degrees().tolist() == [3, 1]
    assert g.num_edges == 2 and g.num_nonloop_edges == 1


def test_half_graph_structure():
    h = half_graph(3)
    # i (row i) ~ j' (row 3 + j) iff i <= j
    assert h.adj[0, 3:].tolist() == [True, True, True]
    assert h.adj[2, 3:].tolist() == [False, False, True]
    assert not h.adj[:3, :3].any() and not h.adj[3:, 3:].any()


def test_chessboard_parity_reorder_is_two_blocks():
    g = chessboard(10).relabel(parity_order(10))
    expected = np.zeros((10, 10), dtype=bool)
    expected[:5, 5:] = expected[5:, :5] = True
    assert np.array_equal(g.adj, expected)


def test_named_graph():
    assert named_graph("petersen").num_edges == 15
    assert named_graph("chessboard:6").num_edges == 9
    with pytest.raises(ValueError):
        named_graph("petersen:3")
