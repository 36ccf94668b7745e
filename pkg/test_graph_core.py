#!/usr/bin/env python3
"""
Graph core tests: degrees, edge-list parsing and serialization
"""
import numpy as np
import pytest

from errors import MalformedLine, NodeIdOutOfRange, RenyiToolkitError
from generators import HeteroErConfig, SeedSpec, sample_hetero_er
from graph_core import (
    DegreeSequence,
    Graph,
    degree_sequence,
    format_edge_list,
    mean_degree,
    parse_edge_list,
    parse_edge_list_with_stats,
    read_edge_list,
    read_weights,
    write_edge_list,
    write_weights,
)
from kernels import ExponentialProductKernel


class TestGraph:

    def test_canonical_sorted_edges(self):
        g = Graph.from_pairs(4, [(2, 1), (0, 3), (1, 0), (1, 2), (3, 3)])
        assert g.edges.tolist() == [[0, 1], [0, 3], [1, 2]]
        assert g.edge_set() == {(0, 1), (0, 3), (1, 2)}

    def test_rejects_self_loop(self):
        with pytest.raises(RenyiToolkitError):
            Graph(3, np.array([[1, 1]]))

    def test_rejects_out_of_range(self):
        with pytest.raises(RenyiToolkitError):
            Graph(2, np.array([[0, 2]]))

    def test_rejects_duplicates(self):
        with pytest.raises(RenyiToolkitError):
            Graph(3, np.array([[0, 1], [0, 1]]))

    def test_immutable(self):
        g = Graph.from_pairs(3, [(0, 1)])
        with pytest.raises(ValueError):
            g.edges[0, 0] = 2

    def test_equality(self):
        assert Graph.from_pairs(3, [(1, 0), (2, 1)]) == Graph.from_pairs(3, [(1, 2), (0, 1)])
        assert Graph.from_pairs(3, [(0, 1)]) != Graph.from_pairs(4, [(0, 1)])


class TestDegrees:

    def test_triangle(self):
        g = Graph.from_pairs(3, [(0, 1), (1, 2), (0, 2)])
        assert degree_sequence(g).degrees.tolist() == [2, 2, 2]

    def test_star(self):
        g = Graph.from_pairs(4, [(0, 1), (0, 2), (0, 3)])
        assert degree_sequence(g).degrees.tolist() == [3, 1, 1, 1]

    def test_empty(self):
        assert degree_sequence(Graph(4)).degrees.tolist() == [0, 0, 0, 0]

    def test_mean_degree(self):
        assert mean_degree(DegreeSequence(np.array([3, 1, 1, 1]))) == 1.5
        assert mean_degree(DegreeSequence(np.array([0, 0]))) == 0.0
        assert mean_degree(DegreeSequence(np.array([2, 2, 2]))) == 2.0

    def test_degree_sequence_invariants(self):
        with pytest.raises(RenyiToolkitError):
            DegreeSequence(np.array([1, 1, 1]))  # odd sum
        with pytest.raises(RenyiToolkitError):
            DegreeSequence(np.array([3, 1, 0]))  # above n - 1

    def test_handshake_on_generated_graph(self):
        cfg = HeteroErConfig(n=200, p_n=0.3, kernel=ExponentialProductKernel(2.0))
        g = sample_hetero_er(cfg, SeedSpec(11))
        assert int(degree_sequence(g).degrees.sum()) == 2 * g.num_edges


class TestParsing:

    def test_simple(self):
        g = parse_edge_list("0 1\n1 2")
        assert g.n == 3
        assert g.edge_set() == {(0, 1), (1, 2)}

    def test_header_duplicates_self_loops(self):
        g, stats = parse_edge_list_with_stats("# n=5\n0 1\n0 1\n2 2")
        assert g.n == 5
        assert g.edge_set() == {(0, 1)}
        assert stats.duplicates == 1
        assert stats.self_loops == 1
        assert stats.declared_n == 5

    def test_reversed_pair_counts_as_duplicate(self):
        g, stats = parse_edge_list_with_stats("0 1\n1 0\n")
        assert g.num_edges == 1
        assert stats.duplicates == 1

    def test_malformed_line(self):
        with pytest.raises(MalformedLine) as exc:
            parse_edge_list("0 x")
        assert exc.value.line_no == 1

    @pytest.mark.parametrize("text, line_no", [
        ("0 1\n1\n", 2),
        ("0 1 2\n", 1),
        ("# header\n\n-1 2\n", 3),
        ("0 1.5\n", 1),
    ])
    def test_malformed_variants(self, text, line_no):
        with pytest.raises(MalformedLine) as exc:
            parse_edge_list(text)
        assert exc.value.line_no == line_no

    def test_node_out_of_declared_range(self):
        with pytest.raises(NodeIdOutOfRange):
            parse_edge_list("# n=3\n0 1\n1 3\n")

    def test_comments_and_crlf(self):
        g = parse_edge_list("# a comment\r\n0 1\r\n# another\r\n\r\n2 3\r\n")
        assert g.n == 4
        assert g.edge_set() == {(0, 1), (2, 3)}

    def test_header_after_data_is_a_comment(self):
        g = parse_edge_list("0 1\n# n=10\n")
        assert g.n == 2

    def test_empty_text(self):
        g = parse_edge_list("")
        assert g.n == 0 and g.num_edges == 0


class TestSerialization:

    def test_format(self):
        g = Graph.from_pairs(4, [(2, 1), (0, 3)])
        assert format_edge_list(g) == "# n=4\n0 3\n1 2\n"

    def test_isolated_nodes_survive_round_trip(self):
        g = Graph.from_pairs(10, [(0, 1)])
        assert parse_edge_list(format_edge_list(g)) == g

    def test_generated_graph_round_trip(self, tmp_path):
        cfg = HeteroErConfig(n=300, p_n=0.1, kernel=ExponentialProductKernel(4.0))
        g = sample_hetero_er(cfg, SeedSpec(3, 'io', 0))
        path = tmp_path / "g.txt"
        write_edge_list(g, str(path))
        back = read_edge_list(str(path))
        assert back == g
        assert np.array_equal(degree_sequence(back).degrees, degree_sequence(g).degrees)
        assert b"\r\n" not in path.read_bytes()

    def test_weights_sidecar(self, tmp_path):
        w = np.array([1.0, 2.5, 31.622776601683793, 1.0000000000000002])
        path = tmp_path / "w.txt"
        write_weights(w, str(path))
        assert np.array_equal(read_weights(str(path)), w)
