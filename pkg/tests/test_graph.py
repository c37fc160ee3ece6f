import random
from itertools import combinations

import networkx as nx
import pytest

from apexrig.graph import (
    CONNECTED_GRAPH_COUNTS,
    BadCharacterError,
    Graph,
    GraphError,
    NotSuppressibleError,
    TooManyVerticesError,
    TruncatedError,
    UnsupportedSizeError,
    canonical_code,
    clique_number,
    complete_graph,
    connectivity,
    enumerate_connected,
    has_clique,
    is_isomorphic,
    parse_graph6,
    read_graph6_lines,
    suppress_degree_two,
    write_graph6,
)

from conftest import connected, connected_upto, random_corpus


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


class TestGraphBasics:
    def test_from_edges_and_queries(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
        assert g.m == 3
        assert g.edges() == [(0, 1), (1, 2), (2, 3)]
        assert g.degrees() == [1, 2, 2, 1]
        assert g.has_edge(2, 1) and not g.has_edge(0, 3)
        assert g.is_connected()

    def test_graph_is_immutable(self):
        g = complete_graph(3)
        with pytest.raises(AttributeError):
            g.n = 4

    def test_modifications_return_new_graphs(self):
        g = complete_graph(4)
        h = g.remove_edges([(0, 1)])
        assert g.m == 6 and h.m == 5
        assert h.add_edges([(0, 1)]) == g
        assert g.add_vertex([0, 1]).n == 5
        assert g.delete_vertices([3]) == complete_graph(3)

    def test_relabel_preserves_isomorphism_type(self):
        g = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)])
        h = g.relabel([4, 3, 2, 1, 0])
        assert h.has_edge(4, 2) and is_isomorphic(g, h)

    @pytest.mark.parametrize("edges", [[(0, 0)], [(0, 5)]])
    def test_rejects_loops_and_out_of_range(self, edges):
        with pytest.raises(GraphError):
            Graph.from_edges(3, edges)

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(GraphError):
            Graph(2, [0b10, 0])

    def test_vertex_limit(self):
        with pytest.raises(UnsupportedSizeError):
            Graph(65)

    def test_components(self):
        g = Graph.from_edges(5, [(0, 1), (3, 4)])
        assert len(g.components()) == 3
        assert not g.is_connected()


class TestGraph6:
    def test_known_encodings(self):
        assert write_graph6(complete_graph(4)) == "C~"
        assert write_graph6(Graph(1)) == "@"
        assert parse_graph6(">>graph6<<C~") == complete_graph(4)

    def test_round_trip_on_census(self):
        for g in connected_upto(8):
            assert parse_graph6(write_graph6(g)) == g

    def test_agrees_with_networkx_encoder(self):
        for g in random_corpus(200, seed=11, max_n=20):
            ours = write_graph6(g)
            theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
            assert ours == theirs

    def test_long_form_vertex_count(self):
        g = Graph.from_edges(63, [(0, 62), (10, 20)])
        text = write_graph6(g)
        assert text.startswith("~")
        assert parse_graph6(text) == g

    @pytest.mark.parametrize(
        "text, error",
        [
            ("", TruncatedError),
            ("C", TruncatedError),
            ("C~~", BadCharacterError),
            ("C\x7f", BadCharacterError),
            ("C ~", BadCharacterError),
            ("~~???", TooManyVerticesError),
            ("~?A?", TooManyVerticesError),
        ],
    )
    def test_malformed_records(self, text, error):
        with pytest.raises(error):
            parse_graph6(text)

    def test_stream_errors_carry_line_numbers(self):
        with pytest.raises(BadCharacterError, match="line 3"):
            list(read_graph6_lines(["C~\n", "\n", "C!\n"]))

    def test_stream_skips_blank_lines(self):
        got = list(read_graph6_lines(["C~", "", "Bw"]))
        assert [lineno for lineno, _ in got] == [1, 3]


class TestCanonicalCode:
    def test_invariant_under_random_relabelling(self):
        rng = random.Random(5)
        corpus = random_corpus(30, seed=3, max_n=10) + list(connected(6))[::7]
        for g in corpus:
            code = canonical_code(g)
            for _ in range(100):
                perm = list(range(g.n))
                rng.shuffle(perm)
                assert canonical_code(g.relabel(perm)) == code

    def test_separates_non_isomorphic_graphs(self):
        for n in range(1, 8):
            codes = {canonical_code(g) for g in connected(n)}
            assert len(codes) == len(connected(n))

    def test_hard_regular_pair(self):
        # Two 3-regular graphs on 8 vertices with equal degree sequences.
        cube = nx.hypercube_graph(3)
        cube = nx.convert_node_labels_to_integers(cube)
        prism_twist = nx.circulant_graph(8, [1, 4])
        g = Graph.from_edges(8, cube.edges())
        h = Graph.from_edges(8, prism_twist.edges())
        assert is_isomorphic(g, h) == nx.is_isomorphic(cube, prism_twist)


def labelled_brute_force_counts(n: int) -> int:
    """Connected isomorphism classes among all labelled graphs on n vertices."""
    pairs = list(combinations(range(n), 2))
    classes = set()
    for mask in range(1 << len(pairs)):
        g = Graph.from_edges(n, [e for i, e in enumerate(pairs) if mask >> i & 1])
        if g.is_connected():
            classes.add(canonical_code(g))
    return len(classes)


class TestEnumeration:
    @pytest.mark.parametrize("n", range(1, 7))
    def test_matches_labelled_brute_force(self, n):
        assert len(connected(n)) == labelled_brute_force_counts(n)

    @pytest.mark.parametrize("n", range(1, 8))
    def test_matches_graph_atlas(self, n):
        atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h)]
        ours = {canonical_code(g) for g in connected(n)}
        theirs = {canonical_code(Graph.from_edges(n, h.edges())) for h in atlas}
        assert ours == theirs

    @pytest.mark.parametrize("n", range(1, 9))
    def test_counts_match_table(self, n):
        assert len(connected(n)) == CONNECTED_GRAPH_COUNTS[n]

    def test_every_graph_connected_and_unique(self):
        for n in range(1, 9):
            graphs = connected(n)
            assert all(g.n == n and g.is_connected() for g in graphs)
            assert len({canonical_code(g) for g in graphs}) == len(graphs)

    def test_order_is_deterministic(self):
        assert [write_graph6(g) for g in enumerate_connected(6)] == [write_graph6(g) for g in connected(6)]

    def test_refuses_large_n(self):
        with pytest.raises(UnsupportedSizeError):
            next(enumerate_connected(9))


def brute_force_connectivity(g: Graph) -> int:
    if g.is_complete():
        return g.n - 1
    for k in range(g.n):
        for cut in combinations(range(g.n), k):
            rest = g.delete_vertices(cut)
            if rest.n >= 2 and not rest.is_connected():
                return k
    return g.n - 1


class TestElementaryQueries:
    def test_connectivity_matches_brute_force(self):
        for g in connected_upto(7):
            assert connectivity(g) == brute_force_connectivity(g)

    def test_connectivity_of_disconnected_graph(self):
        assert connectivity(Graph.from_edges(4, [(0, 1), (2, 3)])) == 0

    def test_clique_queries_match_networkx(self):
        for g in random_corpus(150, seed=2, max_n=11):
            omega = max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)
            assert clique_number(g) == omega
            assert has_clique(g, omega)
            assert not has_clique(g, omega + 1)

    def test_suppress_degree_two(self):
        subdivided_k4 = Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (0, 4), (4, 3), (1, 5), (5, 3), (2, 3)])
        assert suppress_degree_two(subdivided_k4) == complete_graph(4)

    def test_suppression_refuses_parallel_edges(self):
        with pytest.raises(NotSuppressibleError):
            suppress_degree_two(complete_graph(3))
