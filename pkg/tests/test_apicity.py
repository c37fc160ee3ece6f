from itertools import combinations

import networkx as nx
import pytest

from apexrig.apicity import (
    apex_edges,
    apex_vertices,
    apicity_profile,
    critical_edge_apicity,
    critical_vertex_apicity,
    edge_apicity,
    is_critically_k_apex,
    is_critically_k_edge_apex,
    is_k_apex,
    is_k_edge_apex,
    vertex_apicity,
)
from apexrig.constructions import double_banana, k_mn, octahedron
from apexrig.graph import Graph, complete_graph
from apexrig.planarity import planar, subdivision_type

from conftest import connected, connected_upto


def nx_planar(g: Graph, drop_vertices=(), drop_edges=()) -> bool:
    h = nx.Graph()
    h.add_nodes_from(v for v in range(g.n) if v not in drop_vertices)
    gone = {frozenset(e) for e in drop_edges}
    h.add_edges_from(
        (u, v) for u, v in g.edges() if u not in drop_vertices and v not in drop_vertices and frozenset((u, v)) not in gone
    )
    return nx.check_planarity(h)[0]


def oracle_vertex_apicity(g: Graph) -> int:
    return next(k for k in range(g.n + 1) if any(nx_planar(g, s) for s in combinations(range(g.n), k)))


def oracle_critical_vertex_apicity(g: Graph) -> int:
    return next(k for k in range(g.n + 1) if all(nx_planar(g, s) for s in combinations(range(g.n), k)))


def oracle_edge_apicity(g: Graph) -> int:
    edges = g.edges()
    return next(k for k in range(g.m + 1) if any(nx_planar(g, drop_edges=f) for f in combinations(edges, k)))


def oracle_critical_edge_apicity(g: Graph) -> int:
    edges = g.edges()
    return next(k for k in range(g.m + 1) if all(nx_planar(g, drop_edges=f) for f in combinations(edges, k)))


class TestVertexApicity:
    def test_apex_vertices_match_oracle(self):
        for g in connected_upto(7, lo=5):
            assert apex_vertices(g) == [v for v in range(g.n) if nx_planar(g, (v,))]

    def test_vertex_apicity_matches_oracle(self):
        for g in connected_upto(7, lo=5):
            k, witness = vertex_apicity(g)
            assert k == oracle_vertex_apicity(g)
            assert len(witness) == k and nx_planar(g, witness)

    def test_critical_vertex_apicity_matches_oracle(self):
        for g in connected_upto(7, lo=5):
            assert critical_vertex_apicity(g) == oracle_critical_vertex_apicity(g)

    def test_complete_graphs(self):
        for n in range(5, 9):
            assert vertex_apicity(complete_graph(n))[0] == n - 4
            assert critical_vertex_apicity(complete_graph(n)) == n - 4

    def test_k_apex_predicates(self):
        k6 = complete_graph(6)
        assert not is_k_apex(k6, 1) and is_k_apex(k6, 2)
        assert is_critically_k_apex(k6, 2) and not is_critically_k_apex(k6, 1)
        assert is_critically_k_apex(Graph(2), 5)


class TestEdgeApicity:
    def test_apex_edges_match_oracle(self):
        for g in connected_upto(7, lo=5):
            assert apex_edges(g) == [e for e in g.edges() if nx_planar(g, drop_edges=[e])]

    def test_edge_apicity_matches_oracle(self):
        for g in connected_upto(6):
            k, witness = edge_apicity(g)
            assert k == oracle_edge_apicity(g)
            assert len(witness) == k and nx_planar(g, drop_edges=witness)

    def test_edge_apicity_on_sparse_seven_vertex_graphs(self):
        sample = [g for g in connected(7) if not planar(g) and g.m <= 14]
        for g in sample[:60]:
            assert edge_apicity(g)[0] == oracle_edge_apicity(g)

    @pytest.mark.parametrize("n, k", [(5, 1), (6, 3), (7, 6)])
    def test_complete_graphs_lose_exactly_the_euler_excess(self, n, k):
        assert edge_apicity(complete_graph(n))[0] == k

    def test_witness_is_lexicographically_least(self):
        k, witness = edge_apicity(complete_graph(6))
        options = [f for f in combinations(complete_graph(6).edges(), k) if nx_planar(complete_graph(6), drop_edges=f)]
        assert witness == min(options)

    def test_k_edge_apex_predicate(self):
        g = complete_graph(6)
        assert not is_k_edge_apex(g, 2)
        assert is_k_edge_apex(g, 3) and is_k_edge_apex(g, 5)
        assert is_k_edge_apex(octahedron(), 0)


class TestCriticalEdgeApicity:
    def test_matches_oracle(self):
        for g in connected_upto(6):
            assert critical_edge_apicity(g) == oracle_critical_edge_apicity(g)

    def test_matches_oracle_on_sparse_seven_vertex_graphs(self):
        sample = [g for g in connected(7) if not planar(g) and g.m <= 13]
        for g in sample[:40]:
            assert critical_edge_apicity(g) == oracle_critical_edge_apicity(g)

    def test_kuratowski_graphs(self):
        assert critical_edge_apicity(complete_graph(5)) == 1
        assert critical_edge_apicity(k_mn(3, 3)) == 1
        assert is_critically_k_edge_apex(k_mn(3, 3), 1)

    @pytest.mark.slow
    def test_critically_edge_apex_means_kuratowski_subdivision(self):
        for n in range(5, 9):
            for g in connected(n):
                if planar(g):
                    continue
                crit = critical_edge_apicity(g) == 1
                assert crit == (subdivision_type(g) != "neither"), g


class TestInvariants:
    def test_critical_values_dominate(self):
        for g in connected_upto(7, lo=5):
            p = apicity_profile(g)
            assert p.critical_vertex_apicity >= p.vertex_apicity
            assert p.critical_edge_apicity >= p.edge_apicity

    @pytest.mark.slow
    def test_edge_apex_graphs_are_apex(self):
        for g in connected_upto(8, lo=5):
            if not planar(g) and apex_edges(g):
                assert apex_vertices(g)

    def test_double_banana_profile(self):
        assert apicity_profile(double_banana()).as_tuple() == (1, 2, 3, 8)

    def test_planar_profile_is_zero(self):
        assert apicity_profile(octahedron()).as_tuple() == (0, 0, 0, 0)
