import random

import pytest

from apexrig.apicity import apex_vertices, is_critically_k_apex
from apexrig.config import RunConfig
from apexrig.constructions import (
    BANANA_LABELS,
    BANANA_POS,
    CATALOG,
    CatalogError,
    CatalogValidationError,
    build,
    catalog,
    catalog_names,
    cone,
    delta_join,
    double_one_extension,
    edge_join,
    fig4_embedding,
    fig4_planar,
    fig5_triangulation,
    normalize_name,
    one_extension,
    vertex_join,
    zero_extension,
)
from apexrig.graph import GraphError, complete_graph, is_isomorphic
from apexrig.planarity import PreconditionError, complete_to_triangulation, planar, structure_tree
from apexrig.rigidity import is_independent, is_minimally_rigid, unique_circuit

from conftest import TEST_PRIMES, random_corpus

CFG = RunConfig(primes=TEST_PRIMES)

# Parameters exercised for every parametrised catalog entry.
CATALOG_PARAMS = {
    "k": [(n,) for n in range(1, 8)],
    "k-mn": [(1, 1), (2, 3), (3, 3), (3, 4)],
    "cycle": [(n,) for n in range(3, 9)],
    "wheel": [(r,) for r in range(3, 9)],
    "cone-of-wheel": [(r,) for r in range(3, 8)],
    "fiorini-family2": [(k,) for k in range(2, 6)],
    "apex-genus-family": [(k,) for k in range(0, 5)],
}


def catalog_cases():
    for name in catalog_names():
        for params in CATALOG_PARAMS.get(name, [()]):
            yield name, params


class TestOperationArithmetic:
    def test_zero_and_one_extensions(self):
        for g in random_corpus(40, seed=6, min_n=4, max_n=9):
            z = zero_extension(g, 3, [0, 1, 2])
            assert (z.n, z.m) == (g.n + 1, g.m + 3)
            if g.m:
                u, v = g.edges()[0]
                extra = [w for w in range(g.n) if w not in (u, v)][:2]
                o = one_extension(g, 3, (u, v), extra)
                assert (o.n, o.m) == (g.n + 1, g.m + 3)
                assert not o.has_edge(u, v)

    def test_double_one_extension(self):
        g = complete_graph(5)
        h = double_one_extension(g, (0, 1), [0, 2, 3], [1, 3, 4])
        assert (h.n, h.m) == (7, 10 - 1 + 7)
        assert h.has_edge(5, 6) and not h.has_edge(0, 1)

    def test_cone(self):
        for g in random_corpus(20, seed=4, max_n=9):
            c = cone(g)
            assert (c.n, c.m) == (g.n + 1, g.m + g.n)
            assert c.degree(g.n) == g.n

    def test_joins(self):
        k4 = complete_graph(4)
        assert (vertex_join(k4, 0, k4, 0).n, vertex_join(k4, 0, k4, 0).m) == (7, 12)
        assert (edge_join(k4, (0, 1), k4, (2, 3)).n, edge_join(k4, (0, 1), k4, (2, 3)).m) == (6, 11)
        assert delta_join(k4, (0, 1, 2), k4, (1, 2, 3)).m == 9

    def test_invalid_operations(self):
        k4 = complete_graph(4)
        with pytest.raises(GraphError):
            zero_extension(k4, 3, [0, 1])
        with pytest.raises(GraphError):
            zero_extension(k4, 3, [0, 0, 1])
        with pytest.raises(GraphError):
            one_extension(k4.remove_edges([(0, 1)]), 3, (0, 1), [2, 3])
        with pytest.raises(GraphError):
            one_extension(k4, 3, (0, 1), [0, 2])
        with pytest.raises(GraphError):
            edge_join(k4.remove_edges([(0, 1)]), (0, 1), k4, (0, 1))
        with pytest.raises(PreconditionError):
            delta_join(complete_graph(5), (0, 1, 2), k4, (0, 1, 2))

    def test_extensions_preserve_independence(self):
        rng = random.Random(3)
        for _ in range(40):
            g = complete_graph(4)
            for _ in range(6):
                if rng.random() < 0.5:
                    g = zero_extension(g, 3, rng.sample(range(g.n), 3))
                else:
                    u, v = rng.choice(g.edges())
                    others = [w for w in range(g.n) if w not in (u, v)]
                    g = one_extension(g, 3, (u, v), rng.sample(others, 2))
            assert is_minimally_rigid(g, 3, CFG)


class TestCatalog:
    @pytest.mark.parametrize("name, params", list(catalog_cases()))
    def test_entry_passes_its_expected_properties(self, name, params):
        built = build(name, *params)
        assert set(built.failures) <= CATALOG[name].known_discrepancies
        assert built.graph.n > 0

    def test_every_entry_is_exercised(self):
        assert {name for name, _ in catalog_cases()} == set(CATALOG)

    def test_fiorini_entries_are_critically_apex_with_min_degree_four(self):
        for name in ("fiorini-sporadic-1", "fiorini-sporadic-2", "fiorini-sporadic-3"):
            g = catalog(name)
            assert not planar(g) and min(g.degrees()) == 4 and is_critically_k_apex(g, 1)
        for k in range(2, 6):
            g = catalog("fiorini-family2", k)
            assert set(g.degrees()) == {4} and is_critically_k_apex(g, 1)

    @pytest.mark.parametrize("k", range(0, 5))
    def test_genus_family_is_minimally_rigid_and_apex(self, k):
        built = build("apex-genus-family", k)
        assert is_minimally_rigid(built.graph, 3, CFG)
        assert 0 in apex_vertices(built.graph)
        assert built.annotations["verified"] is False

    def test_known_discrepancy_is_reported_not_raised(self):
        built = build("fig1-left")
        assert built.annotations["discrepancies"] == ["apex-on-a0"]
        assert not built.valid

    def test_validation_failure_raises(self, monkeypatch):
        entry = CATALOG["octahedron"]
        broken = type(entry)(**{**entry.__dict__, "checks": lambda: {"non-planar": lambda g: not planar(g)}})
        monkeypatch.setitem(CATALOG, "octahedron", broken)
        with pytest.raises(CatalogValidationError):
            build("octahedron")
        assert build("octahedron", validate=False).checks == {}

    def test_names_and_aliases(self):
        assert normalize_name("Double_Banana") == "double-banana"
        assert normalize_name("db") == "double-banana"
        assert catalog("complete", 4) == complete_graph(4)

    @pytest.mark.parametrize("args", [("nope",), ("k",), ("k", 3, 4), ("cycle", 2), ("fiorini-family2", 1)])
    def test_bad_requests(self, args):
        with pytest.raises(CatalogError):
            build(*args)

    def test_banana_labels(self):
        built = build("double-banana")
        assert built.labels == BANANA_LABELS
        assert built.graph.degree(BANANA_POS["a"]) == 6


def _label_edges(edges):
    return sorted(tuple(sorted((BANANA_LABELS[u], BANANA_LABELS[v]))) for u, v in edges)


class TestBananaWalkthrough:
    def test_completion_of_the_planar_drawing(self):
        t, added = complete_to_triangulation(fig4_planar(), fig4_embedding())
        assert _label_edges(added) == [("a", "b"), ("d", "d'")]
        tree = structure_tree(t)
        assert len(tree.blocks) == 5 and tree.is_path()

    def test_adding_ac_closes_a_k5_circuit(self):
        t, _ = complete_to_triangulation(fig4_planar(), fig4_embedding())
        g = t.add_edges([(BANANA_POS["a"], BANANA_POS["c"])])
        circuit = unique_circuit(g, 3, CFG)
        names = {BANANA_LABELS[v] for e in circuit for v in e}
        assert names == {"a", "b", "c", "d", "e"} and len(circuit) == 10

    def test_second_completion_has_three_blocks(self):
        assert len(structure_tree(fig5_triangulation()).blocks) == 3

    def test_triangulation_is_independent(self):
        assert is_independent(fig5_triangulation(), 3, CFG)
        assert is_isomorphic(catalog("fig5-triangulation"), fig5_triangulation())
