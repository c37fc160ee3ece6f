import random

import networkx as nx
import pytest

from apexrig.config import RunConfig
from apexrig.constructions import _glue, cone, delta_join, double_banana, octahedron, one_extension, zero_extension
from apexrig.graph import Graph, complete_graph
from apexrig.linalg import nullspace_mod, rank_exact, rank_mod, transpose
from apexrig.planarity import PreconditionError
from apexrig.rigidity import (
    exact_rank,
    gcr,
    generic_rank,
    hendrickson_check,
    is_circuit,
    is_globally_rigid,
    is_globally_rigid_randomized,
    is_independent,
    is_minimally_rigid,
    is_rigid,
    maxwell_cap,
    random_generic_framework,
    random_stress,
    rigid_target,
    rigidity_matrix,
    stress_basis,
    stress_matrix,
    stress_matrix_rank,
    unique_circuit,
)
from apexrig.sparsity import LAMAN, is_sparse

from conftest import TEST_PRIMES, connected, connected_upto, random_corpus

P = TEST_PRIMES[0]


def cfg_for(seed=0, primes=TEST_PRIMES, trials=3):
    return RunConfig(primes=primes, seed=seed, trials=trials)


class TestLinearAlgebra:
    def test_rank_mod_small_prime(self):
        assert rank_mod([[1, 2], [2, 4]], 7) == 1
        assert rank_mod([[1, 2], [3, 4]], 7) == 2
        assert rank_mod([[1, 1], [1, 1 + 5]], 5) == 1

    def test_rank_exact_matches_sympy(self):
        import sympy

        rng = random.Random(3)
        for _ in range(30):
            rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(rng.randint(1, 6))]
            assert rank_exact(rows) == sympy.Matrix(rows).rank()

    def test_nullspace_vectors_annihilate(self):
        rng = random.Random(1)
        rows = [[rng.randrange(P) for _ in range(6)] for _ in range(4)]
        basis = nullspace_mod(rows, 6, P)
        assert len(basis) == 2
        for v in basis:
            assert all(sum(a * b for a, b in zip(r, v)) % P == 0 for r in rows)

    def test_transpose(self):
        assert transpose([[1, 2, 3], [4, 5, 6]], 3) == [[1, 4], [2, 5], [3, 6]]


class TestRankBasics:
    @pytest.mark.parametrize(
        "g, d, rank",
        [
            (complete_graph(4), 3, 6),
            (complete_graph(5), 3, 9),
            (complete_graph(5), 2, 7),
            (octahedron(), 3, 12),
            (double_banana(), 3, 17),
            (complete_graph(3), 1, 2),
        ],
    )
    def test_known_ranks(self, g, d, rank):
        assert generic_rank(g, d, cfg_for()).rank == rank

    def test_rigid_target(self):
        assert rigid_target(8, 3) == 18
        assert rigid_target(3, 3) == 3
        assert rigid_target(5, 2) == 7

    def test_matrix_shape_and_row_sums(self):
        g = double_banana()
        f = random_generic_framework(g, 3, P, 0)
        rows = rigidity_matrix(f)
        assert len(rows) == 18 and len(rows[0]) == 24
        for row in rows:
            for k in range(3):
                assert sum(row[k::3]) % P == 0

    def test_framework_points_are_distinct_and_reproducible(self):
        g = complete_graph(6)
        f1 = random_generic_framework(g, 2, P, 5)
        f2 = random_generic_framework(g, 2, P, 5)
        assert f1 == f2 and len(set(f1.coords)) == 6

    def test_rank_result_metadata(self):
        r = generic_rank(double_banana(), 3, cfg_for())
        assert r.stable and r.maxwell_cap == 18 and r.per_prime == (17, 17)
        assert 0 < r.failure_bound < 1e-30

    def test_predicates(self):
        cfg = cfg_for()
        assert is_minimally_rigid(octahedron(), 3, cfg)
        assert not is_rigid(double_banana(), 3, cfg)
        assert not is_independent(double_banana(), 3, cfg)
        assert is_independent(Graph(4), 3, cfg)
        assert not is_independent(complete_graph(6), 3, cfg)

    def test_dimension_must_be_positive(self):
        with pytest.raises(ValueError):
            random_generic_framework(complete_graph(3), 0, P, 0)


def labelled_graphs_upto(n: int):
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= n:
            yield Graph.from_edges(h.number_of_nodes(), h.edges())


class TestLowDimensions:
    def test_line_rank_is_cycle_matroid_rank(self):
        cfg = cfg_for()
        for g in labelled_graphs_upto(7):
            assert generic_rank(g, 1, cfg).rank == g.n - len(g.components())

    def test_plane_independence_is_laman_sparsity(self):
        cfg = cfg_for()
        for g in connected_upto(7):
            assert is_independent(g, 2, cfg) == is_sparse(g, LAMAN), g


class TestConing:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_independence_transfers(self, d):
        cfg = cfg_for()
        for g in connected_upto(6):
            assert is_independent(g, d, cfg) == is_independent(cone(g), d + 1, cfg), g

    @pytest.mark.parametrize("d", [1, 2])
    def test_circuits_transfer(self, d):
        cfg = cfg_for()
        found = 0
        for g in connected_upto(6):
            if is_circuit(g, d, cfg):
                found += 1
                assert is_circuit(cone(g), d + 1, cfg)
        assert found > 0


class TestStability:
    def test_rank_agrees_across_seeds_and_primes(self):
        rng = random.Random(77)
        corpus = random_corpus(1000, seed=78, max_n=10)
        for g in corpus:
            d = rng.randint(1, 4)
            ranks = {
                generic_rank(g, d, cfg_for(seed=s, primes=(p,), trials=1)).rank
                for s in range(5)
                for p in TEST_PRIMES
            }
            assert len(ranks) == 1, (g, d, ranks)
            assert ranks.pop() <= maxwell_cap(g, d)

    def test_rank_matches_exact_rational_oracle(self):
        rng = random.Random(31)
        corpus = random_corpus(200, seed=32, max_n=9)
        for i, g in enumerate(corpus):
            d = rng.randint(1, 4)
            assert generic_rank(g, d, cfg_for(seed=i)).rank == exact_rank(g, d, seed=i), (g, d)

    def test_exact_oracle_size_limit(self):
        with pytest.raises(ValueError):
            exact_rank(Graph(11), 3)


class TestExtensions:
    def test_randomized_extension_chains_preserve_independence(self):
        rng = random.Random(12)
        cfg = cfg_for()
        steps = 0
        for _ in range(50):
            d = rng.choice([2, 3])
            g = complete_graph(d + 1)
            for _ in range(10):
                if rng.random() < 0.5 or g.m == 0:
                    g = zero_extension(g, d, rng.sample(range(g.n), d))
                else:
                    u, v = rng.choice(g.edges())
                    others = [w for w in range(g.n) if w not in (u, v)]
                    g = one_extension(g, d, (u, v), rng.sample(others, d - 1))
                assert is_independent(g, d, cfg)
                steps += 1
        assert steps == 500

    def test_two_k4_glued_on_a_triangle(self):
        g = delta_join(complete_graph(4), (0, 1, 2), complete_graph(4), (0, 1, 2))
        assert (g.n, g.m) == (5, 9)
        assert is_independent(g, 3, cfg_for())

    def test_rigid_graphs_sharing_three_vertices_union_rigid(self):
        g = _glue(octahedron(), complete_graph(5), [(0, 0), (2, 1), (4, 2)])
        assert is_rigid(g, 3, cfg_for())
        h = _glue(complete_graph(4), complete_graph(4), [(0, 0), (1, 1)])
        assert not is_rigid(h, 3, cfg_for())


class TestStresses:
    def test_double_banana_is_a_circuit(self):
        cfg = cfg_for()
        g = double_banana()
        assert is_circuit(g, 3, cfg)
        assert len(unique_circuit(g, 3, cfg)) == 18

    def test_k5_is_the_smallest_circuit(self):
        assert is_circuit(complete_graph(5), 3, cfg_for())
        assert not is_circuit(complete_graph(4), 3, cfg_for())
        assert not is_circuit(complete_graph(6), 3, cfg_for())

    def test_unique_circuit_requires_deficit_one(self):
        with pytest.raises(PreconditionError):
            unique_circuit(octahedron(), 3, cfg_for())

    def test_unique_circuit_finds_a_pendant_circuit(self):
        g = complete_graph(5).add_vertex([0, 1, 2])
        assert sorted(unique_circuit(g, 3, cfg_for())) == complete_graph(5).edges()

    def test_stress_is_an_equilibrium(self):
        g = complete_graph(6)
        f = random_generic_framework(g, 3, P, 1)
        rows = rigidity_matrix(f)
        basis = stress_basis(f)
        assert len(basis) == g.m - 12
        for s in basis:
            for col in range(len(rows[0])):
                assert sum(w * r[col] for w, r in zip(s.values, rows)) % P == 0

    def test_stress_matrix_is_symmetric_with_zero_row_sums(self):
        g = complete_graph(6)
        f = random_generic_framework(g, 3, P, 2)
        omega = random_stress(stress_basis(f), random.Random(0))
        mat = stress_matrix(f, omega)
        assert all(mat[i][j] == mat[j][i] for i in range(6) for j in range(6))
        assert all(sum(row) % P == 0 for row in mat)
        assert stress_matrix_rank(f, omega) == 6 - 3 - 1

    def test_stress_matrix_rejects_foreign_stress(self):
        f = random_generic_framework(complete_graph(6), 3, P, 2)
        other = random_generic_framework(complete_graph(6), 3, P, 3)
        omega = stress_basis(other)[0]
        with pytest.raises(ValueError):
            stress_matrix(f, omega)


class TestGlobalRigidity:
    def test_complete_graphs(self):
        for n in range(2, 8):
            assert is_globally_rigid(complete_graph(n), 3, cfg_for())

    def test_double_banana_fails_connectivity(self):
        v = is_globally_rigid_randomized(double_banana(), 3, cfg_for())
        assert (v.verdict, v.rule) == ("no", "hendrickson-connectivity")

    def test_octahedron_fails_redundancy(self):
        v = is_globally_rigid_randomized(octahedron(), 3, cfg_for())
        assert (v.verdict, v.rule) == ("no", "hendrickson-redundancy")
        assert hendrickson_check(octahedron(), 3, cfg_for()) == (True, False)

    def test_k5_certificate(self):
        v = is_globally_rigid_randomized(complete_graph(5), 3, cfg_for())
        assert (v.verdict, v.rule, v.anomaly) == ("yes", "full-rank-stress", False)

    def test_small_graphs(self):
        v = is_globally_rigid_randomized(complete_graph(4).remove_edges([(0, 1)]), 3, cfg_for())
        assert (v.verdict, v.rule) == ("no", "small-complete")

    def test_plane_matches_connectivity_and_redundancy(self):
        # In the plane the Hendrickson conditions are also sufficient.
        cfg = cfg_for()
        for g in connected_upto(7, lo=4):
            conn, redundant = hendrickson_check(g, 2, cfg)
            assert is_globally_rigid(g, 2, cfg) == (conn and redundant), g

    def test_globally_rigid_implies_rigid(self):
        cfg = cfg_for()
        for g in connected_upto(7, lo=5):
            if is_globally_rigid(g, 3, cfg):
                assert is_rigid(g, 3, cfg)


class TestCompletionRank:
    def test_examples(self):
        cfg = cfg_for()
        assert gcr(double_banana(), cfg) == 5
        assert gcr(Graph(3), cfg) == 1
        for n in range(1, 7):
            assert gcr(complete_graph(n), cfg) == n

    def test_trees_have_rank_two(self):
        assert gcr(Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)]), cfg_for()) == 2
