from itertools import product
from math import ceil, log2

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.bipartite import (
    Constraint,
    build_biclique_separating_system,
    build_constraint_family,
    build_knn_system,
    extract_biclique_cover,
    knn_bicliques,
    tile_biclique,
    unsatisfied_constraints,
)
from src.errors import ConstraintError, GraphError
from src.graphs import generators
from src.graphs.core import Graph
from src.separation import SeparatingFamily, check_strong_separation


class TestKnn:
    def test_trivial_sizes(self):
        assert len(build_knn_system(1)) == 0
        two = build_knn_system(2)
        assert len(two) == 4
        assert two.metadata["bits"] == 1
        assert len(build_knn_system(8)) == 12

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 8, 13, 16, 32, 64])
    def test_separates_within_the_bound(self, n):
        fam = build_knn_system(n)
        assert len(fam) <= 4 * (n - 1).bit_length()
        assert check_strong_separation(fam.host.edge_ids(), fam)

    def test_unequal_sides(self):
        g = generators.complete_bipartite(2, 5)
        fam = SeparatingFamily(g, tuple(knn_bicliques(range(2), range(2, 7))))
        assert check_strong_separation(g.edge_ids(), fam)

    def test_every_member_is_needed_for_k88(self):
        fam = build_knn_system(8)
        for i in range(len(fam)):
            assert not check_strong_separation(fam.host.edge_ids(), fam.without(i))


class TestConstraints:
    def test_constraint_checks(self):
        with pytest.raises(ConstraintError):
            Constraint({1, 2}, {2})
        c = Constraint([0], [3, 4])
        assert c.size == 3
        assert c.satisfied_by({0, 1})
        assert not c.satisfied_by({0, 3})
        assert not c.satisfied_by({1})

    def test_bad_input(self):
        with pytest.raises(ConstraintError):
            build_constraint_family(range(3), [])
        with pytest.raises(ConstraintError):
            build_constraint_family(range(3), [Constraint({5}, set())])

    def test_single_constraint(self):
        fam = build_constraint_family(range(5), [Constraint({0}, {1})], seed=1)
        assert len(fam) == 1
        assert Constraint({0}, {1}).satisfied_by(fam.sets[0])
        assert fam.include_probability == 0.5
        assert not fam.fallback

    def test_pair_constraints_separate_points(self):
        n = 16
        constraints = [Constraint({i}, {j}) for i in range(n) for j in range(n) if i != j]
        fam = build_constraint_family(range(n), constraints, seed=7)
        assert unsatisfied_constraints(range(n), constraints, fam.sets) == []
        assert len(fam) >= ceil(log2(n))
        assert not fam.fallback

    @pytest.mark.parametrize("trial", range(4))
    def test_many_random_constraints(self, trial):
        rng = np.random.default_rng(11 + trial)
        constraints = []
        for _ in range(1000):
            picked = rng.choice(200, size=6, replace=False).tolist()
            constraints.append(Constraint(picked[:3], picked[3:]))
        fam = build_constraint_family(range(200), constraints, seed=3 + trial)
        assert not fam.fallback
        assert unsatisfied_constraints(range(200), constraints, fam.sets) == []
        assert fam.include_probability == 0.5
        assert len(fam) < 1000
        assert build_constraint_family(range(200), constraints, seed=3 + trial).sets == fam.sets

    def test_seeded_draws_repeat(self):
        constraints = [Constraint({i}, {(i + 1) % 10}) for i in range(10)]
        first = build_constraint_family(range(10), constraints, seed=5)
        second = build_constraint_family(range(10), constraints, seed=5)
        assert first.sets == second.sets
        assert first.draws == second.draws

    def test_retry_ceiling_falls_back_to_tailored_sets(self):
        constraints = [Constraint({0, 1}, {2}), Constraint({2}, {0})]
        fam = build_constraint_family(range(4), constraints, seed=0, retry_ceiling=0)
        assert fam.draws == 0
        assert fam.tailored == 2
        assert fam.fallback
        assert fam.sets == (frozenset({0, 1, 3}), frozenset({1, 2, 3}))

    def test_unsatisfied_with_no_sets(self):
        constraints = [Constraint({0}, set()), Constraint(set(), {1})]
        assert unsatisfied_constraints(range(2), constraints, []) == [0, 1]
        assert unsatisfied_constraints(range(2), constraints, [{0}]) == []


def _exact_cover(g: Graph, s_min: int) -> SeparatingFamily:
    bicliques, leftovers = extract_biclique_cover(g, s_min)
    return SeparatingFamily(g, tuple(bicliques + leftovers))


class TestCover:
    def test_complete_bipartite_is_one_biclique(self):
        bicliques, leftovers = extract_biclique_cover(generators.complete_bipartite(6, 6), 2)
        assert len(bicliques) == 1
        assert leftovers == []
        assert bicliques[0].left == tuple(range(6))
        assert bicliques[0].right == tuple(range(6, 12))

    def test_edgeless_and_matching(self):
        assert extract_biclique_cover(Graph(5), 2) == ([], [])
        bicliques, leftovers = extract_biclique_cover(Graph(6, [(0, 1), (2, 3), (4, 5)]), 2)
        assert bicliques == []
        assert [(b.left, b.right) for b in leftovers] == [((0,), (1,)), ((2,), (3,)), ((4,), (5,))]

    def test_dense_random_graph_is_covered_exactly_once(self):
        g = generators.random_gnp(48, 0.5, seed=2)
        fam = _exact_cover(g, 3)
        assert (fam.membership.sum(axis=0) == 1).all()
        bicliques, _ = extract_biclique_cover(g, 3)
        assert bicliques
        assert all(len(b.left) == len(b.right) >= 3 for b in bicliques)

    @given(st.integers(min_value=2, max_value=14), st.integers(min_value=0, max_value=10_000),
           st.integers(min_value=1, max_value=3))
    @settings(max_examples=40, deadline=None)
    def test_random_covers_are_exact(self, n, seed, s_min):
        g = generators.random_gnp(n, 0.5, seed=seed)
        fam = _exact_cover(g, s_min)
        assert (fam.membership.sum(axis=0) == 1).all()

    def test_s_min_must_be_positive(self, k4):
        with pytest.raises(GraphError):
            extract_biclique_cover(k4, 0)


class TestBicliqueSystem:
    def test_complete_bipartite(self):
        g = generators.complete_bipartite(8, 8)
        fam = build_biclique_separating_system(g)
        assert len(fam) <= 12
        assert fam.metadata["bicliques"] == 1
        assert check_strong_separation(g.edge_ids(), fam)

    def test_matching_is_all_leftovers(self):
        g = Graph(6, [(0, 1), (2, 3), (4, 5)])
        fam = build_biclique_separating_system(g)
        assert len(fam) == 3
        assert fam.metadata["leftovers"] == 3
        assert check_strong_separation(g.edge_ids(), fam)

    def test_k4(self, k4):
        fam = build_biclique_separating_system(k4)
        assert len(fam) <= k4.m
        assert check_strong_separation(k4.edge_ids(), fam)

    @given(st.integers(min_value=2, max_value=16), st.integers(min_value=0, max_value=10_000))
    @settings(max_examples=40, deadline=None)
    def test_random_graphs_separate(self, n, seed):
        g = generators.random_gnp(n, 0.6, seed=seed)
        fam = build_biclique_separating_system(g)
        assert check_strong_separation(g.edge_ids(), fam)


class TestTiling:
    @pytest.mark.parametrize("n, t, s, count", [(4, 2, 2, 4), (3, 1, 3, 3), (5, 2, 2, 9), (6, 2, 3, 6)])
    def test_counts(self, n, t, s, count):
        assert len(tile_biclique(n, t, s)) == count

    @pytest.mark.parametrize("n", range(1, 7))
    def test_every_edge_is_covered_by_full_placements(self, n):
        everything = set(product(range(n), range(n, 2 * n)))
        for s in range(1, n + 1):
            for t in range(1, s + 1):
                placements = tile_biclique(n, t, s)
                covered = set()
                for b in placements:
                    assert len(set(b.left)) == t
                    assert len(set(b.right)) == s
                    covered |= set(product(b.left, b.right))
                assert covered == everything

    def test_errors(self):
        with pytest.raises(GraphError):
            tile_biclique(4, 0, 2)
        with pytest.raises(GraphError):
            tile_biclique(4, 3, 2)
        with pytest.raises(GraphError):
            tile_biclique(3, 2, 4)
