import networkx as nx
import pytest
from hypothesis import given, settings

from src.errors import FormatError, GraphError, OracleLimitError
from src.graphs import generators
from src.graphs.connectivity import (
    articulation_points,
    biconnected_blocks,
    disjoint_paths,
    is_three_connected,
    two_separators_bruteforce,
)
from src.graphs.core import Graph, Path, join_paths
from src.graphs.edgelist import format_edge_list, parse_edge_list

from tests.strategies import connected_graphs


class TestGraph:
    def test_rejects_invalid_edges(self):
        with pytest.raises(GraphError):
            Graph(3, [(1, 1)])
        with pytest.raises(GraphError):
            Graph(3, [(0, 1), (1, 0)])
        with pytest.raises(GraphError):
            Graph(3, [(0, 3)])

    def test_edge_ids_follow_input_order(self):
        g = Graph(4, [(2, 3), (1, 0), (0, 2)])
        assert g.edges == ((2, 3), (0, 1), (0, 2))
        assert g.edge_id(1, 0) == 1
        assert g.edge_id(0, 1) == 1
        with pytest.raises(GraphError):
            g.edge_id(1, 3)
        with pytest.raises(GraphError):
            g.edge(7)

    def test_induced_relabels_densely(self, petersen):
        sub, to_parent = petersen.induced([9, 4, 0, 5])
        assert to_parent == (0, 4, 5, 9)
        for u, v in sub.edges:
            assert petersen.has_edge(to_parent[u], to_parent[v])

    def test_edge_subgraph_keeps_vertex_ids(self, k4):
        sub, to_parent = k4.edge_subgraph([5, 0])
        assert sub.n == 4
        assert to_parent == (0, 5)
        assert sub.edges == (k4.edge(0), k4.edge(5))

    def test_components_with_removal(self, c5):
        assert c5.components(removed=(0, 2)) == [[1], [3, 4]]
        assert c5.is_connected(removed=(0,))
        assert not c5.is_connected(removed=(0, 2))

    def test_shortest_path_is_lexicographic(self):
        g = generators.cycle(6)
        assert g.shortest_path(0, 3).vertices == (0, 1, 2, 3)
        assert g.shortest_path(0, 3, allowed=[4, 5]).vertices == (0, 5, 4, 3)

    def test_shortest_path_can_skip_an_edge(self, c5):
        detour = c5.shortest_path(0, 1, skip_edge=c5.edge_id(0, 1))
        assert detour.vertices == (0, 4, 3, 2, 1)
        assert c5.shortest_path(0, 2, allowed=[]) is None

    def test_networkx_round_trip(self, petersen):
        assert Graph.from_networkx(petersen.to_networkx()) == petersen

    def test_host_hash_follows_edge_ids(self):
        assert Graph(3, [(0, 1), (1, 2)]).host_hash() == Graph(3, [(1, 0), (1, 2)]).host_hash()
        assert Graph(3, [(0, 1), (1, 2)]).host_hash() != Graph(3, [(1, 2), (0, 1)]).host_hash()
        assert Graph(3, [(0, 1)]).host_hash() != Graph(4, [(0, 1)]).host_hash()


class TestPath:
    def test_join_and_validate(self, c5):
        p = join_paths([Path((0, 1)), Path((1, 2, 3))])
        assert p.vertices == (0, 1, 2, 3)
        assert p.length == 3
        assert p.interior == (1, 2)
        assert p.is_valid(c5)
        assert not Path((0, 2)).is_valid(c5)
        assert not Path((0, 1, 0)).is_valid(c5)

    def test_then_requires_shared_vertex(self):
        with pytest.raises(GraphError):
            Path((0, 1)).then(Path((2, 3)))


class TestEdgeList:
    def test_parse_format(self, petersen):
        text = format_edge_list(petersen, comment="petersen")
        assert text.startswith("# petersen\n10 15\n")
        assert parse_edge_list(text) == petersen

    def test_reports_line_numbers(self):
        with pytest.raises(FormatError) as err:
            parse_edge_list("3 2\n0 1\n1 x\n")
        assert err.value.line == 3
        with pytest.raises(FormatError, match="announces 3 edges"):
            parse_edge_list("# comment\n3 3\n0 1\n1 2\n")
        with pytest.raises(FormatError) as err:
            parse_edge_list("3 1\n2 1\n")
        assert err.value.line == 2


class TestConnectivity:
    @given(connected_graphs(max_n=9))
    @settings(max_examples=60, deadline=None)
    def test_articulation_points_match_networkx(self, g):
        assert articulation_points(g) == set(nx.articulation_points(g.to_networkx()))

    @given(connected_graphs(max_n=9))
    @settings(max_examples=60, deadline=None)
    def test_blocks_partition_edges(self, g):
        blocks = biconnected_blocks(g)
        flat = sorted(e for block in blocks for e in block)
        assert flat == list(g.edge_ids())

    @given(connected_graphs(min_n=4, max_n=8))
    @settings(max_examples=60, deadline=None)
    def test_three_connectivity_matches_networkx(self, g):
        assert bool(is_three_connected(g)) == (nx.node_connectivity(g.to_networkx()) >= 3)

    def test_three_connected_verdicts(self, k4, c5, petersen, prism):
        assert is_three_connected(k4)
        assert is_three_connected(petersen)
        assert is_three_connected(prism)
        verdict = is_three_connected(c5)
        assert not verdict
        assert verdict.detail == "2-separator"
        assert not c5.is_connected(removed=verdict.separator)
        assert is_three_connected(generators.path(5)).detail == "cut vertex"
        assert is_three_connected(generators.complete(3)).detail == "fewer than 4 vertices"

    def test_disjoint_paths(self, prism):
        paths = disjoint_paths(prism, [0, 1, 2], [3, 4, 5], 3)
        assert [p.vertices for p in paths] == [(0, 3), (1, 4), (2, 5)]
        assert disjoint_paths(prism, [0, 1, 2], [3, 4, 5], 4) is None

    def test_disjoint_paths_respect_blocked_vertices(self, petersen):
        paths = disjoint_paths(petersen, [0], [7], 1, blocked=[1, 4, 5])
        assert paths is None
        paths = disjoint_paths(petersen, [0, 1], [7, 8, 9], 2)
        used = [v for p in paths for v in p.vertices]
        assert len(used) == len(set(used))
        assert all(p.is_valid(petersen) for p in paths)

    def test_disjoint_paths_input_checks(self, k4):
        with pytest.raises(GraphError):
            disjoint_paths(k4, [0, 1], [1, 2], 1)
        with pytest.raises(GraphError):
            disjoint_paths(k4, [0], [1], 0)


class TestSeparatorOracle:
    def test_c4_antipodal_pairs_cross(self, c4):
        records = {r.vertices: r for r in two_separators_bruteforce(c4)}
        assert set(records) == {(0, 2), (1, 3)}
        assert not any(r.totally_nested for r in records.values())

    def test_k4_has_no_small_separators(self, k4):
        assert two_separators_bruteforce(k4) == []

    def test_cut_vertex_is_totally_nested(self):
        records = two_separators_bruteforce(generators.path(3))
        assert [(r.vertices, r.totally_nested) for r in records] == [((1,), True)]

    def test_cut_vertex_pairs_do_not_split_a_block(self):
        g = Graph(6, [(0, 2), (0, 4), (0, 5), (1, 4), (3, 4)])
        records = {r.vertices: r for r in two_separators_bruteforce(g)}
        assert records[(0, 4)].tight_separations == 2
        assert not records[(0, 4)].totally_nested
        assert records[(0,)].totally_nested
        assert records[(4,)].totally_nested

    def test_four_parallel_paths_share_one_separator(self):
        records = two_separators_bruteforce(generators.theta(4, 2))
        assert [(r.vertices, r.totally_nested) for r in records] == [((0, 1), True)]

    def test_limits(self, petersen):
        with pytest.raises(OracleLimitError):
            two_separators_bruteforce(petersen, limit=5)
        with pytest.raises(GraphError):
            two_separators_bruteforce(Graph(4, [(0, 1), (2, 3)]))


class TestGenerators:
    def test_complete_bipartite_sides(self):
        g = generators.complete_bipartite(2, 3)
        assert g.n == 5 and g.m == 6
        assert all(u < 2 <= v for u, v in g.edges)

    def test_theta(self):
        g = generators.theta(3, 2)
        assert g.n == 5 and g.m == 6
        assert g.degree(0) == g.degree(1) == 3

    def test_pattern_names(self):
        assert generators.pattern_from_name("k3") == generators.complete(3)
        assert generators.pattern_from_name("P3").m == 2
        assert generators.pattern_from_name("c4").m == 4
        with pytest.raises(GraphError):
            generators.pattern_from_name("k1")
        with pytest.raises(GraphError):
            generators.pattern_from_name("triangle")

    def test_random_generators_are_seeded(self):
        assert generators.random_gnp(30, 0.1, seed=4) == generators.random_gnp(30, 0.1, seed=4)
        assert generators.random_gnp(30, 0.05, seed=4).is_connected()
        tree = generators.random_tree(12, seed=2)
        assert tree.m == 11 and tree.is_connected()
