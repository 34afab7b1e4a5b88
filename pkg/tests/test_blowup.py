import pytest

from src.blowup import (
    build_blowup,
    build_blowup_h_separator,
    build_supergraph_h_separator,
    check_h_separation,
    enumerate_h_copies,
    format_copies,
)
from src.errors import GraphError, OracleLimitError
from src.graphs import generators
from src.graphs.core import Graph
from src.separation import EdgeSetMember, SeparatingFamily

K2 = generators.complete(2)
K3 = generators.complete(3)
P3 = generators.path(3)
MATCHING = Graph(4, [(0, 1), (2, 3)])


def _copies_as_members(g, copies) -> SeparatingFamily:
    return SeparatingFamily(g, tuple(EdgeSetMember(tuple(sorted(c.edges))) for c in copies))


class TestBlowup:
    def test_classes_and_edges(self):
        b = build_blowup(K3, 2)
        assert b.classes == ((0, 1), (2, 3), (4, 5))
        assert b.host.n == 6 and b.host.m == 12
        assert b.class_of(3) == 1
        assert len(b.selection_edges(((0,), (2,), (4, 5)))) == 5
        assert b.selection_edges(b.classes) == list(b.host.edge_ids())

    def test_errors(self):
        with pytest.raises(GraphError):
            build_blowup(K3, 0)
        with pytest.raises(GraphError):
            build_blowup(K3, 2).selection_edges(((0,), (2,)))


class TestCopies:
    @pytest.mark.parametrize("g, h, count", [
        (generators.complete_bipartite(3, 3), K2, 9),
        (build_blowup(K3, 2).host, K3, 8),
        (generators.complete_bipartite(3, 3), K3, 0),
        (generators.complete(4), K3, 4),
        (generators.path(3), P3, 1),
    ])
    def test_counts(self, g, h, count):
        assert len(enumerate_h_copies(g, h)) == count

    def test_one_copy_per_edge_set(self):
        (copy,) = enumerate_h_copies(generators.path(3), P3)
        assert copy.mapping == (0, 1, 2)
        assert copy.vertex_set() == frozenset({0, 1, 2})
        assert format_copies([copy]) == "copy 0: 0->0 1->1 2->2\n"
        assert format_copies([]) == ""

    def test_caps(self):
        with pytest.raises(OracleLimitError):
            enumerate_h_copies(generators.complete(6), generators.complete(5))
        with pytest.raises(OracleLimitError):
            enumerate_h_copies(generators.cycle(17), K2)
        assert len(enumerate_h_copies(generators.cycle(17), K2, host_cap=17)) == 17


class TestHSeparation:
    def test_copies_separate_themselves(self, k4):
        copies = enumerate_h_copies(k4, K3)
        verdict = check_h_separation(k4, K3, _copies_as_members(k4, copies), copies)
        assert verdict
        assert verdict.copies == 4

    def test_failures_name_copy_indices(self, k4):
        verdict = check_h_separation(k4, K3, SeparatingFamily(k4, ()))
        assert not verdict
        assert verdict.pair == (0, 1)
        assert verdict.clause == "h-separation"
        everything = SeparatingFamily(k4, (EdgeSetMember(tuple(k4.edge_ids())),))
        assert not check_h_separation(k4, K3, everything)

    def test_fewer_than_two_copies_pass(self, c5):
        assert check_h_separation(c5, K3, SeparatingFamily(c5, ()))


class TestSupergraphSeparator:
    @pytest.mark.parametrize("g, h", [
        (Graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]), K3),
        (generators.complete(4), K3),
        (generators.petersen(), P3),
        (generators.complete_bipartite(3, 3), K2),
    ])
    def test_separates(self, g, h):
        fam = build_supergraph_h_separator(g, h, seed=1)
        assert check_h_separation(g, h, fam)
        assert not fam.metadata["fallback"]

    def test_no_copies(self, c5):
        fam = build_supergraph_h_separator(c5, K3)
        assert len(fam) == 0
        assert fam.metadata == {"copies": 0, "constraints": 0}

    def test_disconnected_members_where_subpaths_fail(self):
        g = generators.path(5)
        copies = enumerate_h_copies(g, MATCHING)
        assert len(copies) == 3
        subpaths = SeparatingFamily(g, tuple(
            EdgeSetMember(tuple(range(i, j))) for i in range(g.m) for j in range(i + 1, g.m + 1)
        ))
        verdict = check_h_separation(g, MATCHING, subpaths, copies)
        assert not verdict
        assert verdict.pair == (1, 0)

        fam = build_supergraph_h_separator(g, MATCHING, seed=2, copies=copies)
        assert check_h_separation(g, MATCHING, fam, copies)
        first, middle, last = g.edge_id(0, 1), g.edge_id(1, 2), g.edge_id(3, 4)
        assert any(first in m.edges and last in m.edges and middle not in m.edges for m in fam)


class TestBlowupSeparator:
    @pytest.mark.parametrize("h, n", [(K2, 2), (K2, 4), (P3, 2), (K3, 2), (K3, 3)])
    def test_sub_blowups_separate_every_copy(self, h, n):
        fam = build_blowup_h_separator(h, n, seed=0)
        b = fam.metadata["blowup"]
        assert not fam.metadata["fallback"]
        assert fam.metadata["tier"] == "shared-index"
        assert len(fam.metadata["attempts"]) == 1
        assert check_h_separation(b.host, h, fam)
        assert fam.metadata["separates_transversal"]
        for member, selection in zip(fam, fam.metadata["selections"]):
            assert list(member.edges) == b.selection_edges(selection)
            assert all(picks for picks in selection)
            assert all(b.class_of(v) == x for x, picks in enumerate(selection) for v in picks)

    def test_single_vertex_classes_are_vacuous(self):
        fam = build_blowup_h_separator(K3, 1)
        assert len(fam) == 0
        assert fam.metadata["tier"] == "vacuous"
        assert fam.metadata["copies"] == 1

    def test_seeded(self):
        first = build_blowup_h_separator(K3, 3, seed=4)
        second = build_blowup_h_separator(K3, 3, seed=4)
        assert first.members == second.members
