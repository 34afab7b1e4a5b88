import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import CertificateError, FormatError
from src.graphs import generators
from src.graphs.core import Path
from src.subdivision import (
    Balance,
    SearchStatus,
    SubdivisionCert,
    balance_profile,
    cert_from_cycle,
    cycle_vertices,
    find_balanced_clique_subdivision,
    format_cert,
    parse_cert,
    quarter_split,
    verify_subdivision,
)


def _triangle_in_c5() -> SubdivisionCert:
    return cert_from_cycle((0, 1, 2, 3, 4))


class TestCertificates:
    def test_cycle_certificate(self, c5):
        cert = _triangle_in_c5()
        assert verify_subdivision(c5, cert)
        assert cert.branch_vertices == (0, 1, 3)
        assert cert.vertex_set() == frozenset(range(5))
        assert cert.edge_ids(c5) == frozenset(c5.edge_ids())
        assert cycle_vertices(cert) == (0, 1, 2, 3, 4)

    def test_path_between_orients_from_first_vertex(self):
        cert = _triangle_in_c5()
        assert cert.path_between(2, 0).vertices == (3, 4, 0)
        assert cert.path_between(0, 2).vertices == (0, 4, 3)

    def test_rejects_bad_cycles(self):
        with pytest.raises(CertificateError):
            cert_from_cycle((0, 1))
        with pytest.raises(CertificateError):
            cert_from_cycle((0, 1, 0, 2))

    def test_verifier_clauses(self, c5, k4):
        cert = _triangle_in_c5()
        clashing = SubdivisionCert(cert.pattern, (0, 0, 3), cert.branch_paths)
        assert verify_subdivision(c5, clashing).clause == "branch map"

        off_host = SubdivisionCert(cert.pattern, cert.branch_vertices,
                                   (Path((0, 2)),) + cert.branch_paths[1:])
        assert verify_subdivision(c5, off_host).clause == "host edges"

        triangle = generators.complete(3)
        wrong_end = SubdivisionCert(triangle, (0, 1, 2), (Path((0, 1)), Path((0, 3)), Path((1, 2))))
        assert verify_subdivision(k4, wrong_end).clause == "path endpoints"

        shared = SubdivisionCert(generators.path(3), (0, 1, 2),
                                 (Path((0, 3, 1)), Path((1, 3, 2))))
        verdict = verify_subdivision(k4, shared)
        assert verdict.clause == "internally disjoint"

    def test_balance_profile(self):
        profile = balance_profile(_triangle_in_c5())
        assert profile.lengths == (1, 2, 2)
        assert profile.classification is Balance.ALMOST_BALANCED
        assert profile.ell == 2
        assert profile.label == "2-almost-balanced"
        assert profile.is_almost_balanced(2)
        assert not profile.is_balanced(2)

        square = balance_profile(cert_from_cycle((0, 1, 2, 3, 4, 5)))
        assert square.label == "2-balanced"

    def test_text_format(self):
        cert = _triangle_in_c5()
        assert parse_cert(format_cert(cert)) == cert

    def test_text_format_errors(self):
        text = format_cert(_triangle_in_c5())
        with pytest.raises(FormatError) as err:
            parse_cert(text.replace("path 1:", "path 7:"))
        assert err.value.line == 9
        with pytest.raises(FormatError):
            parse_cert("pattern 3 3\n0 1\n")
        with pytest.raises(FormatError):
            parse_cert("")

    @given(st.integers(min_value=3, max_value=30))
    @settings(max_examples=30, deadline=None)
    def test_every_cycle_is_an_almost_balanced_triangle(self, k):
        g = generators.cycle(k)
        cert = cert_from_cycle(tuple(range(k)))
        assert verify_subdivision(g, cert)
        assert balance_profile(cert).classification is not Balance.UNBALANCED
        assert cycle_vertices(cert) == tuple(range(k))


class TestSearch:
    def test_clique_is_one_balanced(self):
        g = generators.complete(5)
        outcome = find_balanced_clique_subdivision(g, 4)
        assert outcome
        assert outcome.ell == 1
        assert verify_subdivision(g, outcome.cert)

    def test_two_balanced_triangle_in_k33(self, k33):
        outcome = find_balanced_clique_subdivision(k33, 3)
        assert outcome.status is SearchStatus.FOUND
        assert outcome.ell == 2
        assert verify_subdivision(k33, outcome.cert)
        assert balance_profile(outcome.cert).is_balanced(2)

    def test_c5_refutes_every_length(self, c5):
        outcome = find_balanced_clique_subdivision(c5, 3)
        assert outcome.status is SearchStatus.REFUTED
        assert not outcome

    def test_budget(self):
        outcome = find_balanced_clique_subdivision(generators.complete(7), 6, budget=3)
        assert outcome.status is SearchStatus.BUDGET_EXHAUSTED
        assert outcome.cert is None

    def test_pattern_size(self, k4):
        with pytest.raises(CertificateError):
            find_balanced_clique_subdivision(k4, 1)


class TestQuarterSplit:
    def test_quarters_are_disjoint_cliques(self):
        g = generators.complete(16)
        outcome = find_balanced_clique_subdivision(g, 16)
        quarters = quarter_split(outcome.cert, 2)
        assert len(quarters) == 4
        seen = set()
        for q in quarters:
            assert q.pattern == generators.complete(4)
            assert verify_subdivision(g, q)
            assert seen.isdisjoint(q.vertex_set())
            seen |= q.vertex_set()
        assert seen == set(range(16))

    def test_wrong_size(self):
        outcome = find_balanced_clique_subdivision(generators.complete(12), 12)
        with pytest.raises(CertificateError):
            quarter_split(outcome.cert, 2)
