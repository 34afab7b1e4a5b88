from pathlib import Path

import pytest

from src.bipartite import build_knn_system
from src.graphs import generators
from src.graphs.edgelist import parse_edge_list, write_edge_list
from src.main import EXIT_ERROR, EXIT_OK, EXIT_VERIFY_FAILED, main
from src.separation import write_family


def _report(out: Path) -> dict:
    lines = (out / "report.txt").read_text().splitlines()
    return dict(line.split("=", 1) for line in lines)


def _host(tmp_path: Path, g, name: str = "host.txt") -> str:
    path = tmp_path / name
    write_edge_list(g, path)
    return str(path)


class TestGen:
    def test_writes_an_edge_list(self, tmp_path):
        target = tmp_path / "k5.txt"
        assert main(["gen", "complete", "5", "-o", str(target)]) == EXIT_OK
        assert parse_edge_list(target.read_text()) == generators.complete(5)

    def test_stdout_and_seed(self, capsys):
        assert main(["--seed", "3", "gen", "random", "12", "0.3"]) == EXIT_OK
        first = capsys.readouterr().out
        assert main(["--seed", "3", "gen", "random", "12", "0.3"]) == EXIT_OK
        assert capsys.readouterr().out == first
        assert parse_edge_list(first).n == 12

    def test_wrong_parameter_count(self):
        assert main(["gen", "biclique", "3"]) == EXIT_ERROR


class TestCommands:
    def test_bipartite_knn(self, tmp_path):
        out = tmp_path / "out"
        assert main(["--out", str(out), "bipartite", "knn", "8"]) == EXIT_OK
        report = _report(out)
        assert report["family_size"] == "12"
        assert report["bound"] == "12"
        assert report["verify.strong"] == "true"
        assert (out / "family.txt").exists() and (out / "host.txt").exists()

    def test_bipartite_tiling_and_cover(self, tmp_path):
        assert main(["--out", str(tmp_path / "t"), "bipartite", "tiling", "5", "2", "2"]) == EXIT_OK
        assert _report(tmp_path / "t")["placements"] == "9"
        host = _host(tmp_path, generators.complete_bipartite(4, 4))
        assert main(["--out", str(tmp_path / "c"), "bipartite", "cover", host]) == EXIT_OK
        report = _report(tmp_path / "c")
        assert report["bicliques"] == "1"
        assert report["verify.exact_cover"] == "true"

    def test_decompose_with_dot(self, tmp_path):
        out = tmp_path / "out"
        host = _host(tmp_path, generators.two_triangles())
        assert main(["--out", str(out), "--format", "dot", "decompose", host]) == EXIT_OK
        report = _report(out)
        assert report["bags"] == "3"
        assert report["verify.tutte"] == "true"
        assert (out / "decomposition.dot").read_text().startswith("graph tutte {")

    def test_separate_k16(self, tmp_path):
        host = tmp_path / "k16.txt"
        assert main(["gen", "complete", "16", "-o", str(host)]) == EXIT_OK
        out = tmp_path / "out"
        assert main(["--out", str(out), "separate", str(host), "--pattern", "k2"]) == EXIT_OK
        report = _report(out)
        assert report["fallback_torsos"] == "0"
        assert report["ell"] == "1"
        assert report["verify.strong"] == "true"
        assert report["verify.subdivisions"] == "true"
        assert any((out / "certs").iterdir())

    def test_cycles_is_deterministic(self, tmp_path):
        host = _host(tmp_path, generators.petersen())
        for name in ("a", "b"):
            assert main(["--out", str(tmp_path / name), "cycles", host]) == EXIT_OK
        first, second = _report(tmp_path / "a"), _report(tmp_path / "b")
        first.pop("wall_time")
        second.pop("wall_time")
        assert first == second
        assert (tmp_path / "a" / "family.txt").read_text() == (tmp_path / "b" / "family.txt").read_text()

    def test_blowup_sep(self, tmp_path):
        out = tmp_path / "out"
        assert main(["--out", str(out), "blowup-sep", "--blowup", "k3:2"]) == EXIT_OK
        report = _report(out)
        assert report["copies"] == "8"
        assert report["fallback"] == "false"
        assert report["verify.h_separation"] == "true"
        assert len((out / "copies.txt").read_text().splitlines()) == 8

        again = tmp_path / "again"
        args = ["--out", str(again), "verify", str(out / "host.txt"), str(out / "family.txt"), "--pattern", "k3"]
        assert main(args) == EXIT_OK


class TestDeterminism:
    @pytest.mark.parametrize("command", [
        ["separate", "HOST", "--pattern", "k2"],
        ["bipartite", "knn", "16"],
        ["blowup-sep", "--blowup", "p3:2"],
        ["blowup-sep", "--blowup", "k3:3"],
    ])
    def test_artifacts_are_byte_identical(self, tmp_path, command):
        host = _host(tmp_path, generators.complete(16))
        runs = []
        for name in ("a", "b"):
            out = tmp_path / name
            args = ["--seed", "7", "--out", str(out)] + [host if a == "HOST" else a for a in command]
            assert main(args) == EXIT_OK
            files = sorted(p for p in out.rglob("*") if p.is_file() and p.name != "report.txt")
            runs.append({p.relative_to(out): p.read_bytes() for p in files})
        assert Path("family.txt") in runs[0]
        assert runs[0] == runs[1]


class TestVerify:
    def _knn_files(self, tmp_path: Path, drop: int | None = None):
        fam = build_knn_system(8)
        if drop is not None:
            fam = fam.without(drop)
        host = _host(tmp_path, fam.host)
        family = tmp_path / "family.txt"
        write_family(fam, family)
        return host, str(family)

    def test_intact_family_passes(self, tmp_path):
        host, family = self._knn_files(tmp_path)
        assert main(["--out", str(tmp_path / "out"), "verify", host, family]) == EXIT_OK
        assert _report(tmp_path / "out")["pairs_checked"] == str(64 * 63)

    def test_missing_member_fails(self, tmp_path):
        host, family = self._knn_files(tmp_path, drop=5)
        assert main(["--out", str(tmp_path / "out"), "verify", host, family]) == EXIT_VERIFY_FAILED
        report = _report(tmp_path / "out")
        assert report["verify.strong"] == "false"
        assert "failing_pair" in report

    def test_ground_file(self, tmp_path):
        host, family = self._knn_files(tmp_path, drop=5)
        ground = tmp_path / "ground.txt"
        ground.write_text("# one edge\n0\n")
        args = ["--out", str(tmp_path / "out"), "verify", host, family, "--ground", str(ground)]
        assert main(args) == EXIT_OK


class TestErrors:
    def test_usage_error_exits_with_one(self):
        with pytest.raises(SystemExit) as err:
            main(["bipartite"])
        assert err.value.code == EXIT_ERROR
        with pytest.raises(SystemExit) as err:
            main(["separate", "g.txt"])
        assert err.value.code == EXIT_ERROR

    def test_malformed_host(self, tmp_path):
        host = tmp_path / "bad.txt"
        host.write_text("3 2\n0 1\n1 x\n")
        assert main(["--out", str(tmp_path / "out"), "cycles", str(host)]) == EXIT_ERROR

    def test_missing_file(self, tmp_path):
        assert main(["--out", str(tmp_path / "out"), "decompose", str(tmp_path / "nope.txt")]) == EXIT_ERROR

    def test_family_for_another_host(self, tmp_path):
        _, family = self._files(tmp_path)
        other = _host(tmp_path, generators.complete(4), "other.txt")
        assert main(["--out", str(tmp_path / "out"), "verify", other, family]) == EXIT_ERROR

    @staticmethod
    def _files(tmp_path: Path):
        fam = build_knn_system(2)
        family = tmp_path / "family.txt"
        write_family(fam, family)
        return fam, str(family)
