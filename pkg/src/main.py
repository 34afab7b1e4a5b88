import argparse
import logging
import sys
import time
from math import ceil, log2
from pathlib import Path as FilePath
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from src.bipartite import (
    build_biclique_separating_system,
    build_knn_system,
    extract_biclique_cover,
    tile_biclique,
)
from src.blowup import build_blowup, build_blowup_h_separator, check_h_separation, enumerate_h_copies, format_copies
from src.config import settings
from src.errors import FormatError, SepSysError
from src.graphs import generators
from src.graphs.core import Graph
from src.graphs.edgelist import content_lines, format_edge_list, parse_edge_list, read_edge_list, write_edge_list
from src.pipeline import separate_graph
from src.schemas import PipelineConfig, RunReport
from src.separation import (
    SeparatingFamily,
    build_sub_k3_system,
    check_strong_separation,
    read_family,
    write_family,
)
from src.subdivision import verify_subdivision
from src.tutte import build_tutte, format_decomposition, parse_decomposition, to_dot, verify_tutte
from src.utils.logging import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VERIFY_FAILED = 2


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with 1; 2 is reserved for failed verification."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


# Input helpers


def _read_graph(source: str) -> Graph:
    if source == "-":
        return parse_edge_list(sys.stdin.read())
    return read_edge_list(source)


def _pattern(name: str) -> Graph:
    """A pattern name (k3, c4, p3) or an edge-list file."""
    if FilePath(name).is_file():
        return read_edge_list(name)
    return generators.pattern_from_name(name)


def _read_ground(path: str, host: Graph) -> List[int]:
    ground = []
    for number, line in content_lines(FilePath(path).read_text()):
        for token in line.split():
            try:
                eid = int(token)
            except ValueError:
                raise FormatError(f"expected edge ids, got {token!r}", number) from None
            if not 0 <= eid < host.m:
                raise FormatError(f"host has no edge {eid}", number)
            ground.append(eid)
    return ground


def _artifact_dir(args: argparse.Namespace) -> FilePath:
    out = FilePath(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _save(out: FilePath, host: Graph, fam: SeparatingFamily, name: str = "family") -> FilePath:
    write_edge_list(host, out / "host.txt")
    family_path = out / f"{name}.txt"
    write_family(fam, family_path)
    return family_path


def _reload(out: FilePath, family_path: FilePath) -> SeparatingFamily:
    """Re-read host and family from disk so verdicts never trust a constructor."""
    host = read_edge_list(out / "host.txt")
    return read_family(family_path, host)


def _certs_valid(fam: SeparatingFamily, pattern: Graph) -> bool:
    for cert in fam.certs():
        if cert.pattern != pattern:
            logger.error(f"certificate pattern {cert.pattern!r} differs from {pattern!r}")
            return False
        verdict = verify_subdivision(fam.host, cert)
        if not verdict:
            logger.error(f"invalid subdivision certificate: {verdict.clause}: {verdict.detail}")
            return False
    return True


def _strong(fam: SeparatingFamily, ground: Optional[Sequence[int]] = None) -> bool:
    verdict = check_strong_separation(fam.host.edge_ids() if ground is None else ground, fam)
    if not verdict:
        logger.error(f"strong separation fails: {verdict.detail}")
    return verdict.passed


def _family_values(fam: SeparatingFamily) -> Dict[str, object]:
    host = fam.host
    return {"n": host.n, "m": host.m, "family_size": len(fam),
            "size_per_n": len(fam) / host.n if host.n else 0.0}


# Subcommands


def cmd_gen(args: argparse.Namespace) -> RunReport:
    kind, params = args.kind, args.params

    def ints(count: int) -> List[int]:
        if len(params) != count:
            raise SepSysError(f"gen {kind} takes {count} parameter(s), got {len(params)}")
        return [int(p) for p in params]

    if kind == "complete":
        g = generators.complete(*ints(1))
    elif kind == "cycle":
        g = generators.cycle(*ints(1))
    elif kind == "path":
        g = generators.path(*ints(1))
    elif kind == "random":
        if len(params) != 2:
            raise SepSysError("gen random takes N and P")
        g = generators.random_gnp(int(params[0]), float(params[1]), seed=args.seed)
    elif kind == "tree":
        g = generators.random_tree(*ints(1), seed=args.seed)
    elif kind == "biclique":
        g = generators.complete_bipartite(*ints(2))
    elif kind == "grid":
        g = generators.grid(*ints(2))
    elif kind == "blowup":
        if len(params) != 2:
            raise SepSysError("gen blowup takes a pattern and a class size")
        g = build_blowup(_pattern(params[0]), int(params[1])).host
    elif kind == "prism":
        g = generators.prism(*(ints(1) if params else [3]))
    elif kind == "petersen":
        ints(0)
        g = generators.petersen()
    else:
        raise SepSysError(f"unknown generator {kind!r}")

    text = format_edge_list(g, comment=f"gen {kind} {' '.join(params)} seed={args.seed}".strip())
    if args.output:
        FilePath(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return RunReport(command=f"gen {kind}", values={"n": g.n, "m": g.m})


def cmd_decompose(args: argparse.Namespace) -> RunReport:
    g = _read_graph(args.graph)
    d = build_tutte(g)
    out = _artifact_dir(args)
    write_edge_list(g, out / "host.txt")
    dump = out / "decomposition.txt"
    dump.write_text(format_decomposition(d))
    if args.format == "dot":
        (out / "decomposition.dot").write_text(to_dot(d))

    reloaded = parse_decomposition(dump.read_text(), read_edge_list(out / "host.txt"))
    verdict = verify_tutte(g, reloaded)
    if not verdict:
        logger.error(f"Tutte decomposition invalid: {verdict.clause}: {verdict.detail}")
    k, sizes = d.accounting()
    kinds = [kind.value for kind in d.kinds]
    return RunReport(
        command="decompose",
        values={"n": g.n, "m": g.m, "bags": len(d), "components": k, "component_vertices": sizes,
                "within_3n": sizes <= 3 * g.n, "three_connected": kinds.count("three_connected"),
                "cycles": kinds.count("cycle"), "single_real_edge": kinds.count("single_real_edge")},
        verdicts={"tutte": verdict.passed},
    )


def cmd_separate(args: argparse.Namespace) -> RunReport:
    g = _read_graph(args.graph)
    h = _pattern(args.pattern)
    cfg = PipelineConfig(c_balance=args.c_balance, budget=args.budget)
    fam = separate_graph(g, h, cfg)
    out = _artifact_dir(args)
    reloaded = _reload(out, _save(out, g, fam))

    torso_metrics = fam.metadata["torso_metrics"]
    cycle_total = sum(m.cycle_system_total for m in torso_metrics)
    values = _family_values(fam)
    values.update({
        "pattern": f"{h.n}:{h.m}",
        "components": fam.metadata["components"],
        "component_vertices": fam.metadata["component_vertices"],
        "within_3n": fam.metadata["within_3n"],
        "fallback_torsos": sum(1 for m in torso_metrics if m.fallback),
        "cycle_system_total": cycle_total,
        "six_bound": 6 * cycle_total,
        "ell": ",".join(str(m.ell) for m in torso_metrics if m.ell is not None) or "none",
    })
    return RunReport(command="separate", values=values,
                     verdicts={"strong": _strong(reloaded), "subdivisions": _certs_valid(reloaded, h)})


def cmd_cycles(args: argparse.Namespace) -> RunReport:
    g = _read_graph(args.graph)
    fam = build_sub_k3_system(g, g.edge_ids())
    out = _artifact_dir(args)
    reloaded = _reload(out, _save(out, g, fam))
    values = _family_values(fam)
    values.update({"cycles": fam.metadata.get("cycles", 0), "single_edges": fam.metadata.get("edges", 0)})
    return RunReport(command="cycles", values=values,
                     verdicts={"strong": _strong(reloaded),
                               "subdivisions": _certs_valid(reloaded, generators.complete(3))})


def cmd_bipartite(args: argparse.Namespace) -> RunReport:
    out = _artifact_dir(args)
    if args.mode == "knn":
        fam = build_knn_system(args.n)
        reloaded = _reload(out, _save(out, fam.host, fam))
        values = _family_values(fam)
        values["bound"] = 4 * ceil(log2(args.n)) if args.n > 1 else 0
        return RunReport(command="bipartite knn", values=values, verdicts={"strong": _strong(reloaded)})

    if args.mode == "tiling":
        placements = tile_biclique(args.n, args.t, args.s)
        host = generators.complete_bipartite(args.n, args.n)
        fam = SeparatingFamily(host, tuple(placements))
        reloaded = _reload(out, _save(out, host, fam, "tiling"))
        covered = bool(reloaded.membership.any(axis=0).all())
        return RunReport(command="bipartite tiling",
                         values={"n": args.n, "t": args.t, "s": args.s, "placements": len(placements),
                                 "n2_over_s": args.n * args.n / args.s},
                         verdicts={"coverage": covered})

    g = _read_graph(args.graph)
    if args.mode == "cover":
        bicliques, leftovers = extract_biclique_cover(g, args.s_min)
        fam = SeparatingFamily(g, tuple(bicliques) + tuple(leftovers))
        reloaded = _reload(out, _save(out, g, fam, "cover"))
        counts = reloaded.membership.sum(axis=0)
        return RunReport(command="bipartite cover",
                         values={"n": g.n, "m": g.m, "bicliques": len(bicliques), "leftovers": len(leftovers),
                                 "leftover_fraction": len(leftovers) / g.m if g.m else 0.0},
                         verdicts={"exact_cover": bool(np.all(counts == 1))})

    fam = build_biclique_separating_system(g, args.s_min)
    reloaded = _reload(out, _save(out, g, fam))
    values = _family_values(fam)
    values.update({"bicliques": fam.metadata["bicliques"], "leftovers": fam.metadata["leftovers"],
                   "within_m": len(fam) <= g.m})
    return RunReport(command="bipartite system", values=values, verdicts={"strong": _strong(reloaded)})


def cmd_blowup_sep(args: argparse.Namespace) -> RunReport:
    name, sep, size = args.blowup.rpartition(":")
    if not sep:
        raise SepSysError(f"--blowup expects H:l, got {args.blowup!r}")
    h = _pattern(name)
    fam = build_blowup_h_separator(h, int(size), seed=args.seed)
    out = _artifact_dir(args)
    reloaded = _reload(out, _save(out, fam.host, fam))
    copies = enumerate_h_copies(reloaded.host, h)
    (out / "copies.txt").write_text(format_copies(copies))
    verdict = check_h_separation(reloaded.host, h, reloaded, copies)
    if not verdict:
        logger.error(f"H-separation fails: {verdict.detail}")
    values = _family_values(fam)
    values.update({
        "copies": len(copies),
        "tier": fam.metadata["tier"],
        "fallback": fam.metadata["fallback"],
        "separates_transversal": fam.metadata["separates_transversal"],
        "log2_l": log2(int(size)),
    })
    return RunReport(command="blowup-sep", values=values, verdicts={"h_separation": verdict.passed})


def cmd_verify(args: argparse.Namespace) -> RunReport:
    host = read_edge_list(args.host)
    fam = read_family(args.family, host)
    values = _family_values(fam)
    if args.pattern:
        h = _pattern(args.pattern)
        copies = enumerate_h_copies(host, h)
        verdict = check_h_separation(host, h, fam, copies)
        values["copies"] = len(copies)
        name = "h_separation"
    else:
        ground = host.edge_ids() if args.ground == "all" else _read_ground(args.ground, host)
        verdict = check_strong_separation(ground, fam)
        values["pairs_checked"] = verdict.pairs_checked
        name = "strong"
    if not verdict:
        values["failing_pair"] = verdict.pair
        logger.error(f"verification failed: {verdict.detail}")
    return RunReport(command="verify", values=values, verdicts={name: verdict.passed})


# Entry point


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sepsys", description="Construct and verify strongly separating graph systems.")
    parser.add_argument("--seed", type=int, default=settings.seed)
    parser.add_argument("--budget", type=int, default=settings.search_budget,
                        help="search nodes for the balanced subdivision search")
    parser.add_argument("--c-balance", type=float, default=settings.c_balance)
    parser.add_argument("--out", default="out", help="directory for artifacts and the report")
    parser.add_argument("--format", choices=("text", "dot"), default="text")
    parser.add_argument("--log-level", default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate an instance as an edge list")
    gen.add_argument("kind", choices=("complete", "cycle", "path", "random", "tree", "biclique", "grid",
                                      "blowup", "prism", "petersen"))
    gen.add_argument("params", nargs="*")
    gen.add_argument("-o", "--output", help="write the edge list here instead of stdout")
    gen.set_defaults(handler=cmd_gen)

    decompose = sub.add_parser("decompose", help="Tutte decomposition dump and verification")
    decompose.add_argument("graph", nargs="?", default="-")
    decompose.set_defaults(handler=cmd_decompose)

    separate = sub.add_parser("separate", help="separating sub(H)-system")
    separate.add_argument("graph", nargs="?", default="-")
    separate.add_argument("--pattern", required=True, help="pattern name (k3, c4, p3) or edge-list file")
    separate.set_defaults(handler=cmd_separate)

    cycles = sub.add_parser("cycles", help="separating sub(K_3)-system")
    cycles.add_argument("graph", nargs="?", default="-")
    cycles.set_defaults(handler=cmd_cycles)

    bipartite = sub.add_parser("bipartite", help="biclique constructions")
    modes = bipartite.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    knn = modes.add_parser("knn")
    knn.add_argument("n", type=int)
    tiling = modes.add_parser("tiling")
    tiling.add_argument("n", type=int)
    tiling.add_argument("t", type=int)
    tiling.add_argument("s", type=int)
    for mode in ("cover", "system"):
        p = modes.add_parser(mode)
        p.add_argument("graph", nargs="?", default="-")
        p.add_argument("--s-min", type=int, default=2)
    bipartite.set_defaults(handler=cmd_bipartite)

    blowup = sub.add_parser("blowup-sep", help="H-separating system of a balanced blowup")
    blowup.add_argument("--blowup", required=True, help="H:l with H a pattern name or edge-list file")
    blowup.set_defaults(handler=cmd_blowup_sep)

    verify = sub.add_parser("verify", help="re-check a family file against its host")
    verify.add_argument("host")
    verify.add_argument("family")
    verify.add_argument("--ground", default="all", help="'all' or a file of edge ids")
    verify.add_argument("--pattern", help="check H-separation of the copies of this pattern instead")
    verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args.log_level)

    handler: Callable[[argparse.Namespace], RunReport] = args.handler
    started = time.perf_counter()
    try:
        report = handler(args)
    except (SepSysError, OSError, ValueError) as e:
        logger.error(f"{args.command} failed: {e}")
        return EXIT_ERROR
    report = report.model_copy(update={"wall_time": time.perf_counter() - started})

    if args.command == "gen":
        logger.info(" ".join(report.deterministic_lines()))
        return EXIT_OK
    rendered = report.render()
    sys.stdout.write(rendered)
    (_artifact_dir(args) / "report.txt").write_text(rendered)
    if not report.all_passed:
        return EXIT_VERIFY_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
