"""Command-line front end.

Exit status: 0 claim certified / witness found as requested, 1 refuted,
2 timeout, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import platform
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import compare_table
from .certify import verify_gr_point
from .checks import find_mono_cycle, find_rainbow_triangle
from .constructions import lower_bound_coloring, verify_lower_bound
from .graph import read_graph, write_graph
from .harness import lemma12_harness, lemma13_harness, lemma15_harness
from .partition import NotGallaiError, decomposition_tree, find_gallai_partition
from .search import SearchConfig, Status, default_workers, search_coloring, search_via_gallai_tree

EXIT_OK, EXIT_REFUTED, EXIT_TIMEOUT, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _range(text: str) -> range:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}") from None
    return range(lo, hi + 1)


def _emit(args, record: dict, text: str) -> None:
    if args.json:
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_construct(args):
    g = lower_bound_coloring(args.n, args.k)
    write_graph(g, args.out)
    verdict = verify_lower_bound(args.n, args.k)
    rec = {"out": str(args.out), "order": g.order, "k": g.k, "verdict": verdict.to_record()}
    text = f"wrote K_{g.order} ({g.k} colors) to {args.out}; " + (
        f"certified: no rainbow triangle, no monochromatic C{2 * args.n + 1}"
        if verdict.certified else "NOT certified: " + "; ".join(verdict.failures)
    )
    _emit(args, rec, text)
    return EXIT_OK if verdict.certified else EXIT_REFUTED


def cmd_check(args):
    g = read_graph(args.input)
    tri = find_rainbow_triangle(g)
    rec = {"order": g.order, "k": g.k, "rainbowTriangle": tri.to_record() if tri else None}
    lines = [f"rainbow triangle: {tri.vertices} colors {tri.colors}" if tri else "no rainbow triangle"]
    cyc = None
    if args.cycle_length is not None:
        L = args.cycle_length
        if L < 3:
            raise UsageError("--cycle-length must be >= 3")
        if L <= g.order:
            for c in range(1, g.k + 1):
                cyc = find_mono_cycle(g, c, L)
                if cyc:
                    break
        rec["monoCycle"] = cyc.to_record() if cyc else None
        lines.append(f"monochromatic C{L} in color {cyc.color}: {cyc.vertices}" if cyc else f"no monochromatic C{L}")
    _emit(args, rec, "; ".join(lines))
    return EXIT_REFUTED if tri or cyc else EXIT_OK


def cmd_partition(args):
    g = read_graph(args.input)
    try:
        if args.tree:
            tree = decomposition_tree(g)
            rec = tree.to_record()
            text = f"decomposition tree: {tree.node_count()} nodes, depth {tree.depth()}\n" + json.dumps(rec)
        else:
            P = find_gallai_partition(g)
            rec = P.to_record()
            text = "\n".join(
                [f"Gallai partition with {P.p} parts, reduced colors {sorted(set(P.reduced_colors))}"]
                + [f"  V{i + 1}: {list(part)}" for i, part in enumerate(P.parts)]
            )
    except NotGallaiError as exc:
        _emit(args, {"error": "NotGallai", "certificate": exc.certificate.to_record()}, f"not a Gallai coloring: {exc}")
        return EXIT_REFUTED
    _emit(args, rec, text)
    return EXIT_OK


def cmd_search(args):
    workers = args.workers if args.workers is not None else default_workers()
    cfg = SearchConfig(
        args.order, args.colors, args.cycle_length, args.gallai, args.budget, args.prune, workers
    )
    if args.method == "gallai-tree":
        if not args.gallai:
            raise UsageError("--method gallai-tree needs --gallai")
        outcome = search_via_gallai_tree(cfg)
    else:
        outcome = search_coloring(cfg)
    rec = outcome.to_record()
    if args.certificate:
        Path(args.certificate).write_text(json.dumps(rec, indent=2, sort_keys=True) + "\n")
    text = f"{outcome.status.value}: {outcome.claim} ({outcome.stats.nodes} nodes, {outcome.stats.elapsed:.2f}s)"
    if outcome.witness is not None:
        text += "\n" + outcome.witness.to_text().rstrip()
    _emit(args, rec, text)
    if outcome.status is Status.TIMEOUT:
        return EXIT_TIMEOUT
    if args.expect and args.expect != outcome.status.value.lower():
        return EXIT_REFUTED
    return EXIT_OK


def cmd_bounds(args):
    report = compare_table(args.n_range, args.k_range)
    if args.csv:
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_verify_gr(args):
    report = verify_gr_point(args.n, args.k, args.budget)
    rec = report.to_record()
    L = 2 * args.n + 1
    text = (
        f"GR_{args.k}(C{L}): lower {report.lower_status} (order {report.lower_order} coloring), "
        f"upper {report.upper_status} at order {report.upper_order}; "
        f"formula n*2^k+1 = {report.lower_order + 1}"
    )
    _emit(args, rec, text)
    if report.lower_status != "certified" or report.upper_status == "refuted":
        return EXIT_REFUTED
    return EXIT_OK if report.upper_status == "certified" else EXIT_TIMEOUT


def cmd_harness(args):
    if args.lemma == "lemma12":
        if args.n is None or args.t is None:
            raise UsageError("lemma12 needs --n and --t")
        report = lemma12_harness(args.n, args.t, args.trials, args.seed, args.k)
    elif args.lemma == "lemma15":
        if args.n is None:
            raise UsageError("lemma15 needs --n")
        report = lemma15_harness(args.n, args.trials, args.seed, args.k)
    else:
        report = lemma13_harness(args.trials, args.seed)
    rec = report.to_record()
    _emit(args, rec, f"{report.name}: {report.passed}/{report.trials} trials passed")
    return EXIT_OK if report.ok else EXIT_REFUTED


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gallai-ramsey", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--manifest", type=Path, help="write the run manifest here (default: stderr)")
    p.add_argument("--json", action="store_true", help="print a structured record instead of text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("construct", help="write the n*2^k lower-bound coloring")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--out", type=Path, required=True)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("check", help="scan a coloring for rainbow triangles and monochromatic cycles")
    s.add_argument("--in", dest="input", type=Path, required=True)
    s.add_argument("--cycle-length", type=int)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("partition", help="Gallai partition or full decomposition tree")
    s.add_argument("--in", dest="input", type=Path, required=True)
    s.add_argument("--tree", action="store_true")
    s.set_defaults(func=cmd_partition)

    s = sub.add_parser("search", help="exhaustive search for a bad coloring")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--colors", type=int, required=True)
    s.add_argument("--cycle-length", type=int, required=True)
    s.add_argument("--gallai", action="store_true", help="also forbid rainbow triangles")
    s.add_argument("--budget", type=float, default=600.0, help="wall-clock seconds")
    s.add_argument("--prune", choices=("basic", "canonical"), default="canonical")
    s.add_argument("--method", choices=("coloring", "gallai-tree"), default="coloring")
    s.add_argument("--workers", type=int, help="default from $GALLAI_RAMSEY_WORKERS or 1")
    s.add_argument("--expect", choices=("exhausted", "witness"), help="exit 1 if the outcome differs")
    s.add_argument("--certificate", type=Path, help="write the outcome record to this file")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("bounds", help="table of bound formulas")
    s.add_argument("--n-range", type=_range, required=True, metavar="LO:HI")
    s.add_argument("--k-range", type=_range, required=True, metavar="LO:HI")
    s.add_argument("--csv", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("verify-gr", help="certify GR_k(C_2n+1) = n*2^k+1 within a budget")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--budget", type=float, default=60.0)
    s.set_defaults(func=cmd_verify_gr)

    s = sub.add_parser("harness", help="randomized lemma harnesses")
    s.add_argument("lemma", choices=("lemma12", "lemma13", "lemma15"))
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int)
    s.add_argument("--t", type=int)
    s.add_argument("--k", type=int, default=3)
    s.set_defaults(func=cmd_harness)
    return p


def _write_manifest(args, argv, status, started, elapsed):
    config = {k: (str(v) if isinstance(v, Path) else v) for k, v in vars(args).items()
              if k not in ("func", "manifest") and not isinstance(v, range)}
    for key in ("n_range", "k_range"):
        if isinstance(getattr(args, key, None), range):
            r = getattr(args, key)
            config[key] = [r.start, r.stop - 1]
    manifest = {
        "tool": "gallai-ramsey",
        "version": __version__,
        "python": platform.python_version(),
        "argv": list(argv),
        "config": config,
        "exitStatus": status,
        "startedAt": time.strftime("%Y-%m-%dT%H:%M:%S%z", time.localtime(started)),
        "wallSeconds": round(elapsed, 3),
    }
    text = json.dumps(manifest, sort_keys=True)
    if args.manifest:
        Path(args.manifest).write_text(text + "\n")
    else:
        print(f"manifest: {text}", file=sys.stderr)


def run(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    started = time.time()
    t0 = time.monotonic()
    try:
        status = args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"gallai-ramsey {args.command}: error: {exc}", file=sys.stderr)
        status = EXIT_USAGE
    _write_manifest(args, argv, status, started, time.monotonic() - t0)
    return status


def main() -> None:
    sys.exit(run())
