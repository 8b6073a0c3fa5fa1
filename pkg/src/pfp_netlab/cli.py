"""Command-line entry point: ``pfp-netlab generate|analyze|compare|kcore-svg``.

Exit codes: 0 success, 1 data or runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import formats
from .graph import Graph
from .kcore_viz import layout, render_svg
from .metrics import (
    REPORT_FIELDS,
    DistributionTable,
    MetricsReport,
    UndefinedMetricError,
    average_reports,
    coreness,
    degree_distribution,
    full_report,
    knn_by_degree,
    rich_club_by_degree,
    rich_club_by_rank,
    shortest_path_stats,
    triangle_summaries,
)
from .pfp import ParameterError, PfpParams, grow, make_rng

THREADS_ENV = "PFP_NETLAB_THREADS"

DIST_NAMES = (
    "degree_pdf", "degree_ccd", "knn", "richclub_degree", "richclub_rank",
    "triangle_ccd", "triangle_by_degree", "pathlen_ccd", "pathlen_by_degree",
)


class CommandError(Exception):
    """Data or runtime failure reported as a one-line diagnostic (exit 1)."""


def worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise CommandError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if n < 0:
        raise CommandError(f"{THREADS_ENV} must be >= 0")
    return n or (os.cpu_count() or 1)


def _read_graph(path: Path) -> Graph:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return formats.parse_peering_list(text)
    except formats.FormatError as exc:
        raise CommandError(f"{path}: {exc}") from None


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


# -- generate -------------------------------------------------------------------

def _generate_run(job: tuple[PfpParams, int]) -> tuple[str, MetricsReport]:
    params, run = job
    g = grow(params, make_rng(params.rng_seed, run))
    return formats.write_peering_list(g), full_report(g)


def cmd_generate(args: argparse.Namespace) -> int:
    params = PfpParams(target_n=args.nodes, rng_seed=args.seed, p=args.p,
                       delta=args.delta, seed_size=args.seed_size)
    jobs = [(params, i) for i in range(args.runs)]
    workers = min(worker_count(), args.runs)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_generate_run, jobs))
    else:
        results = [_generate_run(job) for job in jobs]
    out = Path(args.out_dir)
    for i, (asl, report) in enumerate(results):
        _write(out / f"run_{i}.asl", asl)
        _write(out / f"run_{i}.report", formats.write_report(report))
    try:
        ensemble = average_reports([r for _, r in results])
    except ValueError as exc:
        raise CommandError(f"cannot average run reports: {exc}") from None
    _write(out / "ensemble.report", formats.write_report(ensemble))
    return 0


# -- analyze --------------------------------------------------------------------

def distribution_tables(g: Graph) -> dict[str, DistributionTable]:
    """The nine per-figure data series, keyed by output file stem."""
    tables: dict[str, DistributionTable] = {}

    def put(names, compute, kinds):
        try:
            values = compute()
        except UndefinedMetricError:
            values = [DistributionTable((), kind) for kind in kinds]
        tables.update(zip(names, values))

    put(("degree_pdf", "degree_ccd"), lambda: degree_distribution(g), ("pdf", "ccd"))
    put(("knn",), lambda: [knn_by_degree(g)], ("by_degree",))
    put(("richclub_degree",), lambda: [rich_club_by_degree(g)], ("by_degree",))
    put(("richclub_rank",), lambda: [rich_club_by_rank(g)], ("by_rank",))
    put(("triangle_ccd", "triangle_by_degree"), lambda: triangle_summaries(g)[:2],
        ("ccd", "by_degree"))
    put(("pathlen_ccd", "pathlen_by_degree"), lambda: shortest_path_stats(g)[:2],
        ("ccd", "by_degree"))
    return {name: tables[name] for name in DIST_NAMES}


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _read_graph(Path(args.input))
    if len(g) == 0:
        raise CommandError(f"{args.input}: graph is empty")
    text = formats.write_report(full_report(g))
    if args.report:
        _write(Path(args.report), text)
    else:
        sys.stdout.write(text)
    if args.dists:
        for name, table in distribution_tables(g).items():
            _write(Path(args.dists) / f"{name}.csv", formats.write_distribution_csv(table))
    return 0


# -- compare --------------------------------------------------------------------

def _cell(report: MetricsReport, name: str) -> str:
    value = getattr(report, name)
    if value is None:
        return f"absent({report.reasons.get(name, 'unknown')})"
    if isinstance(value, int):
        return str(value)
    return f"{value:.1f}" if abs(value) >= 100 else f"{value:.3f}"


def format_table(labels: list[str], reports: list[MetricsReport]) -> str:
    rows = [["metric", *labels]]
    rows += [[name, *(_cell(r, name) for r in reports)] for name in REPORT_FIELDS]
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) if i == 0 else c.rjust(w)
                       for i, (c, w) in enumerate(zip(row, widths))).rstrip()
             for row in rows]
    return "\n".join(lines) + "\n"


def check_tolerances(reference: MetricsReport, candidate: MetricsReport,
                     tolerances: dict[str, formats.Tolerance]) -> list[str]:
    """Names of metrics where ``candidate`` strays from ``reference``."""
    failed = []
    for name, tol in tolerances.items():
        ref, got = getattr(reference, name), getattr(candidate, name)
        if ref is None or got is None:
            if (ref is None) != (got is None):
                failed.append(name)
        elif not tol.accepts(ref, got):
            failed.append(name)
    return failed


def cmd_compare(args: argparse.Namespace) -> int:
    reports = []
    for path in map(Path, args.reports):
        try:
            reports.append(formats.read_report(path.read_text(encoding="utf-8")))
        except OSError as exc:
            raise CommandError(f"cannot read {path}: {exc.strerror}") from None
        except formats.FormatError as exc:
            raise CommandError(f"{path}: {exc}") from None
    labels = args.labels.split(",") if args.labels else [Path(p).stem for p in args.reports]
    if len(labels) != len(reports):
        raise CommandError("--labels must name every report")
    sys.stdout.write(format_table(labels, reports))
    if not args.tolerances:
        return 0
    try:
        tolerances = formats.parse_tolerances(Path(args.tolerances).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CommandError(f"cannot read {args.tolerances}: {exc.strerror}") from None
    except formats.FormatError as exc:
        raise CommandError(f"{args.tolerances}: {exc}") from None
    ok = True
    for label, report in zip(labels[1:], reports[1:]):
        failed = check_tolerances(reports[0], report, tolerances)
        ok = ok and not failed
        status = "PASS" if not failed else "FAIL (" + ", ".join(failed) + ")"
        sys.stdout.write(f"{label} vs {labels[0]}: {status}\n")
    return 0 if ok else 1


# -- kcore-svg ------------------------------------------------------------------

def cmd_kcore_svg(args: argparse.Namespace) -> int:
    g = _read_graph(Path(args.input))
    if g.edge_count == 0:
        raise CommandError(f"{args.input}: graph has no links to draw")
    per_node, _ = coreness(g)
    scale = 0.45 * min(args.width, args.height)
    svg = render_svg(layout(g, per_node, ring_scale=scale), g, args.width, args.height)
    _write(Path(args.out), svg)
    return 0


# -- argument parsing -----------------------------------------------------------

def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pfp-netlab",
        description="Grow PFP networks and measure AS-graph topology statistics.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="grow an ensemble of PFP networks")
    gen.add_argument("--nodes", type=_positive_int, required=True)
    gen.add_argument("--p", type=float, default=0.4)
    gen.add_argument("--delta", type=float, default=0.048)
    gen.add_argument("--runs", type=_positive_int, default=10)
    gen.add_argument("--seed", type=_seed, required=True)
    gen.add_argument("--seed-size", type=int, default=5)
    gen.add_argument("--out-dir", default=".")
    gen.set_defaults(func=cmd_generate)

    ana = sub.add_parser("analyze", help="report the statistics of a peering list")
    ana.add_argument("input", help=".asl peering list")
    ana.add_argument("--report", help="write the report here instead of stdout")
    ana.add_argument("--dists", help="directory for the distribution CSVs")
    ana.set_defaults(func=cmd_analyze)

    cmp_ = sub.add_parser("compare", help="print reports side by side")
    cmp_.add_argument("reports", nargs="+")
    cmp_.add_argument("--labels", help="comma-separated column labels")
    cmp_.add_argument("--tolerances",
                      help="gate every report against the first; exit 1 on failure")
    cmp_.set_defaults(func=cmd_compare)

    svg = sub.add_parser("kcore-svg", help="draw the k-shell structure as SVG")
    svg.add_argument("input")
    svg.add_argument("--out", required=True)
    svg.add_argument("--width", type=_positive_int, default=1000)
    svg.add_argument("--height", type=_positive_int, default=1000)
    svg.set_defaults(func=cmd_kcore_svg)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "compare" and len(args.reports) < 2:
        parser.error("compare needs at least two reports")
    try:
        return args.func(args)
    except ParameterError as exc:
        parser.error(str(exc))
    except CommandError as exc:
        print(f"pfp-netlab: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
