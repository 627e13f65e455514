"""Command-line front door: compute, rank, delta, trend, correlate, chisq,
whatif, report.

Exit codes: 0 success, 1 domain or ingestion error (message on stderr),
2 usage error (argparse).  All numbers print with 6 decimals and a '.'
separator; identical inputs and flags give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import data as bundled
from .engine import MissingPolicy, compute_all
from .errors import GciError, IoError
from .ingest import (
    WEF_DEFAULT,
    DatasetManifest,
    emit_report,
    load_score_table,
    render_report,
)
from .model import IndexTree, Panel, ScoreTable
from .ranking import (
    format_delta,
    rank_delta,
    rank_scores,
    rank_table_from_indicator,
)
from .stats import Decision, ols_fit, pearson, rank_homogeneity_test
from .svg import bar_chart, line_chart
from .whatif import Scenario, apply_scenario, min_delta_for_rank_gain

_DECISION_TEXT = {
    Decision.REJECT: "reject the null hypothesis",
    Decision.DO_NOT_REJECT: "do not reject the null hypothesis",
}


def _fmt6(value: float) -> str:
    value = float(value)
    if value == 0.0:
        value = 0.0
    return f"{value:.6f}"


def _add_dataset_flags(parser: argparse.ArgumentParser, classes_too: bool = True):
    parser.add_argument("--data", required=True, help="panel CSV (year,country,indicator,value)")
    if classes_too:
        parser.add_argument("--classes", help="class map CSV (country,class); default: all noncore")
    parser.add_argument(
        "--tree",
        default=WEF_DEFAULT,
        help=f"tree config JSON or the literal {WEF_DEFAULT!r} (default)",
    )
    parser.add_argument(
        "--policy",
        choices=["strict", "renormalize"],
        default="strict",
        help="missing-data policy (default strict)",
    )


def _load(args) -> tuple:
    manifest = DatasetManifest(
        panel=args.data,
        classes=getattr(args, "classes", None),
        tree=args.tree,
        policy=args.policy,
    )
    return manifest.load()


def _deliver(args, results, node: Optional[str] = None) -> None:
    """Send a result to --out via emit_report, or stdout in --format."""
    fmt = getattr(args, "format", "csv")
    out = getattr(args, "out", None)
    if out:
        emit_report(results, fmt, out, node=node)
    else:
        sys.stdout.write(render_report(results, fmt, node=node))


def _series_for(panel: Panel, tree: IndexTree, policy: MissingPolicy,
                country: str, node: str, first: Optional[int], last: Optional[int]):
    """(year, node score) points for one country across the panel's years."""
    points = []
    for year in panel.years():
        if first is not None and year < first:
            continue
        if last is not None and year > last:
            continue
        if country not in panel.countries(year):
            continue
        table = compute_all(tree, panel, year, policy)
        score = table.get(country, node)
        if score is not None:
            points.append((year, score))
    return points


def _rank_tables(args, panel: Panel, tree: IndexTree, policy: MissingPolicy):
    """Previous/current rank tables from computed scores or ingested ranks."""
    if args.rank_indicator:
        prev = rank_table_from_indicator(panel, args.prev_year, args.rank_indicator)
        cur = rank_table_from_indicator(panel, args.cur_year, args.rank_indicator)
    else:
        prev = rank_scores(compute_all(tree, panel, args.prev_year, policy), args.node)
        cur = rank_scores(compute_all(tree, panel, args.cur_year, policy), args.node)
    return prev, cur


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_compute(args) -> int:
    panel, tree, policy = _load(args)
    table = compute_all(tree, panel, args.year, policy)
    _deliver(args, table)
    return 0


def _cmd_rank(args) -> int:
    if args.scores:
        table = load_score_table(args.scores)
    else:
        if not args.data:
            raise GciError("rank needs either --scores or --data with --year")
        if args.year is None:
            raise GciError("rank from --data needs --year")
        panel, tree, policy = _load(args)
        table = compute_all(tree, panel, args.year, policy)
    _deliver(args, rank_scores(table, args.node))
    return 0


def _cmd_delta(args) -> int:
    panel, tree, policy = _load(args)
    prev, cur = _rank_tables(args, panel, tree, policy)
    _deliver(args, rank_delta(prev, cur))
    return 0


def _cmd_trend(args) -> int:
    panel, tree, policy = _load(args)
    points = _series_for(panel, tree, policy, args.country, args.node,
                         args.from_year, args.to_year)
    result = ols_fit(points)
    sys.stdout.write(
        f"country {args.country}\nnode {args.node}\n"
        f"years {points[0][0]}-{points[-1][0]}\n"
        f"slope {_fmt6(result.slope)}\nintercept {_fmt6(result.intercept)}\nn {result.n}\n"
    )
    if args.out:
        emit_report(result, args.format, args.out)
    return 0


def _cmd_correlate(args) -> int:
    panel, tree, policy = _load(args)
    node_a, node_b = args.nodes
    series_a = dict(_series_for(panel, tree, policy, args.country, node_a,
                                args.from_year, args.to_year))
    series_b = dict(_series_for(panel, tree, policy, args.country, node_b,
                                args.from_year, args.to_year))
    years = sorted(set(series_a) & set(series_b))
    result = pearson([series_a[y] for y in years], [series_b[y] for y in years])
    sys.stdout.write(
        f"country {args.country}\nnodes {node_a},{node_b}\n"
        f"years {years[0]}-{years[-1]}\nr {_fmt6(result.r)}\nn {result.n}\n"
    )
    if args.out:
        emit_report(result, args.format, args.out)
    return 0


def _cmd_chisq(args) -> int:
    panel, tree, policy = _load(args)
    prev, cur = _rank_tables(args, panel, tree, policy)
    result = rank_homogeneity_test(prev, cur, alpha=args.alpha, design=args.design)
    sys.stdout.write(
        f"statistic {_fmt6(result.statistic)}\ndf {result.df}\n"
        f"p-value {_fmt6(result.p_value)}\ncritical-value {_fmt6(result.critical_value)}\n"
        f"alpha {_fmt6(result.alpha)}\ndecision {_DECISION_TEXT[result.decision]}\n"
    )
    if args.out:
        emit_report(result, args.format, args.out)
    return 0


def _cmd_whatif(args) -> int:
    panel, tree, policy = _load(args)
    scores = compute_all(tree, panel, args.year, policy)
    classes = panel.classes
    if args.set is not None:
        outcome = apply_scenario(tree, scores, classes,
                                 Scenario(args.country, args.node, args.set))
    else:
        delta = min_delta_for_rank_gain(tree, scores, classes,
                                        args.country, args.gain, args.node)
        if delta is None:
            sys.stdout.write("min-delta infeasible\n")
            return 0
        sys.stdout.write(f"min-delta {_fmt6(delta)}\n")
        current = scores.score(args.country, args.node)
        outcome = apply_scenario(tree, scores, classes,
                                 Scenario(args.country, args.node, current + delta))
    sys.stdout.write(
        f"country {outcome.country}\nnode {outcome.node}\n"
        f"override {_fmt6(outcome.override)}\n"
        f"baseline-gci {_fmt6(outcome.baseline_gci)}\nnew-gci {_fmt6(outcome.new_gci)}\n"
        f"baseline-rank {outcome.baseline_rank}\nnew-rank {outcome.new_rank}\n"
        f"delta-rank {format_delta(outcome.delta_rank)}\n"
    )
    if args.out:
        emit_report(outcome, args.format, args.out)
    return 0


def _score_rows_text(rows, fmt: str) -> str:
    if fmt == "json":
        doc = [{"year": y, "country": c, "node": n, "score": float(_fmt6(s))}
               for y, c, n, s in rows]
        return json.dumps({"scores": doc}, indent=2, sort_keys=True) + "\n"
    body = [f"{y},{c},{n},{_fmt6(s)}" for y, c, n, s in rows]
    return "year,country,node,score\n" + "\n".join(body) + "\n"


def _cmd_report(args) -> int:
    panel, tree, policy = _load(args)
    if args.kind == "scores":
        years = [y for y in panel.years()
                 if (args.from_year is None or y >= args.from_year)
                 and (args.to_year is None or y <= args.to_year)]
        tables = {y: compute_all(tree, panel, y, policy) for y in years}
        if args.format == "svg":
            series = {}
            for country in panel.countries():
                pts = [(float(y), tables[y].score(country, args.node))
                       for y in years if tables[y].get(country, args.node) is not None]
                if pts:
                    series[country] = pts
            text = line_chart(series, f"{args.node} scores by year")
        else:
            rows = [(y, c, args.node, tables[y].score(c, args.node))
                    for y in years for c in tables[y].countries()
                    if tables[y].get(c, args.node) is not None]
            if not rows:
                raise GciError(f"node {args.node!r} has no scores in the panel's years")
            text = _score_rows_text(rows, args.format)
    elif args.kind == "deltas":
        if args.prev_year is None or args.cur_year is None:
            raise GciError("report --kind deltas needs --prev-year and --cur-year")
        prev, cur = _rank_tables(args, panel, tree, policy)
        text = render_report(rank_delta(prev, cur), args.format)
    elif args.kind == "trend":
        if not args.country:
            raise GciError("report --kind trend needs --country")
        series = {}
        fits = {}
        for node in args.nodes:
            pts = _series_for(panel, tree, policy, args.country, node,
                              args.from_year, args.to_year)
            series[node] = [(float(y), v) for y, v in pts]
            fits[node] = ols_fit(pts)
        if args.format == "svg":
            charted = dict(series)
            for node, fit in fits.items():
                xs = [x for x, _ in series[node]]
                charted[f"{node}_fit"] = [(x, fit.predict(x)) for x in (min(xs), max(xs))]
            text = line_chart(charted, f"{args.country}: {', '.join(args.nodes)}")
        elif args.format == "json":
            doc = {
                "country": args.country,
                "series": {n: [[int(x), float(_fmt6(v))] for x, v in series[n]]
                           for n in args.nodes},
                "fits": {n: {"slope": float(_fmt6(fits[n].slope)),
                             "intercept": float(_fmt6(fits[n].intercept)),
                             "n": fits[n].n} for n in args.nodes},
            }
            text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
        else:
            lines = ["year,node,score,fitted"]
            for node in args.nodes:
                for x, v in series[node]:
                    lines.append(f"{int(x)},{node},{_fmt6(v)},{_fmt6(fits[node].predict(x))}")
            text = "\n".join(lines) + "\n"
    else:  # bars
        if args.year is None:
            raise GciError("report --kind bars needs --year")
        table = compute_all(tree, panel, args.year, policy)
        items = [(c, table.score(c, args.node)) for c in table.countries()
                 if table.get(c, args.node) is not None]
        if not items:
            raise GciError(f"node {args.node!r} has no scores for {args.year}")
        if args.format == "svg":
            text = bar_chart(items, f"{args.node} scores, {args.year}", baseline=1.0)
        else:
            rows = [(args.year, c, args.node, v) for c, v in items]
            text = _score_rows_text(rows, args.format)
    try:
        Path(args.out).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoError(f"cannot write {args.out}: {exc}") from exc
    return 0


def _cmd_fixture(args) -> int:
    names = {
        "panel": bundled.BALKANS_PANEL,
        "classes": bundled.BALKANS_CLASSES,
        "tree": bundled.BALKANS_TREE,
        "wef-tree": bundled.WEF_TREE_CONFIG,
    }
    sys.stdout.write(str(bundled.fixture_path(names[args.name])) + "\n")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gcindex",
        description="Growth-competitiveness composite index toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="score every tree node for one year")
    _add_dataset_flags(p)
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--out", help="write here instead of stdout")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("rank", help="rank countries on one node")
    p.add_argument("--scores", help="score CSV from a previous compute run")
    p.add_argument("--data", help="panel CSV (when not using --scores)")
    p.add_argument("--classes")
    p.add_argument("--tree", default=WEF_DEFAULT)
    p.add_argument("--policy", choices=["strict", "renormalize"], default="strict")
    p.add_argument("--year", type=int)
    p.add_argument("--node", default="GCI")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("delta", help="rank movement between two years")
    _add_dataset_flags(p)
    p.add_argument("--prev-year", type=int, required=True)
    p.add_argument("--cur-year", type=int, required=True)
    p.add_argument("--node", default="GCI", help="rank computed scores on this node")
    p.add_argument("--rank-indicator",
                   help="take standings from this panel indicator instead of scores")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json", "svg"], default="csv")
    p.set_defaults(func=_cmd_delta)

    p = sub.add_parser("trend", help="least-squares trend of one node for one country")
    _add_dataset_flags(p)
    p.add_argument("--country", required=True)
    p.add_argument("--node", default="GCI")
    p.add_argument("--from", dest="from_year", type=int)
    p.add_argument("--to", dest="to_year", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_trend)

    p = sub.add_parser("correlate", help="Pearson correlation between two node series")
    _add_dataset_flags(p)
    p.add_argument("--country", required=True)
    p.add_argument("--nodes", nargs=2, default=["TI", "GCI"], metavar=("NODE_A", "NODE_B"))
    p.add_argument("--from", dest="from_year", type=int)
    p.add_argument("--to", dest="to_year", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("chisq", help="chi-square test of ranking stability")
    _add_dataset_flags(p)
    p.add_argument("--prev-year", type=int, required=True)
    p.add_argument("--cur-year", type=int, required=True)
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--node", default="GCI")
    p.add_argument("--rank-indicator")
    p.add_argument("--design", choices=["prev-expected", "cur-expected", "two-way"],
                   default="prev-expected")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_chisq)

    p = sub.add_parser("whatif", help="override a node score or solve for a rank gain")
    _add_dataset_flags(p)
    p.add_argument("--year", type=int, required=True)
    p.add_argument("--country", required=True)
    p.add_argument("--node", default="GCI")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--set", type=float, help="override the node score to this value")
    group.add_argument("--gain", type=int, help="solve for the smallest gain of this many ranks")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=_cmd_whatif)

    p = sub.add_parser("report", help="figure-style artifacts (score panels, deltas, trends, bars)")
    _add_dataset_flags(p)
    p.add_argument("--kind", choices=["scores", "deltas", "trend", "bars"], required=True)
    p.add_argument("--node", default="GCI")
    p.add_argument("--nodes", nargs="+", default=["TI", "GCI"])
    p.add_argument("--country")
    p.add_argument("--year", type=int)
    p.add_argument("--prev-year", type=int)
    p.add_argument("--cur-year", type=int)
    p.add_argument("--rank-indicator")
    p.add_argument("--from", dest="from_year", type=int)
    p.add_argument("--to", dest="to_year", type=int)
    p.add_argument("--format", choices=["csv", "json", "svg"], default="svg")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("fixture", help="print the path of a bundled data file")
    p.add_argument("name", choices=["panel", "classes", "tree", "wef-tree"])
    p.set_defaults(func=_cmd_fixture)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GciError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:  # console_scripts target
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
