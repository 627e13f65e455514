"""File input and report output.

Panels and class maps are CSV; index trees are JSON with rational-string
weights so the exact arithmetic survives a round trip.  Every parse failure
carries the file name and line number.  Report emission is deterministic:
stable ordering, 6-decimal numbers, '.' decimal separator, '\n' newlines.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple, Union

from . import svg
from .errors import (
    DuplicateKeyError,
    IoError,
    ParseError,
    SchemaError,
    UnsupportedFormatError,
)
from .model import (
    OBSERVED,
    IndexTree,
    InnovatorClass,
    Node,
    Normalization,
    Observation,
    Panel,
    RankTable,
    ScoreTable,
    default_wef_tree,
    validate_tree,
)
from .engine import MissingPolicy
from .ranking import RankDeltaReport, format_delta
from .stats import ChiSquareResult, CorrelationResult, Decision, TrendResult
from .whatif import WhatIfOutcome

WEF_DEFAULT = "wef-default"

PANEL_HEADER = "year,country,indicator,value"
SCORE_HEADER = "year,country,node,score"
RANK_HEADER = "year,country,rank"
CLASS_HEADER = "country,class"


def _fmt6(value: float) -> str:
    value = float(value)
    if value == 0.0:
        value = 0.0  # normalize -0.0
    return f"{value:.6f}"


def _read_lines(path: Union[str, Path]):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, stripped


def _split_row(path, lineno: int, line: str, n_fields: int, header: str):
    fields = [f.strip() for f in line.split(",")]
    if len(fields) != n_fields:
        raise ParseError(path, lineno, f"expected {n_fields} fields ({header}), got {len(fields)}")
    return fields


def _parse_int(path, lineno: int, column: int, token: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(path, lineno, f"column {column}: invalid integer {token!r}") from None


def _parse_float(path, lineno: int, column: int, token: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(path, lineno, f"column {column}: invalid number {token!r}") from None


def load_classes(path: Union[str, Path]) -> Dict[str, InnovatorClass]:
    """Read a country -> innovator-class CSV (header: country,class)."""
    classes: Dict[str, InnovatorClass] = {}
    rows = _read_lines(path)
    header = next(rows, None)
    if header is None or header[1].replace(" ", "") != CLASS_HEADER:
        raise ParseError(path, header[0] if header else 1, f"expected header {CLASS_HEADER!r}")
    for lineno, line in rows:
        country, cls_token = _split_row(path, lineno, line, 2, CLASS_HEADER)
        try:
            cls = InnovatorClass(cls_token.lower())
        except ValueError:
            raise ParseError(
                path, lineno, f"column 2: class must be core or noncore, got {cls_token!r}"
            ) from None
        if country in classes:
            raise DuplicateKeyError(f"{path}:{lineno}: duplicate class entry for {country!r}")
        classes[country] = cls
    return classes


def load_panel(
    path: Union[str, Path],
    classes: Optional[Mapping[str, InnovatorClass]] = None,
) -> Panel:
    """Read an observation panel CSV (header: year,country,indicator,value).

    '#' lines are comments.  Duplicate (year, country, indicator) keys fail
    with the offending line; countries without a class entry fail unless no
    class map is given, in which case everyone defaults to non-core.
    """
    observations = []
    seen: Dict[Tuple[int, str, str], int] = {}
    rows = _read_lines(path)
    header = next(rows, None)
    if header is None or header[1].replace(" ", "") != PANEL_HEADER:
        raise ParseError(path, header[0] if header else 1, f"expected header {PANEL_HEADER!r}")
    for lineno, line in rows:
        year_t, country, indicator, value_t = _split_row(path, lineno, line, 4, PANEL_HEADER)
        year = _parse_int(path, lineno, 1, year_t)
        value = _parse_float(path, lineno, 4, value_t)
        try:
            obs = Observation(year=year, country=country, indicator=indicator, value=value)
        except ValueError as exc:
            raise ParseError(path, lineno, str(exc)) from None
        if obs.key in seen:
            raise DuplicateKeyError(
                f"{path}:{lineno}: duplicate observation {obs.key} (first at line {seen[obs.key]})"
            )
        seen[obs.key] = lineno
        observations.append(obs)
    return Panel(observations, classes)


def load_score_table(path: Union[str, Path]) -> ScoreTable:
    """Read back a score CSV written by emit_report."""
    entries: Dict[Tuple[str, str], float] = {}
    year: Optional[int] = None
    rows = _read_lines(path)
    header = next(rows, None)
    if header is None or header[1].replace(" ", "") != SCORE_HEADER:
        raise ParseError(path, header[0] if header else 1, f"expected header {SCORE_HEADER!r}")
    for lineno, line in rows:
        year_t, country, node, score_t = _split_row(path, lineno, line, 4, SCORE_HEADER)
        row_year = _parse_int(path, lineno, 1, year_t)
        if year is None:
            year = row_year
        elif row_year != year:
            raise ParseError(path, lineno, f"mixed years {year} and {row_year} in one table")
        key = (country, node)
        if key in entries:
            raise DuplicateKeyError(f"{path}:{lineno}: duplicate score row for {key}")
        entries[key] = _parse_float(path, lineno, 4, score_t)
    if year is None:
        raise ParseError(path, 1, "score table has no rows")
    return ScoreTable(year=year, entries=entries)


# ---------------------------------------------------------------------------
# tree config
# ---------------------------------------------------------------------------

def _parse_weight(node_id: str, token) -> Fraction:
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, str):
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            pass
    raise SchemaError(f"node {node_id!r}: weight must be a rational string like '1/3', got {token!r}")


def _parse_edges(node_id: str, entries) -> Tuple[Tuple[str, Fraction], ...]:
    if not isinstance(entries, list) or not entries:
        raise SchemaError(f"node {node_id!r}: children must be a non-empty list")
    edges = []
    for entry in entries:
        if not isinstance(entry, dict) or "id" not in entry or "weight" not in entry:
            raise SchemaError(f"node {node_id!r}: each child needs 'id' and 'weight'")
        edges.append((str(entry["id"]), _parse_weight(node_id, entry["weight"])))
    return tuple(edges)


def load_tree(source: Union[str, Path]) -> IndexTree:
    """Build a validated IndexTree from a JSON config, or the literal
    "wef-default" for the built-in WEF tree."""
    if str(source) == WEF_DEFAULT:
        return default_wef_tree()
    path = Path(source)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "nodes" not in doc or "root" not in doc:
        raise SchemaError(f"{path}: tree config needs 'nodes' and 'root'")
    nodes: Dict[str, Node] = {}
    for spec in doc["nodes"]:
        if not isinstance(spec, dict) or "id" not in spec:
            raise SchemaError(f"{path}: every node needs an 'id'")
        node_id = str(spec["id"])
        if node_id in nodes:
            raise SchemaError(f"{path}: node {node_id!r} defined twice")
        edges = None
        edges_by_class = None
        if "children" in spec:
            edges = _parse_edges(node_id, spec["children"])
        if "weights_by_class" in spec:
            by_class = spec["weights_by_class"]
            if edges is not None:
                raise SchemaError(
                    f"node {node_id!r}: 'children' and 'weights_by_class' are exclusive"
                )
            if not isinstance(by_class, dict):
                raise SchemaError(f"node {node_id!r}: weights_by_class must be an object")
            edges_by_class = {}
            for cls_token, entries in by_class.items():
                try:
                    cls = InnovatorClass(cls_token.lower())
                except ValueError:
                    raise SchemaError(
                        f"node {node_id!r}: unknown class {cls_token!r}"
                    ) from None
                edges_by_class[cls] = _parse_edges(node_id, entries)
        normalize = None
        if "normalization" in spec:
            norm = spec["normalization"]
            if norm == OBSERVED:
                normalize = OBSERVED
            elif isinstance(norm, dict) and set(norm) == {"min", "max"}:
                try:
                    normalize = Normalization(min=float(norm["min"]), max=float(norm["max"]))
                except (TypeError, ValueError) as exc:
                    raise SchemaError(f"node {node_id!r}: {exc}") from None
            else:
                raise SchemaError(
                    f"node {node_id!r}: normalization must be {{min, max}} or \"{OBSERVED}\""
                )
        try:
            nodes[node_id] = Node(
                id=node_id, edges=edges, edges_by_class=edges_by_class, normalize=normalize
            )
        except ValueError as exc:
            raise SchemaError(f"{path}: {exc}") from None
    return validate_tree(IndexTree(nodes=nodes, root=str(doc["root"])))


def dump_tree(tree: IndexTree) -> str:
    """Canonical JSON text for a tree; load_tree(dump_tree(t)) == t."""
    node_specs = []
    for node_id in sorted(tree.nodes):
        node = tree.nodes[node_id]
        spec: Dict[str, object] = {"id": node_id}
        if node.edges is not None:
            spec["children"] = [{"id": c, "weight": str(w)} for c, w in node.edges]
        if node.edges_by_class is not None:
            spec["weights_by_class"] = {
                cls.value: [{"id": c, "weight": str(w)} for c, w in node.edges_by_class[cls]]
                for cls in InnovatorClass
                if cls in node.edges_by_class
            }
        if isinstance(node.normalize, Normalization):
            spec["normalization"] = {"min": node.normalize.min, "max": node.normalize.max}
        elif node.normalize == OBSERVED:
            spec["normalization"] = OBSERVED
        node_specs.append(spec)
    return json.dumps({"root": tree.root, "nodes": node_specs}, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# report emission
# ---------------------------------------------------------------------------

def _write(path: Union[str, Path], text: str) -> Path:
    path = Path(path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc
    return path


def _score_rows(table: ScoreTable):
    for (country, node) in sorted(table.entries):
        yield country, node, table.entries[(country, node)]


def _render_csv(results) -> str:
    if isinstance(results, ScoreTable):
        lines = [SCORE_HEADER]
        lines += [f"{results.year},{c},{n},{_fmt6(s)}" for c, n, s in _score_rows(results)]
        return "\n".join(lines) + "\n"
    if isinstance(results, RankTable):
        lines = [RANK_HEADER]
        lines += [f"{results.year},{c},{results.rank(c)}" for c in results.countries()]
        return "\n".join(lines) + "\n"
    if isinstance(results, RankDeltaReport):
        lines = ["country,delta,prev_rank,cur_rank"]
        for country in sorted(results.deltas):
            lines.append(
                f"{country},{format_delta(results.deltas[country])},"
                f"{results.prev_ranks[country]},{results.cur_ranks[country]}"
            )
        if results.entrants:
            lines.append("# entrants: " + ",".join(results.entrants))
        if results.leavers:
            lines.append("# leavers: " + ",".join(results.leavers))
        return "\n".join(lines) + "\n"
    if isinstance(results, TrendResult):
        return (
            "slope,intercept,n\n"
            f"{_fmt6(results.slope)},{_fmt6(results.intercept)},{results.n}\n"
        )
    if isinstance(results, CorrelationResult):
        return f"r,n\n{_fmt6(results.r)},{results.n}\n"
    if isinstance(results, ChiSquareResult):
        return (
            "statistic,df,p_value,critical_value,alpha,decision\n"
            f"{_fmt6(results.statistic)},{results.df},{_fmt6(results.p_value)},"
            f"{_fmt6(results.critical_value)},{_fmt6(results.alpha)},{results.decision.value}\n"
        )
    if isinstance(results, WhatIfOutcome):
        return (
            "country,node,override,baseline_gci,new_gci,baseline_rank,new_rank,delta_rank\n"
            f"{results.country},{results.node},{_fmt6(results.override)},"
            f"{_fmt6(results.baseline_gci)},{_fmt6(results.new_gci)},"
            f"{results.baseline_rank},{results.new_rank},{format_delta(results.delta_rank)}\n"
        )
    raise UnsupportedFormatError(f"cannot render {type(results).__name__} as csv")


def _json_number(value: float) -> float:
    return float(_fmt6(value))


def _render_json(results) -> str:
    if isinstance(results, ScoreTable):
        doc = {
            "year": results.year,
            "scores": [
                {"country": c, "node": n, "score": _json_number(s)}
                for c, n, s in _score_rows(results)
            ],
        }
    elif isinstance(results, RankTable):
        doc = {
            "year": results.year,
            "policy": results.policy,
            "ranks": {c: results.rank(c) for c in results.countries()},
        }
    elif isinstance(results, RankDeltaReport):
        doc = {
            "prev_year": results.prev_year,
            "cur_year": results.cur_year,
            "deltas": {c: results.deltas[c] for c in sorted(results.deltas)},
            "prev_ranks": dict(sorted(results.prev_ranks.items())),
            "cur_ranks": dict(sorted(results.cur_ranks.items())),
            "entrants": list(results.entrants),
            "leavers": list(results.leavers),
        }
    elif isinstance(results, TrendResult):
        doc = {
            "slope": _json_number(results.slope),
            "intercept": _json_number(results.intercept),
            "n": results.n,
        }
    elif isinstance(results, CorrelationResult):
        doc = {"r": _json_number(results.r), "n": results.n}
    elif isinstance(results, ChiSquareResult):
        doc = {
            "statistic": _json_number(results.statistic),
            "df": results.df,
            "p_value": _json_number(results.p_value),
            "critical_value": _json_number(results.critical_value),
            "alpha": _json_number(results.alpha),
            "decision": results.decision.value,
        }
    elif isinstance(results, WhatIfOutcome):
        doc = {
            "country": results.country,
            "node": results.node,
            "override": _json_number(results.override),
            "baseline_gci": _json_number(results.baseline_gci),
            "new_gci": _json_number(results.new_gci),
            "baseline_rank": results.baseline_rank,
            "new_rank": results.new_rank,
            "delta_rank": results.delta_rank,
        }
    else:
        raise UnsupportedFormatError(f"cannot render {type(results).__name__} as json")
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _render_svg(results, node: Optional[str]) -> str:
    if isinstance(results, ScoreTable):
        target = node or ("GCI" if "GCI" in results.nodes() else None)
        if target is None or target not in results.nodes():
            raise UnsupportedFormatError(
                f"score chart needs a node present in the table, got {target!r}"
            )
        items = [(c, results.score(c, target)) for c in results.countries()
                 if results.get(c, target) is not None]
        return svg.bar_chart(items, f"{target} scores, {results.year}", baseline=1.0)
    if isinstance(results, RankTable):
        items = [(c, float(results.rank(c))) for c in results.countries()]
        return svg.bar_chart(items, f"Rankings, {results.year}")
    if isinstance(results, RankDeltaReport):
        items = [(c, float(results.deltas[c])) for c in sorted(results.deltas)]
        return svg.bar_chart(
            items, f"Rank movement {results.prev_year} to {results.cur_year}", baseline=0.0
        )
    raise UnsupportedFormatError(f"cannot render {type(results).__name__} as svg")


def emit_report(results, format: str, path: Union[str, Path], node: Optional[str] = None) -> Path:
    """Write one result object as csv, json or svg.

    Identical results produce byte-identical files: ordering is stable and
    numbers are fixed to 6 decimals with a '.' separator.
    """
    if format == "csv":
        text = _render_csv(results)
    elif format == "json":
        text = _render_json(results)
    elif format == "svg":
        text = _render_svg(results, node)
    else:
        raise UnsupportedFormatError(f"unknown format {format!r}")
    return _write(path, text)


def render_report(results, format: str, node: Optional[str] = None) -> str:
    """The text emit_report would write, without touching the filesystem."""
    if format == "csv":
        return _render_csv(results)
    if format == "json":
        return _render_json(results)
    if format == "svg":
        return _render_svg(results, node)
    raise UnsupportedFormatError(f"unknown format {format!r}")


@dataclass(frozen=True)
class DatasetManifest:
    """Paths to panel/classes/tree inputs plus the missing-data policy."""

    panel: Union[str, Path]
    classes: Optional[Union[str, Path]] = None
    tree: Union[str, Path] = WEF_DEFAULT
    policy: str = "strict"

    def load(self) -> Tuple[Panel, IndexTree, MissingPolicy]:
        classes = load_classes(self.classes) if self.classes is not None else None
        panel = load_panel(self.panel, classes)
        tree = load_tree(self.tree)
        try:
            policy = MissingPolicy(self.policy)
        except ValueError:
            raise SchemaError(
                f"policy must be strict or renormalize, got {self.policy!r}"
            ) from None
        return panel, tree, policy
