"""Score tables -> rank tables, and year-over-year rank movements.

Sign convention for movements: delta = previous rank - current rank, so a
country that climbs the table gets a positive delta (a rise of nine places
is +9).  The opposite convention is equally common elsewhere; everything in
this package uses this one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Mapping, Tuple

from .errors import EmptyIntersectionError, MissingNodeError
from .model import COMPETITION, Panel, RankTable, ScoreTable


def rank_scores(scores: ScoreTable, node: str) -> RankTable:
    """Rank countries by descending score on one node.

    Competition ranking: k countries tied at rank r push the next distinct
    score to rank r + k.  Exactly equal float scores count as ties.
    """
    countries = scores.countries()
    missing = [c for c in countries if scores.get(c, node) is None]
    if not countries or len(missing) == len(countries):
        raise MissingNodeError(f"no scores for node {node!r}")
    if missing:
        raise MissingNodeError(f"node {node!r} has no score for: {missing}")
    # Sort by (-score, country) so tied countries appear in code order.
    ordered = sorted(countries, key=lambda c: (-scores.score(c, node), c))
    ranks: Dict[str, int] = {}
    position = 0
    current_rank = 0
    previous_score = None
    for country in ordered:
        position += 1
        score = scores.score(country, node)
        if score != previous_score:
            current_rank = position
            previous_score = score
        ranks[country] = current_rank
    return RankTable(year=scores.year, ranks=ranks, policy=COMPETITION)


def rank_table_from_indicator(panel: Panel, year: int, indicator: str) -> RankTable:
    """Build a RankTable from ingested standings (e.g. published WEF ranks).

    The indicator's values must be positive integers; they are taken as-is,
    so they may refer to a wider table than the panel's own countries.
    """
    ranks: Dict[str, int] = {}
    for country in panel.countries(year):
        value = panel.value(year, country, indicator)
        if value is None:
            continue
        rank = int(value)
        if rank != value or rank < 1:
            raise MissingNodeError(
                f"indicator {indicator!r} for {country} in {year} is not a positive integer rank: {value}"
            )
        ranks[country] = rank
    if not ranks:
        raise MissingNodeError(f"indicator {indicator!r} has no values for {year}")
    return RankTable(year=year, ranks=ranks, policy="ingested")


@dataclass(frozen=True)
class RankDeltaReport:
    """Rank movements over the common country set, plus coverage changes.

    deltas: country -> previous rank - current rank (positive = rise).
    entrants appear only in the current table, leavers only in the previous.
    """

    prev_year: int
    cur_year: int
    deltas: Mapping[str, int]
    prev_ranks: Mapping[str, int]
    cur_ranks: Mapping[str, int]
    entrants: Tuple[str, ...]
    leavers: Tuple[str, ...]


def rank_delta(prev: RankTable, cur: RankTable) -> RankDeltaReport:
    """Movement of each country between two rank tables.

    Only the intersection of the two country sets gets a delta; entrants and
    leavers are reported separately rather than folded in.
    """
    common = set(prev.ranks) & set(cur.ranks)
    if not common:
        raise EmptyIntersectionError("rank tables share no countries")
    deltas = {c: prev.rank(c) - cur.rank(c) for c in sorted(common)}
    return RankDeltaReport(
        prev_year=prev.year,
        cur_year=cur.year,
        deltas=deltas,
        prev_ranks={c: prev.rank(c) for c in sorted(common)},
        cur_ranks={c: cur.rank(c) for c in sorted(common)},
        entrants=tuple(sorted(set(cur.ranks) - common)),
        leavers=tuple(sorted(set(prev.ranks) - common)),
    )


def format_delta(delta: int) -> str:
    """Movement label in report style: +9 for a rise, -6 for a fall, 0 flat."""
    return f"+{delta}" if delta > 0 else str(delta)
