"""Domain types for composite-index computation.

A weighted aggregation tree (really a DAG) maps leaf indicators to composite
scores on the 1-7 scale.  Weights are exact rationals so the sum-to-1
invariant can be checked without floating-point slack.  Everything here is
immutable after construction and safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Tuple, Union

from .errors import (
    CycleError,
    DanglingChildError,
    DuplicateKeyError,
    MissingClassError,
    WeightSumError,
)

#: Marker for hard-data leaves whose min/max bounds are derived per year
#: from the observed cross-country values.
OBSERVED = "observed"


class InnovatorClass(Enum):
    """Country class selecting the weighting scheme (core vs non-core)."""

    CORE = "core"
    NONCORE = "noncore"


@dataclass(frozen=True)
class Observation:
    """One (year, country, indicator, value) data point.

    Hard indicators carry raw units; survey indicators are already on the
    1-7 scale.
    """

    year: int
    country: str
    indicator: str
    value: float

    def __post_init__(self):
        if not 1990 <= self.year <= 2100:
            raise ValueError(f"year {self.year} outside [1990, 2100]")
        for name in ("country", "indicator"):
            token = getattr(self, name)
            if not token or any(ch.isspace() for ch in token):
                raise ValueError(f"{name} must be non-empty without whitespace: {token!r}")

    @property
    def key(self) -> Tuple[int, str, str]:
        return (self.year, self.country, self.indicator)


class Panel:
    """Immutable set of observations plus a country -> class map.

    Duplicate (year, country, indicator) keys are rejected, and every country
    appearing in the observations must have a class entry.
    """

    def __init__(
        self,
        observations: Iterable[Observation],
        classes: Optional[Mapping[str, InnovatorClass]] = None,
    ):
        values: dict = {}
        countries = set()
        for obs in observations:
            if obs.key in values:
                raise DuplicateKeyError(f"duplicate observation {obs.key}")
            values[obs.key] = obs.value
            countries.add(obs.country)
        if classes is None:
            # Regional default: treat every observed country as a non-core
            # innovator unless told otherwise.
            classes = {c: InnovatorClass.NONCORE for c in countries}
        missing = countries - set(classes)
        if missing:
            raise MissingClassError(f"no innovator class for: {sorted(missing)}")
        self._values = values
        self._classes = dict(classes)

    def __len__(self) -> int:
        return len(self._values)

    @property
    def classes(self) -> Mapping[str, InnovatorClass]:
        return dict(self._classes)

    def innovator_class(self, country: str) -> InnovatorClass:
        return self._classes[country]

    def years(self) -> Tuple[int, ...]:
        return tuple(sorted({y for (y, _, _) in self._values}))

    def countries(self, year: Optional[int] = None) -> Tuple[str, ...]:
        if year is None:
            return tuple(sorted({c for (_, c, _) in self._values}))
        return tuple(sorted({c for (y, c, _) in self._values if y == year}))

    def value(self, year: int, country: str, indicator: str) -> Optional[float]:
        return self._values.get((year, country, indicator))

    def slice_year(self, year: int, indicators: Iterable[str]) -> dict:
        """Return {(country, indicator): value} for one year."""
        wanted = set(indicators)
        return {
            (c, i): v
            for (y, c, i), v in self._values.items()
            if y == year and i in wanted
        }

    def series(self, country: str, indicator: str) -> Tuple[Tuple[int, float], ...]:
        """All (year, value) pairs for one country/indicator, year-ordered."""
        pts = [
            (y, v)
            for (y, c, i), v in self._values.items()
            if c == country and i == indicator
        ]
        return tuple(sorted(pts))

    def observations(self) -> Tuple[Observation, ...]:
        return tuple(
            Observation(y, c, i, v) for (y, c, i), v in sorted(self._values.items())
        )


@dataclass(frozen=True)
class Normalization:
    """Min-max bounds mapping a raw indicator onto the 1-7 scale."""

    min: float
    max: float

    def __post_init__(self):
        if not self.max > self.min:
            raise ValueError(f"normalization needs max > min, got [{self.min}, {self.max}]")


Edge = Tuple[str, Fraction]
NormalizeSpec = Union[Normalization, str, None]  # Normalization | OBSERVED | None


@dataclass(frozen=True)
class Node:
    """One tree node: an aggregate with weighted children, or a leaf.

    Aggregates hold either a shared edge list or per-class edge lists (the
    child sets themselves may differ between classes).  Leaves optionally
    carry a Normalization, the OBSERVED marker, or nothing (survey data
    already on the 1-7 scale).
    """

    id: str
    edges: Optional[Tuple[Edge, ...]] = None
    edges_by_class: Optional[Mapping[InnovatorClass, Tuple[Edge, ...]]] = None
    normalize: NormalizeSpec = None

    def __post_init__(self):
        if self.edges is not None and self.edges_by_class is not None:
            raise ValueError(f"node {self.id}: shared and per-class edges are exclusive")
        if not self.is_leaf and self.normalize is not None:
            raise ValueError(f"node {self.id}: normalization only applies to leaves")
        if self.normalize is not None and not isinstance(self.normalize, Normalization):
            if self.normalize != OBSERVED:
                raise ValueError(f"node {self.id}: bad normalize spec {self.normalize!r}")

    @property
    def is_leaf(self) -> bool:
        return self.edges is None and self.edges_by_class is None

    def children(self, cls: InnovatorClass) -> Tuple[Edge, ...]:
        """Weighted child edges effective for one innovator class."""
        if self.edges is not None:
            return self.edges
        if self.edges_by_class is not None:
            return tuple(self.edges_by_class.get(cls, ()))
        return ()


@dataclass(frozen=True)
class IndexTree:
    """Weighted aggregation DAG with a designated root node."""

    nodes: Mapping[str, Node]
    root: str

    def node(self, node_id: str) -> Node:
        return self.nodes[node_id]

    def reachable(self, cls: Optional[InnovatorClass] = None) -> Tuple[str, ...]:
        """Node ids reachable from the root, in deterministic topological
        order (children before parents).  With cls=None the union of both
        classes' edges is walked."""
        order: list = []
        seen = set()
        onpath = set()

        def edges_of(node: Node) -> Tuple[Edge, ...]:
            if cls is not None:
                return node.children(cls)
            if node.edges is not None:
                return node.edges
            if node.edges_by_class is not None:
                merged: dict = {}
                for c in InnovatorClass:
                    for child, w in node.children(c):
                        merged.setdefault(child, w)
                return tuple(merged.items())
            return ()

        def visit(node_id: str):
            if node_id in seen:
                return
            if node_id in onpath:
                raise CycleError(f"cycle through node {node_id!r}")
            if node_id not in self.nodes:
                raise DanglingChildError(f"unknown child node {node_id!r}")
            onpath.add(node_id)
            for child, _ in sorted(edges_of(self.nodes[node_id])):
                visit(child)
            onpath.discard(node_id)
            seen.add(node_id)
            order.append(node_id)

        visit(self.root)
        return tuple(order)

    def leaves(self, cls: Optional[InnovatorClass] = None) -> Tuple[str, ...]:
        return tuple(n for n in self.reachable(cls) if self.nodes[n].is_leaf)


def validate_tree(tree: IndexTree) -> IndexTree:
    """Check all IndexTree invariants; return the tree unchanged if valid.

    Raises CycleError, DanglingChildError or WeightSumError.  Validation is
    idempotent: a validated tree validates again to an equal tree.
    """
    if tree.root not in tree.nodes:
        raise DanglingChildError(f"root {tree.root!r} not among nodes")
    reachable = tree.reachable()  # raises CycleError / DanglingChildError
    for node_id in reachable:
        node = tree.nodes[node_id]
        if node.is_leaf:
            continue
        for cls in InnovatorClass:
            edges = node.children(cls)
            if not edges:
                continue
            seen_children = set()
            total = Fraction(0)
            for child, weight in edges:
                if child not in tree.nodes:
                    raise DanglingChildError(f"node {node_id!r} references unknown child {child!r}")
                if child in seen_children:
                    raise DanglingChildError(f"node {node_id!r} lists child {child!r} twice")
                seen_children.add(child)
                if not isinstance(weight, Fraction):
                    raise WeightSumError(f"node {node_id!r}: weight for {child!r} is not an exact rational")
                if not 0 < weight <= 1:
                    raise WeightSumError(f"node {node_id!r}: weight {weight} for {child!r} outside (0, 1]")
                total += weight
            if total != 1:
                raise WeightSumError(f"node {node_id!r} ({cls.value}): weights sum to {total}, not 1")
        if not node.children(InnovatorClass.CORE) and not node.children(InnovatorClass.NONCORE):
            raise WeightSumError(f"aggregate node {node_id!r} has no edges for either class")
    return tree


def _equal_edges(children: Iterable[str]) -> Tuple[Edge, ...]:
    ids = tuple(children)
    w = Fraction(1, len(ids))
    return tuple((c, w) for c in ids)


#: Survey questions feeding the ICT survey-data group.
ICT_SURVEY_LEAVES = (
    "internet_access_in_schools",
    "isp_competition_quality",
    "gov_ict_prioritization",
    "gov_ict_promotion_success",
    "ict_laws",
)

#: Per-capita hard indicators feeding the ICT hard-data group.
ICT_HARD_LEAVES = (
    "cellular_telephones",
    "internet_users",
    "internet_hosts",
    "telephone_lines",
    "personal_computers",
)


def default_wef_tree() -> IndexTree:
    """The full WEF growth-competitiveness aggregation tree.

    GCI combines the technology, public-institutions and macro-environment
    indexes with class-dependent weights (core innovators: 1/2, 1/4, 1/4;
    non-core: equal thirds).  The technology index splits by class as well:
    core countries average innovation and ICT evenly, non-core countries
    weigh innovation 1/8, technology transfer 3/8 and ICT 1/2.  The ICT
    sub-index mixes survey data (1/3) and hard data (2/3); hard leaves are
    min-max normalized against the observed cross-country range for the
    evaluated year.
    """
    half, quarter, third = Fraction(1, 2), Fraction(1, 4), Fraction(1, 3)
    nodes = {
        "GCI": Node(
            "GCI",
            edges_by_class={
                InnovatorClass.CORE: (("TI", half), ("PII", quarter), ("MEI", quarter)),
                InnovatorClass.NONCORE: (("TI", third), ("PII", third), ("MEI", third)),
            },
        ),
        "TI": Node(
            "TI",
            edges_by_class={
                InnovatorClass.CORE: (("IS", half), ("ICTS", half)),
                InnovatorClass.NONCORE: (
                    ("IS", Fraction(1, 8)),
                    ("TTS", Fraction(3, 8)),
                    ("ICTS", half),
                ),
            },
        ),
        "PII": Node("PII", edges=(("CLS", half), ("CS", half))),
        "MEI": Node("MEI", edges=(("MSS", half), ("CCR", quarter), ("GW", quarter))),
        "ICTS": Node("ICTS", edges=(("ICTsd", third), ("ICThd", Fraction(2, 3)))),
        "ICTsd": Node("ICTsd", edges=_equal_edges(ICT_SURVEY_LEAVES)),
        "ICThd": Node("ICThd", edges=_equal_edges(ICT_HARD_LEAVES)),
        "IS": Node("IS"),
        "TTS": Node("TTS"),
        "CLS": Node("CLS"),
        "CS": Node("CS"),
        "MSS": Node("MSS"),
        "CCR": Node("CCR"),
        "GW": Node("GW"),
    }
    for leaf in ICT_SURVEY_LEAVES:
        nodes[leaf] = Node(leaf)
    for leaf in ICT_HARD_LEAVES:
        nodes[leaf] = Node(leaf, normalize=OBSERVED)
    return validate_tree(IndexTree(nodes=nodes, root="GCI"))


@dataclass(frozen=True)
class ScoreTable:
    """Per-country, per-node scores on the 1-7 scale for one year."""

    year: int
    entries: Mapping[Tuple[str, str], float]

    def __post_init__(self):
        for (country, node), score in self.entries.items():
            if not 1.0 <= score <= 7.0:
                raise ValueError(f"score {score} for ({country}, {node}) outside [1, 7]")

    def score(self, country: str, node: str) -> float:
        return self.entries[(country, node)]

    def get(self, country: str, node: str) -> Optional[float]:
        return self.entries.get((country, node))

    def countries(self) -> Tuple[str, ...]:
        return tuple(sorted({c for (c, _) in self.entries}))

    def nodes(self) -> Tuple[str, ...]:
        return tuple(sorted({n for (_, n) in self.entries}))

    def with_overrides(self, country: str, updates: Mapping[str, float]) -> "ScoreTable":
        new_entries = dict(self.entries)
        for node, score in updates.items():
            new_entries[(country, node)] = score
        return ScoreTable(year=self.year, entries=new_entries)


#: Tie policy used throughout: tied scores share the best rank and the next
#: distinct score skips accordingly (1-2-2-4).
COMPETITION = "competition"


@dataclass(frozen=True)
class RankTable:
    """Ordinal positions for one year.  Rank 1 is the best."""

    year: int
    ranks: Mapping[str, int]
    policy: str = COMPETITION

    def __post_init__(self):
        for country, rank in self.ranks.items():
            if rank < 1:
                raise ValueError(f"rank {rank} for {country} must be positive")

    def rank(self, country: str) -> int:
        return self.ranks[country]

    def countries(self) -> Tuple[str, ...]:
        return tuple(sorted(self.ranks))
