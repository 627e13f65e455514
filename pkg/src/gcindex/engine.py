"""Bottom-up evaluation of index trees against leaf indicator data.

Leaf values are normalized onto the 1-7 scale (hard data) or taken as-is
(survey data, already 1-7), then every aggregate node is scored as the
weighted sum of its children using the country class's exact rational
weights.  Pure functions throughout: same inputs, bit-identical outputs.
"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .errors import (
    DegenerateRangeError,
    MissingLeafError,
    OutOfScaleError,
)
from .model import (
    OBSERVED,
    IndexTree,
    InnovatorClass,
    Normalization,
    Panel,
    ScoreTable,
)

#: (country, leaf-id) -> raw value for one year.
LeafAssignment = Mapping[Tuple[str, str], float]


class MissingPolicy(Enum):
    """What to do when a country lacks a leaf value.

    STRICT raises MissingLeafError listing every absent pair; RENORMALIZE
    drops missing children and rescales the remaining weights to sum to 1.
    """

    STRICT = "strict"
    RENORMALIZE = "renormalize"


def normalize_minmax(x: float, norm: Normalization) -> float:
    """Map a raw value onto [1, 7], clamping outside [min, max]."""
    if not norm.max > norm.min:
        raise DegenerateRangeError(f"max {norm.max} <= min {norm.min}")
    clamped = min(max(x, norm.min), norm.max)
    score = 1.0 + 6.0 * (clamped - norm.min) / (norm.max - norm.min)
    # the subtractions round independently, so the quotient can land a few
    # ulps outside [0, 1]; pin the result to the scale
    return min(7.0, max(1.0, score))


def observed_bounds(leaves: LeafAssignment, leaf_id: str) -> Normalization:
    """Cross-country min/max bounds for one leaf in one year's assignment."""
    values = [v for (_, leaf), v in leaves.items() if leaf == leaf_id]
    if not values:
        raise DegenerateRangeError(f"no observed values for leaf {leaf_id!r}")
    lo, hi = min(values), max(values)
    if not hi > lo:
        raise DegenerateRangeError(
            f"observed range for leaf {leaf_id!r} is degenerate: all values equal {lo}"
        )
    return Normalization(min=lo, max=hi)


def _leaf_score(tree: IndexTree, leaf_id: str, leaves: LeafAssignment, country: str) -> float:
    raw = leaves[(country, leaf_id)]
    spec = tree.node(leaf_id).normalize
    if spec is None:
        if not 1.0 <= raw <= 7.0:
            raise OutOfScaleError(
                f"leaf {leaf_id!r} for {country}: {raw} outside [1, 7] and no normalization"
            )
        return float(raw)
    if spec == OBSERVED:
        spec = observed_bounds(leaves, leaf_id)
    return normalize_minmax(raw, spec)


def evaluate_node(
    tree: IndexTree,
    node_id: str,
    cls: InnovatorClass,
    leaves: LeafAssignment,
    country: str,
    policy: MissingPolicy = MissingPolicy.STRICT,
) -> float:
    """Score one node for one country.

    Leaves yield their (normalized) value; aggregates the weighted sum of
    child scores under the class's weights.  Under RENORMALIZE, children
    without data are dropped and the surviving weights rescaled; a node with
    no surviving children propagates as missing.
    """
    score = _evaluate(tree, node_id, cls, leaves, country, policy, {})
    if score is None:
        missing = sorted(
            (country, leaf)
            for leaf in tree.leaves(cls)
            if (country, leaf) not in leaves
        )
        raise MissingLeafError(missing or [(country, node_id)])
    return score


def _evaluate(
    tree: IndexTree,
    node_id: str,
    cls: InnovatorClass,
    leaves: LeafAssignment,
    country: str,
    policy: MissingPolicy,
    memo: Dict[str, Optional[float]],
) -> Optional[float]:
    """Recursive scorer; returns None for unevaluable nodes under RENORMALIZE."""
    if node_id in memo:
        return memo[node_id]
    node = tree.node(node_id)
    if node.is_leaf:
        if (country, node_id) not in leaves:
            if policy is MissingPolicy.STRICT:
                raise MissingLeafError([(country, node_id)])
            memo[node_id] = None
            return None
        value = _leaf_score(tree, node_id, leaves, country)
    else:
        parts = []
        for child, weight in node.children(cls):
            child_score = _evaluate(tree, child, cls, leaves, country, policy, memo)
            if child_score is not None:
                parts.append((weight, child_score))
        if not parts:
            memo[node_id] = None
            return None
        total = sum(w for w, _ in parts)
        if total != 1:
            # RENORMALIZE: rescale surviving weights; stays exact rational.
            parts = [(w / total, s) for w, s in parts]
        # Fraction(s) is exact for any float; one rounding at the end keeps
        # convex combinations inside [min(children), max(children)] exactly.
        value = float(sum(w * Fraction(s) for w, s in parts))
    memo[node_id] = value
    return value


def compute_all(
    tree: IndexTree,
    panel: Panel,
    year: int,
    policy: MissingPolicy = MissingPolicy.STRICT,
) -> ScoreTable:
    """Score every root-reachable node for every country present in `year`.

    Countries are those with at least one observation in the year; each is
    evaluated over the node set reachable for its innovator class.  STRICT
    raises one MissingLeafError listing all absent (country, leaf) pairs.
    """
    countries = panel.countries(year)
    if not countries:
        raise MissingLeafError([], f"year {year} not found in panel")
    all_leaves = set(tree.leaves())
    leaves: LeafAssignment = panel.slice_year(year, all_leaves)

    if policy is MissingPolicy.STRICT:
        absent = [
            (country, leaf)
            for country in countries
            for leaf in tree.leaves(panel.innovator_class(country))
            if (country, leaf) not in leaves
        ]
        if absent:
            raise MissingLeafError(sorted(absent))

    entries: Dict[Tuple[str, str], float] = {}
    for country in countries:
        cls = panel.innovator_class(country)
        memo: Dict[str, Optional[float]] = {}
        root_score = _evaluate(tree, tree.root, cls, leaves, country, policy, memo)
        if root_score is None:
            raise MissingLeafError(
                [(country, leaf) for leaf in tree.leaves(cls)],
                f"country {country!r} has no usable data for {year}",
            )
        for node_id in tree.reachable(cls):
            score = memo.get(node_id)
            if score is not None:
                entries[(country, node_id)] = score
    return ScoreTable(year=year, entries=entries)
