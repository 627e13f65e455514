"""What would Macedonia's technology index need to be to climb the table?

Scenarios freeze every other country and re-derive only the override node's
ancestors.  Because the composite is linear in each component, the minimal
improvement that buys k positions has a closed form; the engine checks it
against the 1-7 scale and reports infeasibility where no score suffices.
"""

from gcindex import (
    Scenario,
    apply_scenario,
    compute_all,
    load_classes,
    load_panel,
    load_tree,
    min_delta_for_rank_gain,
    rank_scores,
)
from gcindex.data import BALKANS_CLASSES, BALKANS_PANEL, BALKANS_TREE, fixture_path

classes = load_classes(fixture_path(BALKANS_CLASSES))
panel = load_panel(fixture_path(BALKANS_PANEL), classes)
tree = load_tree(fixture_path(BALKANS_TREE))

scores = compute_all(tree, panel, 2006)
country = "Macedonia"
baseline_rank = rank_scores(scores, "GCI").rank(country)
ti = scores.score(country, "TI")
print(f"{country} 2006: GCI {scores.score(country, 'GCI'):.2f}, "
      f"TI {ti:.2f}, regional rank {baseline_rank} of {len(scores.countries())}")

print("\nOverride scenarios on the technology index:")
for override in (3.5, 4.0, 4.5, 5.0):
    outcome = apply_scenario(tree, scores, classes, Scenario(country, "TI", override))
    print(f"  TI = {override:.2f} -> GCI {outcome.new_gci:.4f}, "
          f"rank {outcome.new_rank} ({outcome.delta_rank:+d})")

print("\nSmallest technology improvement per target gain:")
for k in range(1, 10):
    delta = min_delta_for_rank_gain(tree, scores, classes, country, k, "TI")
    if delta is None:
        print(f"  +{k} positions: infeasible (the 1-7 scale runs out)")
        continue
    outcome = apply_scenario(tree, scores, classes, Scenario(country, "TI", ti + delta))
    print(f"  +{k} positions: TI +{delta:.4f} -> {ti + delta:.4f} "
          f"(lands at rank {outcome.new_rank})")
