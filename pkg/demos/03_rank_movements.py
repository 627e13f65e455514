"""Year-over-year movements in the published global standings, plus the
chi-square stability test.

Movements use the previous-minus-current convention: Turkey's nine-place
climb reads +9.  The chi-square test asks whether the region's ranking as a
whole shifted between the two report years; it does not, at the 5% level,
under either test construction.
"""

from gcindex import (
    load_classes,
    load_panel,
    rank_delta,
    rank_homogeneity_test,
    rank_table_from_indicator,
)
from gcindex.data import BALKANS_CLASSES, BALKANS_PANEL, fixture_path
from gcindex.ranking import format_delta

classes = load_classes(fixture_path(BALKANS_CLASSES))
panel = load_panel(fixture_path(BALKANS_PANEL), classes)

prev = rank_table_from_indicator(panel, 2005, "GCI_RANK")
cur = rank_table_from_indicator(panel, 2006, "GCI_RANK")
report = rank_delta(prev, cur)

print("Global GCI standings, 2005 -> 2006")
print(f"{'country':<24} {'2005':>5} {'2006':>5} {'move':>6}")
by_move = sorted(report.deltas, key=lambda c: (-report.deltas[c], c))
for country in by_move:
    print(
        f"{country:<24} {report.prev_ranks[country]:>5} "
        f"{report.cur_ranks[country]:>5} {format_delta(report.deltas[country]):>6}"
    )

print("\nBiggest rise:", ", ".join(c for c in by_move if report.deltas[c] == max(report.deltas.values())))
print("Biggest fall:", ", ".join(c for c in by_move if report.deltas[c] == min(report.deltas.values())))

for design, label in (
    ("prev-expected", "expected = previous-year ranks (engine default)"),
    ("two-way", "2 x n homogeneity table (spreadsheet layout)"),
):
    result = rank_homogeneity_test(prev, cur, alpha=0.05, design=design)
    print(f"\nChi-square stability test, {label}")
    print(f"  critical value   {result.critical_value:.5f}")
    print(f"  test statistic   {result.statistic:.6f}")
    print(f"  p-value          {result.p_value:.6f}")
    verdict = "Do not reject" if result.p_value > result.alpha else "Reject"
    print(f"  {verdict} the null hypothesis (df = {result.df}, alpha = {result.alpha})")
