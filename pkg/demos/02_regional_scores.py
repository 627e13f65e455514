"""Score the bundled Balkans panel and print the 2005/2006 league tables.

Slovenia, Greece and Croatia lead the region in 2006 (4.77, 4.35, 4.02);
Macedonia sits third from the bottom, above only Bosnia and Herzegovina
and Albania.
"""

from gcindex import compute_all, load_classes, load_panel, load_tree, rank_scores
from gcindex.data import BALKANS_CLASSES, BALKANS_PANEL, BALKANS_TREE, fixture_path

classes = load_classes(fixture_path(BALKANS_CLASSES))
panel = load_panel(fixture_path(BALKANS_PANEL), classes)
tree = load_tree(fixture_path(BALKANS_TREE))

print(f"Panel: {len(panel)} observations, years {panel.years()[0]}-{panel.years()[-1]}")

for year in (2005, 2006):
    table = compute_all(tree, panel, year)
    ranks = rank_scores(table, "GCI")
    print(f"\n{year} regional standings (composite, technology, institutions, macro)")
    print(f"{'':>4} {'country':<24} {'GCI':>6} {'TI':>6} {'PII':>6} {'MEI':>6}")
    for country in sorted(table.countries(), key=ranks.rank):
        print(
            f"{ranks.rank(country):>3}. {country:<24}"
            f" {table.score(country, 'GCI'):>6.2f}"
            f" {table.score(country, 'TI'):>6.2f}"
            f" {table.score(country, 'PII'):>6.2f}"
            f" {table.score(country, 'MEI'):>6.2f}"
        )

table = compute_all(tree, panel, 2006)
print("\n2006 ICT sub-index (the regional technology laggards show here):")
for country in sorted(table.countries(), key=lambda c: -table.score(c, "ICTS")):
    bar = "#" * int(round(10 * (table.score(country, "ICTS") - 1.0)))
    print(f"  {country:<24} {table.score(country, 'ICTS'):>5.2f}  {bar}")
