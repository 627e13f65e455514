"""Macedonia's technology index against its composite score, 2003-2006.

The technology index loses about a quarter point per year while the
composite crawls upward on the strength of the macro environment; the two
series are negatively correlated.
"""

from gcindex import compute_all, load_classes, load_panel, load_tree, ols_fit, pearson
from gcindex.data import BALKANS_CLASSES, BALKANS_PANEL, BALKANS_TREE, fixture_path

classes = load_classes(fixture_path(BALKANS_CLASSES))
panel = load_panel(fixture_path(BALKANS_PANEL), classes)
tree = load_tree(fixture_path(BALKANS_TREE))

country = "Macedonia"
years = (2003, 2004, 2005, 2006)

series = {"TI": [], "GCI": [], "MEI": []}
for year in years:
    table = compute_all(tree, panel, year)
    for node in series:
        series[node].append((year, table.score(country, node)))

print(f"{country}, component scores by year")
print(f"{'year':>6} {'TI':>6} {'GCI':>6} {'MEI':>6}")
for i, year in enumerate(years):
    print(f"{year:>6} {series['TI'][i][1]:>6.2f} {series['GCI'][i][1]:>6.2f} "
          f"{series['MEI'][i][1]:>6.2f}")

ti_fit = ols_fit(series["TI"])
gci_fit = ols_fit(series["GCI"])
mei_fit = ols_fit(series["MEI"])
print(f"\nTechnology index trend:  {ti_fit.slope:+.3f} per year")
print(f"Composite score trend:   {gci_fit.slope:+.3f} per year")
print(f"Macro environment trend: {mei_fit.slope:+.3f} per year (the one steady gain)")

corr = pearson([v for _, v in series["TI"]], [v for _, v in series["GCI"]])
print(f"\nPearson correlation between TI and GCI: {corr.r:.5f} (n = {corr.n})")
print("Technology slides while the composite inches up: the correlation is negative.")
