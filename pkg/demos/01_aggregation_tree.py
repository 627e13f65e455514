"""Walk the default WEF aggregation tree and score a synthetic country.

The tree combines three component indexes into the growth competitiveness
score with class-dependent weights; the technology branch differs between
core and non-core innovators, and the ICT sub-index mixes survey data with
min-max-normalized hard data.
"""

from gcindex import InnovatorClass, default_wef_tree, evaluate_node

tree = default_wef_tree()

print("Node structure (weights per innovator class)")
print("=" * 60)
for node_id in reversed(tree.reachable()):
    node = tree.node(node_id)
    if node.is_leaf:
        continue
    print(f"\n{node_id}")
    for cls in InnovatorClass:
        edges = node.children(cls)
        if not edges:
            continue
        parts = ", ".join(f"{child} x {weight}" for child, weight in edges)
        print(f"  {cls.value:>8}: {parts}")

print("\nLeaves:", ", ".join(tree.leaves()))

# Score one synthetic country.  Survey answers sit on the 1-7 scale already;
# hard indicators are raw per-capita counts, normalized against the
# cross-country range, so we add two countries spanning that range.
leaves = {}
for country, survey, hard in (("Synthetica", 4.0, 55.0), ("Lowland", 2.0, 0.0), ("Highland", 6.0, 100.0)):
    for leaf in tree.leaves(InnovatorClass.NONCORE):
        is_hard = tree.node(leaf).normalize is not None
        leaves[(country, leaf)] = hard if is_hard else survey

print("\nSynthetic country, survey answers 4.0, hard data mid-range:")
for node_id in ("ICThd", "ICTsd", "ICTS", "TI", "PII", "MEI", "GCI"):
    for cls in InnovatorClass:
        score = evaluate_node(tree, node_id, cls, leaves, "Synthetica")
        print(f"  {node_id:>6} ({cls.value:>7}) = {score:.4f}")
