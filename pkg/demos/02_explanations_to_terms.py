"""From raw per-instance explanation vectors to per-class starting terms.

Shows the three preprocessing stages: aggregation over correctly
classified instances, dynamic thresholding of the aggregated importances,
and mapping the surviving features to ontology terms.
"""
import json

from reex import aggregate, dynamic_threshold, parse_explanations, parse_mapping, to_starting_terms

DOC = {
    "classes": ["tumor", "normal"],
    "features": ["BRCA1", "TP53", "ACTB", "GAPDH"],
    "instances": [
        {"true_class": "tumor", "predicted_class": "tumor", "values": [0.9, 0.6, 0.05, 0.0]},
        {"true_class": "tumor", "predicted_class": "tumor", "values": [0.7, 0.8, 0.0, 0.1]},
        # a misclassified tumor sample: excluded from the averages
        {"true_class": "tumor", "predicted_class": "normal", "values": [9.0, 9.0, 9.0, 9.0]},
        {"true_class": "normal", "predicted_class": "normal", "values": [0.0, 0.1, 0.8, 0.7]},
        {"true_class": "normal", "predicted_class": "normal", "values": [0.1, 0.0, 0.6, 0.9]},
    ],
}

MAPPING = """\
BRCA1\tGO:0006281,GO:0007049
TP53\tGO:0006915,GO:0007049
ACTB\tGO:0007010
GAPDH\tGO:0006096
"""

explanations = parse_explanations(json.dumps(DOC))
agg = aggregate(explanations, use_absolute=True)
for label in agg.classes:
    vec = ", ".join(f"{f}={v:.3f}" for f, v in zip(agg.features, agg.per_class[label]))
    print(f"mean |importance| for {label}: {vec}")

print()
for label in agg.classes:
    threshold, selected = dynamic_threshold(agg, label, min_terms=2, step=0.975)
    print(f"{label}: threshold settled at {threshold:.4f}, selected {selected}")

annotation_map = parse_mapping(MAPPING)
selected = {
    label: dynamic_threshold(agg, label, min_terms=2)[1] for label in agg.classes
}
starting = to_starting_terms(selected, annotation_map)
print()
for label, terms in sorted(starting.per_class.items()):
    print(f"starting terms for {label}: {sorted(terms)}")
