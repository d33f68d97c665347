"""Scoring generalizations with GenQ.

Annotation counts propagate upward (annotating a term annotates its
ancestors), information content is the negative log prior, and GenQ is
one minus the normalized mean information content of a set. The closer
to 1, the more general the set.
"""
from reex import (
    StartingTermSets,
    baseline_genq,
    build_ic_table,
    build_report,
    genq,
    parse_mapping,
    parse_obo,
    render_report,
    selective_staircase,
    term_annotation_counts,
)

OBO = "\n".join(
    ["[Term]\nid: T0\nname: T0-name"]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T0" for i in (1, 2, 3)]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T1" for i in (4, 7)]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T2" for i in (5, 6)]
    + ["[Term]\nid: T8\nname: T8-name\nis_a: T3"]
)

MAPPING = "\n".join(f"g{i}\tT{i}" for i in (4, 5, 6, 7, 8))

ontology = parse_obo(OBO)
annotation_map = parse_mapping(MAPPING, ontology)
counts = term_annotation_counts(annotation_map, ontology)
table = build_ic_table(counts, annotation_map.feature_universe_size)

print("propagated annotation counts and information content:")
for term in sorted(ontology.terms):
    print(f"  {term}: count {counts[term]}, ic {table.ic[term]:.3f}")

print(f"\ngenq of the root alone: {genq({'T0'}, table):.3f}  (probability 1, maximally general)")
print(f"genq of one leaf:       {genq({'T4'}, table):.3f}  (maximal information content)")
print(f"genq of {{T1}}:           {genq({'T1'}, table):.3f}")

starting = StartingTermSets(
    per_class={"green": frozenset({"T4"}), "red": frozenset({"T5", "T6", "T8"})},
    selected_features={},
)
generalized = selective_staircase(ontology, starting, 0.0)
baselines = baseline_genq(starting, table)
print("\nper class, generalized vs direct-mapping baseline:")
for label in sorted(generalized.per_class):
    score = genq(generalized.per_class[label], table)
    print(f"  {label}: genq {score:.3f} vs baseline {baselines[label]:.3f}")

report = build_report(generalized, starting, table, ontology)
print("\nrendered text report:")
print(render_report(report, "text"))
print("rendered CSV report:")
print(render_report(report, "csv"))
