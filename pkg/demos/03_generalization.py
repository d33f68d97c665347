"""The two generalization procedures on a nine-term toy DAG.

Terms T0..T8 form three branches below the root T0. The green class
starts from {T4}, the red class from {T5, T6, T8}. At threshold 0 the
staircase lifts each branch exactly one level and then rejects the root,
because the root has starting terms of both classes among its
descendants. Ancestry is randomized: red either merges T5 and T6 into T2
or stalls immediately, depending on how the pairs are drawn.
"""
from collections import Counter

from reex import StartingTermSets, ancestry, intersection_ratio, parse_obo, selective_staircase

OBO = "\n".join(
    ["[Term]\nid: T0\nname: T0-name"]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T0" for i in (1, 2, 3)]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T1" for i in (4, 7)]
    + [f"[Term]\nid: T{i}\nname: T{i}-name\nis_a: T2" for i in (5, 6)]
    + ["[Term]\nid: T8\nname: T8-name\nis_a: T3"]
)

ontology = parse_obo(OBO)
starting = StartingTermSets(
    per_class={"green": frozenset({"T4"}), "red": frozenset({"T5", "T6", "T8"})},
    selected_features={},
)

print("intersection ratios seen from the green class:")
for term in ("T1", "T2", "T0"):
    ratio = intersection_ratio(ontology, starting, "green", term)
    print(f"  {term}: {ratio:.2f}")

print("\nselective staircase, threshold 0:")
result = selective_staircase(ontology, starting, 0.0)
for label in sorted(result.per_class):
    print(f"  {label}: {dict(sorted(result.per_class[label].items()))}")

print("\nselective staircase, threshold 1 (anything goes, so both hit the root):")
result = selective_staircase(ontology, starting, 1.0)
for label in sorted(result.per_class):
    print(f"  {label}: {dict(sorted(result.per_class[label].items()))}")

print("\nancestry, weight 1e-6, 100 seeds:")
outcomes = Counter()
for seed in range(100):
    result = ancestry(ontology, starting, 1e-6, seed)
    outcomes[frozenset(result.per_class["red"])] += 1
for outcome, count in sorted(outcomes.items(), key=lambda kv: -kv[1]):
    print(f"  red -> {sorted(outcome)} in {count} runs")
print("  green stays {'T4'} in every run: a single term has no partner to pair with")
