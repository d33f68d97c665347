"""Parse a small OBO document and poke at the DAG queries.

The ontology is a typed DAG whose edges point from specific terms toward
general ones. Every query below treats all five relation kinds the same
way; pass a smaller ``active_relations`` set to parse_obo to restrict.
"""
from reex import parse_obo

OBO = """\
[Term]
id: GO:0008150
name: biological_process

[Term]
id: GO:0008152
name: metabolic process
is_a: GO:0008150

[Term]
id: GO:0044237
name: cellular metabolic process
is_a: GO:0008152

[Term]
id: GO:0006091
name: energy metabolism
is_a: GO:0008152

[Term]
id: GO:0045333
name: cellular respiration
is_a: GO:0044237
relationship: part_of GO:0006091
"""

ontology = parse_obo(OBO)
print(f"parsed {len(ontology)} terms, {len(ontology.edges)} edges")

respiration = "GO:0045333"
print(f"\nparents of {respiration} ({ontology.name_of(respiration)}):")
for parent in sorted(ontology.parents(respiration)):
    print(f"  {parent}  {ontology.name_of(parent)}")

metabolic = "GO:0008152"
print(f"\ndescendants of {metabolic} (reflexive):")
for term in sorted(ontology.descendants(metabolic)):
    print(f"  {term}  {ontology.name_of(term)}")

# cellular respiration reaches energy metabolism via part_of, so the
# lowest common ancestor of the two branches sits below the root
anc, depth = ontology.lowest_common_ancestor("GO:0045333", "GO:0006091")
print(f"\nLCA(cellular respiration, energy metabolism) = {anc} at distance {depth}")

anc, depth = ontology.lowest_common_ancestor("GO:0044237", "GO:0006091")
print(f"LCA(cellular metabolic process, energy metabolism) = {anc} at distance {depth}")
