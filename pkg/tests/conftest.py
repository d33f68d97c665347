import pytest

from reex import StartingTermSets, parse_obo

# Nine-term toy DAG: a root T0 over three branches, leaves T4/T7 under
# T1, T5/T6 under T2 and T8 under T3. Edges point child -> parent.
TOY_OBO = """\
[Term]
id: T0
name: T0-name

[Term]
id: T1
name: T1-name
is_a: T0

[Term]
id: T2
name: T2-name
is_a: T0

[Term]
id: T3
name: T3-name
is_a: T0

[Term]
id: T4
name: T4-name
is_a: T1

[Term]
id: T5
name: T5-name
is_a: T2

[Term]
id: T6
name: T6-name
is_a: T2

[Term]
id: T7
name: T7-name
is_a: T1

[Term]
id: T8
name: T8-name
is_a: T3
"""

# D sits under both B and C, which share the root A.
DIAMOND_OBO = """\
[Term]
id: A

[Term]
id: B
is_a: A

[Term]
id: C
is_a: A

[Term]
id: D
is_a: B
is_a: C
"""


@pytest.fixture(scope="session")
def toy_ontology():
    return parse_obo(TOY_OBO)


@pytest.fixture(scope="session")
def toy_start():
    return StartingTermSets(
        per_class={"green": frozenset({"T4"}), "red": frozenset({"T5", "T6", "T8"})},
        selected_features={},
    )


@pytest.fixture(scope="session")
def diamond_ontology():
    return parse_obo(DIAMOND_OBO)
