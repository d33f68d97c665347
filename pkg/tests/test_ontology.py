import random

import pytest

from reex import CycleError, ParseError, UnknownTermError, parse_obo
from reex.ontology import ALL_RELATIONS, RelationKind, relation_kinds_from_names

from synthutil import brute_lca, closure_down, closure_up, random_dag

# The toy DAG as published: term 7 omitted from the edge set.
TOY_SEVEN_EDGE_OBO = """\
[Term]
id: T0

[Term]
id: T1
is_a: T0

[Term]
id: T2
is_a: T0

[Term]
id: T3
is_a: T0

[Term]
id: T4
is_a: T1

[Term]
id: T5
is_a: T2

[Term]
id: T6
is_a: T2

[Term]
id: T7

[Term]
id: T8
is_a: T3
"""


class TestParse:
    def test_minimal_document(self):
        o = parse_obo("[Term]\nid: A\n\n[Term]\nid: B\nis_a: A\n")
        assert sorted(o.terms) == ["A", "B"]
        assert o.edges == {("B", "A", RelationKind.IS_A)}

    def test_toy_dag_term_and_edge_counts(self):
        o = parse_obo(TOY_SEVEN_EDGE_OBO)
        assert len(o) == 9
        assert len(o.edges) == 7

    def test_obsolete_term_absent(self):
        o = parse_obo("[Term]\nid: A\n\n[Term]\nid: B\nis_obsolete: true\n")
        assert "B" not in o
        assert sorted(o.terms) == ["A"]

    def test_edges_to_obsolete_terms_dropped(self):
        text = "[Term]\nid: A\nis_obsolete: true\n\n[Term]\nid: B\nis_a: A\n"
        o = parse_obo(text)
        assert sorted(o.terms) == ["B"]
        assert not o.edges

    def test_missing_id_reports_line(self):
        with pytest.raises(ParseError) as err:
            parse_obo("[Term]\nid: A\n\n[Term]\nname: nameless\n")
        assert err.value.line == 4

    def test_dangling_parent_becomes_placeholder(self):
        o = parse_obo("[Term]\nid: B\nis_a: A\n")
        assert "A" in o
        assert o.name_of("A") == ""

    def test_names_namespaces_and_comments(self):
        o = parse_obo(
            "[Term]\nid: A\nname: alpha\nnamespace: proc\n\n"
            "[Term]\nid: B\nis_a: A ! alpha\n"
        )
        assert o.name_of("A") == "alpha"
        assert o.terms["A"].namespace == "proc"
        assert o.parents("B") == {"A"}

    def test_crlf_accepted(self):
        unix = parse_obo("[Term]\nid: A\n\n[Term]\nid: B\nis_a: A\n")
        dos = parse_obo("[Term]\r\nid: A\r\n\r\n[Term]\r\nid: B\r\nis_a: A\r\n")
        assert unix.terms == dos.terms
        assert unix.edges == dos.edges

    def test_relationship_kinds(self):
        text = (
            "[Term]\nid: A\n\n[Term]\nid: B\n"
            "relationship: part_of A\n"
            "relationship: regulates A\n"
            "relationship: negatively_regulates A\n"
            "relationship: positively_regulates A\n"
        )
        o = parse_obo(text)
        kinds = {kind for _, _, kind in o.edges}
        assert kinds == {
            RelationKind.PART_OF,
            RelationKind.REGULATES,
            RelationKind.NEGATIVELY_REGULATES,
            RelationKind.POSITIVELY_REGULATES,
        }

    def test_unknown_relationship_recorded_not_traversed(self):
        o = parse_obo("[Term]\nid: A\n\n[Term]\nid: B\nrelationship: develops_from A\n")
        assert o.unknown_edges == (("B", "develops_from", "A"),)
        assert not o.edges
        assert o.parents("B") == set()

    def test_inactive_relations_not_traversed(self):
        text = "[Term]\nid: A\n\n[Term]\nid: B\nis_a: A\nrelationship: part_of A\n"
        o = parse_obo(text, active_relations={RelationKind.IS_A})
        assert o.parents("B") == {"A"}
        assert len(o.edges) == 2  # both stored, one active

    def test_cycle_reported(self):
        with pytest.raises(CycleError) as err:
            parse_obo("[Term]\nid: A\nis_a: B\n\n[Term]\nid: B\nis_a: A\n")
        assert set(err.value.cycle) >= {"A", "B"}

    def test_cycle_through_inactive_relation_allowed(self):
        text = "[Term]\nid: A\nrelationship: part_of B\n\n[Term]\nid: B\nis_a: A\n"
        o = parse_obo(text, active_relations={RelationKind.IS_A})
        assert o.parents("B") == {"A"}

    def test_parse_determinism(self):
        a = parse_obo(TOY_SEVEN_EDGE_OBO)
        b = parse_obo(TOY_SEVEN_EDGE_OBO)
        assert a.terms == b.terms and a.edges == b.edges

    def test_unrecognized_keys_ignored(self):
        o = parse_obo("[Term]\nid: A\ndef: something\nxref: EC:1.1\nsynonym: x\n")
        assert sorted(o.terms) == ["A"]

    def test_typedef_stanzas_ignored(self):
        o = parse_obo("[Typedef]\nid: part_of\n\n[Term]\nid: A\n")
        assert sorted(o.terms) == ["A"]

    def test_relation_names_helper(self):
        kinds = relation_kinds_from_names(["is_a", "part_of"])
        assert kinds == {RelationKind.IS_A, RelationKind.PART_OF}
        with pytest.raises(ValueError):
            relation_kinds_from_names(["partof"])


class TestQueries:
    def test_toy_parents(self, toy_ontology):
        assert toy_ontology.parents("T4") == {"T1"}
        assert toy_ontology.parents("T0") == set()

    def test_diamond_parents(self, diamond_ontology):
        assert diamond_ontology.parents("D") == {"B", "C"}

    def test_toy_descendants(self, toy_ontology):
        assert toy_ontology.descendants("T2") == {"T2", "T5", "T6"}
        assert toy_ontology.descendants("T0") == {f"T{i}" for i in range(9)}
        assert toy_ontology.descendants("T5") == {"T5"}

    def test_unknown_term_raises(self, toy_ontology):
        with pytest.raises(UnknownTermError):
            toy_ontology.parents("T99")
        with pytest.raises(UnknownTermError):
            toy_ontology.descendants("T99")

    def test_toy_lca(self, toy_ontology):
        assert toy_ontology.lowest_common_ancestor("T5", "T6") == ("T2", 1)
        # both sit two steps below the root, their only common ancestor
        assert toy_ontology.lowest_common_ancestor("T8", "T5") == ("T0", 2)

    def test_lca_disconnected_returns_none(self):
        o = parse_obo("[Term]\nid: A\n\n[Term]\nid: B\n")
        assert o.lowest_common_ancestor("A", "B") is None

    def test_lca_same_term_rejected(self, toy_ontology):
        with pytest.raises(ValueError):
            toy_ontology.lowest_common_ancestor("T4", "T4")

    def test_lca_of_ancestor_pair_is_the_ancestor(self, toy_ontology):
        assert toy_ontology.lowest_common_ancestor("T2", "T5") == ("T2", 0)

    def test_lca_tie_breaks_lexicographically(self):
        # D reaches both B and C in one step; B wins by identifier
        o = parse_obo(
            "[Term]\nid: B\n\n[Term]\nid: C\n\n"
            "[Term]\nid: D\nis_a: B\nis_a: C\n\n"
            "[Term]\nid: E\nis_a: B\nis_a: C\n"
        )
        assert o.lowest_common_ancestor("D", "E") == ("B", 1)


class TestProperties:
    def test_descendants_reflexive_and_closed(self):
        rng = random.Random(11)
        for _ in range(20):
            o = random_dag(rng, rng.randint(2, 40))
            for t in o.terms:
                below = o.descendants(t)
                assert t in below
                for u in below:
                    for child in o.children(u):
                        assert child in below

    def test_parents_descendants_consistency(self):
        rng = random.Random(12)
        for _ in range(20):
            o = random_dag(rng, rng.randint(2, 40))
            for t in o.terms:
                for parent in o.parents(t):
                    assert t in o.descendants(parent)

    def test_closures_match_independent_recomputation(self):
        rng = random.Random(13)
        for _ in range(10):
            o = random_dag(rng, rng.randint(2, 30))
            for t in o.terms:
                assert o.descendants(t) == closure_down(o, t)
                assert o.ancestors(t) == closure_up(o, t)

    def test_lca_matches_brute_force(self):
        rng = random.Random(14)
        for _ in range(30):
            o = random_dag(rng, rng.randint(2, 50))
            ids = sorted(o.terms)
            for _ in range(20):
                a, b = rng.sample(ids, 2)
                got = o.lowest_common_ancestor(a, b)
                assert got == brute_lca(o, a, b)
                if got is not None:
                    anc, _ = got
                    assert anc in closure_up(o, a) & closure_up(o, b)

    def test_random_dags_topologically_sortable(self):
        # construction succeeding is the acyclicity check itself
        rng = random.Random(15)
        for _ in range(20):
            random_dag(rng, rng.randint(2, 60))
