import random
from collections import Counter

import pytest

from reex import (
    ConvergenceError,
    ReasoningConfig,
    StartingTermSets,
    ancestry,
    generalize,
    intersection_ratio,
    parse_obo,
    selective_staircase,
)

from synthutil import closure_down, closure_up, random_dag, random_start_sets, staircase_zero_oracle


def start_sets(**per_class):
    return StartingTermSets(
        per_class={label: frozenset(terms) for label, terms in per_class.items()},
        selected_features={},
    )


class TestIntersectionRatio:
    def test_toy_values(self, toy_ontology, toy_start):
        assert intersection_ratio(toy_ontology, toy_start, "green", "T0") == 1.0
        assert intersection_ratio(toy_ontology, toy_start, "red", "T2") == 0.0
        assert intersection_ratio(toy_ontology, toy_start, "green", "T1") == 0.0

    def test_reflexive_containment(self, toy_ontology):
        # another class's starting term equal to the candidate itself counts
        start = start_sets(a={"T4"}, b={"T2"})
        assert intersection_ratio(toy_ontology, start, "a", "T2") == 1.0

    def test_partial_ratio(self, toy_ontology):
        start = start_sets(a={"T4"}, b={"T5", "T8"})
        assert intersection_ratio(toy_ontology, start, "a", "T2") == 0.5

    def test_no_other_starting_terms_defaults_to_zero(self, toy_ontology):
        start = start_sets(only={"T4"})
        assert intersection_ratio(toy_ontology, start, "only", "T0") == 0.0

    def test_matches_counter_based_rewrite(self):
        from reex.reasoning import _ratio_fn

        rng = random.Random(41)
        for _ in range(20):
            o = random_dag(rng, rng.randint(3, 40))
            start = random_start_sets(rng, o, n_classes=3)
            for label in start.per_class:
                fast = _ratio_fn(o, start, label)
                for t in sorted(o.terms):
                    assert fast(t) == pytest.approx(
                        intersection_ratio(o, start, label, t), abs=1e-12
                    )


class TestSelectiveStaircase:
    def test_toy_golden(self, toy_ontology, toy_start):
        result = selective_staircase(toy_ontology, toy_start, 0.0)
        assert result.per_class["green"] == {"T1": 1}
        assert result.per_class["red"] == {"T2": 1, "T3": 1}
        assert result.converged == {"green": True, "red": True}

    def test_toy_threshold_one_lifts_to_root(self, toy_ontology, toy_start):
        result = selective_staircase(toy_ontology, toy_start, 1.0)
        assert result.per_class["green"] == {"T0": 2}
        assert result.per_class["red"] == {"T0": 2}

    def test_root_start_unchanged(self, toy_ontology):
        result = selective_staircase(toy_ontology, start_sets(a={"T0"}, b={"T5"}), 0.0)
        assert result.per_class["a"] == {"T0": 0}

    def test_empty_class_converges_flagged(self, toy_ontology):
        result = selective_staircase(toy_ontology, start_sets(a=set(), b={"T5"}), 0.0)
        assert result.per_class["a"] == {}
        assert result.converged["a"]
        assert result.empty_start == {"a"}

    def test_single_class_lifts_to_root(self, toy_ontology):
        result = selective_staircase(toy_ontology, start_sets(only={"T4", "T5"}), 0.0)
        assert result.per_class["only"] == {"T0": 2}

    def test_diamond_keeps_both_parents(self, diamond_ontology):
        # D lifts into B and C in the same pass; blockers keep A out
        start = start_sets(x={"D"}, y={"A"})
        result = selective_staircase(diamond_ontology, start, 0.0)
        assert result.per_class["x"] == {"B": 1, "C": 1}

    def test_threshold_validated(self, toy_ontology, toy_start):
        with pytest.raises(ValueError):
            selective_staircase(toy_ontology, toy_start, 1.5)

    def test_deterministic(self, toy_ontology, toy_start):
        a = selective_staircase(toy_ontology, toy_start, 0.2)
        b = selective_staircase(toy_ontology, toy_start, 0.2)
        assert a.per_class == b.per_class

    def test_parallel_classes_match_serial(self):
        rng = random.Random(42)
        for _ in range(10):
            o = random_dag(rng, 30)
            start = random_start_sets(rng, o, n_classes=4)
            serial = selective_staircase(o, start, 0.2, workers=1)
            parallel = selective_staircase(o, start, 0.2, workers=4)
            assert serial.per_class == parallel.per_class

    def test_outputs_are_ancestors_of_starts(self):
        rng = random.Random(43)
        for _ in range(25):
            o = random_dag(rng, rng.randint(3, 40))
            start = random_start_sets(rng, o, n_classes=3)
            result = selective_staircase(o, start, rng.choice([0.0, 0.2, 0.5]))
            for label, members in result.per_class.items():
                starts = start.per_class[label]
                covers = set()
                for s in starts:
                    covers.update(closure_up(o, s))
                for term in members:
                    assert term in covers

    def test_threshold_zero_output_avoids_other_classes(self):
        rng = random.Random(44)
        for _ in range(25):
            o = random_dag(rng, rng.randint(3, 40))
            start = random_start_sets(rng, o, n_classes=3)
            result = selective_staircase(o, start, 0.0)
            for label, members in result.per_class.items():
                others = set()
                for other, terms in start.per_class.items():
                    if other != label:
                        others.update(terms)
                for term, depth in members.items():
                    if depth > 0:
                        assert not (closure_down(o, term) & others)

    def test_matches_zero_threshold_oracle(self):
        rng = random.Random(45)
        for _ in range(30):
            o = random_dag(rng, rng.randint(3, 50))
            start = random_start_sets(rng, o, n_classes=rng.randint(2, 3))
            result = selective_staircase(o, start, 0.0)
            for label in start.per_class:
                expected = staircase_zero_oracle(o, start, label)
                assert set(result.per_class[label]) == expected

    def test_acceptance_monotone_in_threshold(self):
        rng = random.Random(46)
        from reex.reasoning import _ratio_fn

        for _ in range(10):
            o = random_dag(rng, 30)
            start = random_start_sets(rng, o, n_classes=3)
            for label, terms in start.per_class.items():
                ratio = _ratio_fn(o, start, label)
                gathered = sorted({p for t in terms for p in o.parents(t)})
                lo = {p for p in gathered if ratio(p) <= 0.1}
                hi = {p for p in gathered if ratio(p) <= 0.4}
                assert lo <= hi


class TestAncestry:
    def test_toy_green_singleton_never_generalized(self, toy_ontology, toy_start):
        for seed in range(20):
            result = ancestry(toy_ontology, toy_start, 1e-6, seed)
            assert result.per_class["green"] == {"T4": 0}

    def test_toy_red_outcomes(self, toy_ontology, toy_start):
        outcomes = Counter()
        for seed in range(60):
            result = ancestry(toy_ontology, toy_start, 1e-6, seed)
            outcomes[frozenset(result.per_class["red"])] += 1
        assert set(outcomes) == {
            frozenset({"T2", "T8"}),
            frozenset({"T5", "T6", "T8"}),
        }

    def test_accepted_pair_depth_bookkeeping(self, toy_ontology, toy_start):
        for seed in range(60):
            result = ancestry(toy_ontology, toy_start, 1e-6, seed)
            red = result.per_class["red"]
            if "T2" in red:
                assert red == {"T2": 1, "T8": 0}

    def test_tiny_weight_only_accepts_clean_ancestors(self, toy_ontology):
        # any nonzero ratio blows the acceptance test up at weight 1e-6
        start = start_sets(a={"T5", "T8"}, b={"T4"})
        for seed in range(10):
            result = ancestry(toy_ontology, start, 1e-6, seed)
            assert result.per_class["a"] == {"T5": 0, "T8": 0}

    def test_large_weight_accepts_contaminated_ancestor(self, toy_ontology):
        start = start_sets(a={"T5", "T8"}, b={"T4"})
        result = ancestry(toy_ontology, start, 10.0, seed=0)
        assert result.per_class["a"] == {"T0": 1}

    def test_same_seed_same_outcome(self, toy_ontology, toy_start):
        a = ancestry(toy_ontology, toy_start, 1e-6, seed=7)
        b = ancestry(toy_ontology, toy_start, 1e-6, seed=7)
        assert a.per_class == b.per_class

    def test_parallel_classes_match_serial(self, toy_ontology, toy_start):
        for seed in range(10):
            serial = ancestry(toy_ontology, toy_start, 1e-6, seed, workers=1)
            parallel = ancestry(toy_ontology, toy_start, 1e-6, seed, workers=4)
            assert serial.per_class == parallel.per_class

    def test_pair_without_common_ancestor_skipped(self):
        o = parse_obo("[Term]\nid: A\n\n[Term]\nid: B\n\n[Term]\nid: Z\n")
        start = start_sets(a={"A", "B"}, b={"Z"})
        result = ancestry(o, start, 10.0, seed=0)
        assert result.per_class["a"] == {"A": 0, "B": 0}
        assert result.converged["a"]

    def test_weight_validated(self, toy_ontology, toy_start):
        with pytest.raises(ValueError):
            ancestry(toy_ontology, toy_start, 0.0)

    def test_generalized_terms_cover_two_starts(self):
        rng = random.Random(47)
        for _ in range(25):
            o = random_dag(rng, rng.randint(4, 40))
            start = random_start_sets(rng, o, n_classes=2, terms_per_class=5)
            result = ancestry(o, start, rng.choice([1e-6, 0.5, 3.0]), seed=rng.randint(0, 999))
            for label, members in result.per_class.items():
                starts = start.per_class[label]
                for term, depth in members.items():
                    if depth > 0:
                        covered = sum(1 for s in starts if term in closure_up(o, s))
                        assert covered >= 2

    def test_term_count_never_grows(self):
        rng = random.Random(48)
        for _ in range(25):
            o = random_dag(rng, rng.randint(4, 40))
            start = random_start_sets(rng, o, n_classes=2, terms_per_class=5)
            result = ancestry(o, start, 3.0, seed=rng.randint(0, 999))
            for label, members in result.per_class.items():
                assert len(members) <= len(start.per_class[label])


class TestTerminationAndConfig:
    def test_fuzzed_runs_converge_within_guard(self):
        rng = random.Random(49)
        for _ in range(100):
            o = random_dag(rng, rng.randint(2, 30))
            start = random_start_sets(rng, o, n_classes=rng.randint(1, 3))
            if rng.random() < 0.5:
                result = selective_staircase(o, start, rng.random())
            else:
                result = ancestry(o, start, rng.choice([1e-6, 0.3, 3.0]), seed=rng.randint(0, 99))
            assert all(result.converged.values())

    def test_guard_raises_when_too_tight(self, toy_ontology, toy_start):
        with pytest.raises(ConvergenceError):
            selective_staircase(toy_ontology, toy_start, 1.0, max_iterations=1)

    def test_config_dispatch(self, toy_ontology, toy_start):
        stair = generalize(toy_ontology, toy_start, ReasoningConfig(algorithm="staircase"))
        assert stair.per_class["green"] == {"T1": 1}
        anc = generalize(
            toy_ontology, toy_start, ReasoningConfig(algorithm="ancestry", seed=3)
        )
        assert anc.per_class["green"] == {"T4": 0}

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ReasoningConfig(algorithm="magic")
        with pytest.raises(ValueError):
            ReasoningConfig(threshold=2.0)
        with pytest.raises(ValueError):
            ReasoningConfig(weight=-1.0)
