"""Class-wise term generalization over the ontology.

Two fixed-point procedures are provided. ``selective_staircase`` lifts
every term to all of its acceptable parents each pass and is fully
deterministic. ``ancestry`` pairs terms at random and lifts each pair to
its lowest common ancestor, so outcomes depend on the seed.

Acceptance in both cases is governed by the intersection ratio: the
fraction of the *other* classes' starting terms that sit inside the
candidate ancestor's (reflexive) descendant set.
"""
from __future__ import annotations

import logging
import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import ConvergenceError

log = logging.getLogger(__name__)


@dataclass
class ClassTermSets:
    """Per-class ``{term: generalization depth}`` plus convergence flags.

    Starting terms carry depth 0; every accepted generalization records
    one more step than the deepest term it absorbed.
    """

    per_class: dict
    converged: dict
    empty_start: frozenset = frozenset()

    def terms_of(self, label):
        return set(self.per_class[label])


@dataclass
class ReasoningConfig:
    algorithm: str = "staircase"  # staircase | ancestry
    threshold: float = 0.0  # staircase only
    weight: float = 1e-6  # ancestry only
    seed: int = 0  # ancestry only
    max_iterations: int | None = None

    def __post_init__(self):
        if self.algorithm not in ("staircase", "ancestry"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if not 0.0 <= self.threshold <= 1.0:
            raise ValueError(f"threshold must be in [0, 1], got {self.threshold}")
        if self.weight <= 0.0:
            raise ValueError(f"weight must be > 0, got {self.weight}")


def intersection_ratio(ontology, starting, label, term_id):
    """Fraction of other classes' starting terms below ``term_id``.

    Descendant containment is reflexive, so another class's starting term
    equal to ``term_id`` itself counts. Returns 0 when the other classes
    have no starting terms at all.
    """
    others = set()
    for other_label, terms in starting.per_class.items():
        if other_label != label:
            others.update(terms)
    if not others:
        log.warning("class %r has no other-class starting terms; ratio defaults to 0", label)
        return 0.0
    below = ontology.descendants(term_id)
    return len(others & below) / len(others)


def _other_start_counter(ontology, starting, label):
    """Counter of how many other-class starting terms sit below each term.

    ``counter[t] / total`` equals :func:`intersection_ratio` for ``t``:
    a starting term lies in ``descendants(t)`` exactly when ``t`` lies in
    its reflexive ancestor closure.
    """
    others = set()
    for other_label, terms in starting.per_class.items():
        if other_label != label:
            others.update(terms)
    counter = Counter()
    for term in others:
        counter.update(ontology.ancestors(term))
    return counter, len(others)


def _ratio_fn(ontology, starting, label):
    counter, total = _other_start_counter(ontology, starting, label)
    if total == 0:
        log.warning("class %r has no other-class starting terms; ratio defaults to 0", label)
        return lambda term: 0.0
    return lambda term: counter[term] / total


def _pass_limit(ontology, max_iterations):
    # one pass per term is a safe bound: every changing pass strictly
    # lowers some member in topological order
    return max_iterations if max_iterations is not None else max(len(ontology), 1)


def _run_per_class(labels, worker, workers):
    if workers > 1 and len(labels) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(worker, labels))
    else:
        results = [worker(label) for label in labels]
    return dict(zip(labels, results))


def selective_staircase(ontology, starting, threshold, max_iterations=None, workers=1):
    """Lift every class's terms to all acceptable parents until stable.

    Each pass gathers the parents of the current members (sorted order),
    accepts a parent when its intersection ratio is at most ``threshold``,
    records it at one more than the deepest member it absorbs, and removes
    the absorbed members. A class converges when a pass leaves its member
    set unchanged. Deterministic for fixed inputs.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    labels = sorted(starting.per_class)
    limit = _pass_limit(ontology, max_iterations)

    def run(label):
        return _staircase_class(ontology, starting, label, threshold, limit)

    results = _run_per_class(labels, run, workers)
    empty = frozenset(label for label in labels if not starting.per_class[label])
    return ClassTermSets(
        {label: results[label][0] for label in labels},
        {label: results[label][1] for label in labels},
        empty_start=empty,
    )


def _staircase_class(ontology, starting, label, threshold, limit):
    current = {term: 0 for term in sorted(starting.per_class[label])}
    if not current:
        return {}, True
    ratio = _ratio_fn(ontology, starting, label)

    for _ in range(limit):
        snapshot = dict(current)
        gathered = sorted({p for term in snapshot for p in ontology.parents(term)})
        changed = False
        for parent in gathered:
            if ratio(parent) > threshold:
                continue
            below = ontology.descendants(parent)
            absorbed = [m for m in current if m in below]
            if absorbed:
                new_depth = 1 + max(current[m] for m in absorbed)
            else:
                # every live descendant was already absorbed earlier in this
                # pass; the pass-start set still justifies the lift
                basis = [m for m in snapshot if m in below]
                new_depth = 1 + max(snapshot[m] for m in basis)
            if parent in current and all(m == parent for m in absorbed):
                continue  # would only re-absorb itself
            for m in absorbed:
                del current[m]
            current[parent] = new_depth
            changed = True
        if not changed:
            return current, True
    raise ConvergenceError(
        f"selective staircase for class {label!r} did not converge within {limit} passes"
    )


def ancestry(ontology, starting, weight, seed=0, max_iterations=None, workers=1):
    """Generalize random pairs of a class's terms into their lowest common ancestor.

    Each pass walks the unused terms in sorted order; every term draws a
    distinct unused partner uniformly at random. The pair's lowest common
    ancestor is accepted when ``ratio / (max(lca_distance, 1) * weight)``
    stays below one half; both inputs are then marked used and dropped at
    the end of the pass. A pass without any acceptance ends the class.

    Each class draws from its own random stream derived from ``(seed,
    label)``, so results do not depend on class scheduling.
    """
    if weight <= 0.0:
        raise ValueError(f"weight must be > 0, got {weight}")
    labels = sorted(starting.per_class)
    limit = _pass_limit(ontology, max_iterations)

    def run(label):
        rng = random.Random(f"{seed}:{label}")
        return _ancestry_class(ontology, starting, label, weight, rng, limit)

    results = _run_per_class(labels, run, workers)
    empty = frozenset(label for label in labels if not starting.per_class[label])
    return ClassTermSets(
        {label: results[label][0] for label in labels},
        {label: results[label][1] for label in labels},
        empty_start=empty,
    )


def _ancestry_class(ontology, starting, label, weight, rng, limit):
    current = {term: 0 for term in sorted(starting.per_class[label])}
    if not current:
        return {}, True
    ratio = _ratio_fn(ontology, starting, label)

    for _ in range(limit):
        if len(current) < 2:
            return current, True
        unused = set(current)
        used = set()
        additions = {}
        accepted_any = False
        for term in sorted(current):
            if term not in unused:
                continue
            partners = sorted(unused - {term})
            if not partners:
                continue
            partner = rng.choice(partners)
            found = ontology.lowest_common_ancestor(term, partner)
            if found is None:
                continue  # pair stays unused and may be redrawn next pass
            anc, lca_distance = found
            if ratio(anc) / (max(lca_distance, 1) * weight) < 0.5:
                depth = 1 + max(current[term], current[partner])
                additions[anc] = max(additions.get(anc, 0), depth)
                used.update((term, partner))
                unused.difference_update((term, partner))
                accepted_any = True
        if not accepted_any:
            return current, True
        for term in used:
            del current[term]
        for anc, depth in additions.items():
            current[anc] = max(current.get(anc, 0), depth)
    raise ConvergenceError(f"ancestry for class {label!r} did not converge within {limit} passes")


def generalize(ontology, starting, config, workers=1):
    """Dispatch to the configured algorithm."""
    if config.algorithm == "staircase":
        return selective_staircase(
            ontology, starting, config.threshold, config.max_iterations, workers
        )
    return ancestry(
        ontology, starting, config.weight, config.seed, config.max_iterations, workers
    )
