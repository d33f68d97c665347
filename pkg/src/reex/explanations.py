"""Per-instance explanation ingestion, class aggregation and thresholding.

The interchange document is JSON with exact field names::

    {"classes": [...], "features": [...],
     "instances": [{"true_class": ..., "predicted_class": ..., "values": [...]}, ...]}

A pre-aggregated variant carries ``per_class_importance`` instead of
``instances`` and skips the aggregation step.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import SchemaError

log = logging.getLogger(__name__)


@dataclass
class Instance:
    true_class: str
    predicted_class: str
    values: np.ndarray


@dataclass
class ExplanationSet:
    classes: list
    features: list
    instances: list


@dataclass
class AggregatedImportance:
    """Expected per-feature explanation value for each class.

    Classes that had no qualifying instance carry an all-zero vector and
    are listed in ``empty_classes``.
    """

    classes: list
    features: list
    per_class: dict
    empty_classes: frozenset = frozenset()


@dataclass
class StartingTermSets:
    """Per-class term sets obtained by mapping selected features."""

    per_class: dict
    selected_features: dict
    unmapped_features: int = 0
    empty_classes: frozenset = frozenset()


def _require(condition, message, path):
    if not condition:
        raise SchemaError(message, path)


def parse_explanations(data):
    """Parse interchange JSON into an :class:`ExplanationSet` or, for the
    pre-aggregated variant, an :class:`AggregatedImportance`."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    if isinstance(data, str):
        try:
            doc = json.loads(data)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"not valid JSON: {exc}", path="$") from exc
    else:
        doc = data

    _require(isinstance(doc, dict), "document must be a JSON object", "$")
    classes = doc.get("classes")
    _require(isinstance(classes, list) and classes, "non-empty list required", "classes")
    _require(all(isinstance(c, str) for c in classes), "class labels must be strings", "classes")
    features = doc.get("features")
    _require(isinstance(features, list) and features, "non-empty list required", "features")
    _require(all(isinstance(f, str) for f in features), "feature ids must be strings", "features")

    if "per_class_importance" in doc:
        return _parse_pre_aggregated(doc, classes, features)

    instances_doc = doc.get("instances")
    _require(isinstance(instances_doc, list), "list required", "instances")
    class_set = set(classes)
    instances = []
    for i, inst in enumerate(instances_doc):
        where = f"instances[{i}]"
        _require(isinstance(inst, dict), "object required", where)
        true_class = inst.get("true_class")
        _require(true_class in class_set, f"true_class {true_class!r} not in classes", f"{where}.true_class")
        predicted = inst.get("predicted_class")
        _require(predicted in class_set, f"predicted_class {predicted!r} not in classes", f"{where}.predicted_class")
        values = inst.get("values")
        _require(isinstance(values, list), "list of numbers required", f"{where}.values")
        _require(
            len(values) == len(features),
            f"instance {i} has {len(values)} values for {len(features)} features",
            f"{where}.values",
        )
        _require(
            all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in values),
            "list of numbers required",
            f"{where}.values",
        )
        instances.append(Instance(true_class, predicted, np.asarray(values, dtype=float)))
    return ExplanationSet(list(classes), list(features), instances)


def _parse_pre_aggregated(doc, classes, features):
    table = doc["per_class_importance"]
    _require(isinstance(table, dict), "object mapping class to vector required", "per_class_importance")
    per_class = {}
    empty = set()
    for label in classes:
        vector = table.get(label)
        if vector is None:
            per_class[label] = np.zeros(len(features))
            empty.add(label)
            continue
        where = f"per_class_importance.{label}"
        _require(isinstance(vector, list), "list of numbers required", where)
        _require(
            len(vector) == len(features),
            f"{len(vector)} values for {len(features)} features",
            where,
        )
        per_class[label] = np.asarray(vector, dtype=float)
    unknown = set(table) - set(classes)
    _require(not unknown, f"labels not declared in classes: {sorted(unknown)}", "per_class_importance")
    return AggregatedImportance(list(classes), list(features), per_class, frozenset(empty))


def aggregate(explanations, use_absolute=True, include_misclassified=False):
    """Mean explanation vector per class over its correctly classified instances.

    With ``include_misclassified`` every instance contributes to its true
    class regardless of the prediction. ``use_absolute`` takes magnitudes
    before averaging.
    """
    grouped = {label: [] for label in explanations.classes}
    for inst in explanations.instances:
        if include_misclassified or inst.true_class == inst.predicted_class:
            grouped[inst.true_class].append(inst.values)

    per_class = {}
    empty = set()
    width = len(explanations.features)
    for label, vectors in grouped.items():
        if not vectors:
            per_class[label] = np.zeros(width)
            empty.add(label)
            continue
        stacked = np.stack(vectors)
        if use_absolute:
            stacked = np.abs(stacked)
        per_class[label] = stacked.mean(axis=0)
    if empty:
        log.warning("no qualifying instances for classes: %s", sorted(empty))
    return AggregatedImportance(
        list(explanations.classes), list(explanations.features), per_class, frozenset(empty)
    )


def dynamic_threshold(aggregated, label, min_terms=10, step=0.975):
    """Lower a per-class threshold until enough features clear it.

    The threshold starts at the class's maximum value and is repeatedly
    multiplied by ``step`` until at least ``min_terms`` features have a
    value strictly greater than it. Once the threshold falls below the
    smallest positive value the selection is every positive feature.
    Returns ``(threshold, selected)`` with the selection sorted by value
    descending, ties by feature id.
    """
    if label not in aggregated.per_class:
        raise KeyError(f"unknown class {label!r}")
    if min_terms < 1:
        raise ValueError(f"min_terms must be >= 1, got {min_terms}")
    if not 0.0 < step < 1.0:
        raise ValueError(f"step must be in (0, 1), got {step}")

    values = aggregated.per_class[label]
    features = aggregated.features
    positive = [(float(v), f) for v, f in zip(values, features) if v > 0.0]
    if not positive:
        log.warning("class %r has no positive feature values; empty selection", label)
        return 0.0, []

    ranked = sorted(positive, key=lambda pair: (-pair[0], pair[1]))
    smallest = min(v for v, _ in positive)
    threshold = max(v for v, _ in positive)
    while True:
        threshold *= step
        selected = [f for v, f in ranked if v > threshold]
        if len(selected) >= min_terms or threshold < smallest:
            return threshold, selected


def to_starting_terms(selected, annotation_map):
    """Union the annotation terms of each class's selected features.

    ``selected`` maps class label to an ordered feature list. Features
    missing from the map are skipped and counted; a class whose every
    feature is unmapped ends up flagged with an empty set.
    """
    per_class = {}
    empty = set()
    unmapped = 0
    for label, feature_list in selected.items():
        terms = set()
        for feature in feature_list:
            feature_terms = annotation_map.by_feature.get(feature)
            if feature_terms is None:
                unmapped += 1
                continue
            terms.update(feature_terms)
        per_class[label] = frozenset(terms)
        if not terms:
            empty.add(label)
    if unmapped:
        log.warning("%d selected features had no annotation mapping", unmapped)
    return StartingTermSets(per_class, dict(selected), unmapped, frozenset(empty))
