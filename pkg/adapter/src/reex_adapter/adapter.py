"""Mutual-information pruning and cross-validated per-instance explanation.

Produces the interchange JSON the core pipeline consumes: declared
classes, the pruned feature list, and one dense attribution vector per
instance with its true and predicted labels. For each cross-validation
fold the classifier is fit on the training split and every test instance
is explained against a background sampled from that split.
"""
from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass

import numpy as np
from sklearn.ensemble import GradientBoostingClassifier, RandomForestClassifier
from sklearn.feature_selection import mutual_info_classif
from sklearn.model_selection import StratifiedKFold
from sklearn.svm import SVC

from .shapley import kernel_attributions
from .tabular import Dataset, load_table_file

log = logging.getLogger(__name__)

CLASSIFIERS = {
    "gradient-boosting": GradientBoostingClassifier,
    "random-forest": RandomForestClassifier,
    "svm": SVC,
}

BACKGROUND_ROWS = 25


@dataclass
class AdapterConfig:
    dataset_path: str
    subset_size: int = 100
    classifier: str = "random-forest"
    folds: int = 10
    seed: int = 0

    def __post_init__(self):
        if self.classifier not in CLASSIFIERS:
            known = ", ".join(sorted(CLASSIFIERS))
            raise ValueError(f"unknown classifier {self.classifier!r} (known: {known})")
        if self.folds < 2:
            raise ValueError(f"folds must be >= 2, got {self.folds}")
        if self.subset_size < 1:
            raise ValueError(f"subset_size must be >= 1, got {self.subset_size}")


def prune_by_mutual_information(dataset, k, seed=0):
    """Keep the k features with the highest mutual information with the class.

    Ties keep the earlier column. Asking for more features than exist
    keeps everything and warns.
    """
    n_features = dataset.X.shape[1]
    if k > n_features:
        warnings.warn(
            f"subset size {k} exceeds the {n_features} available features; keeping all",
            stacklevel=2,
        )
        k = n_features
    scores = mutual_info_classif(dataset.X, dataset.y, random_state=seed)
    order = np.argsort(-scores, kind="stable")[:k]
    keep = np.sort(order)
    return Dataset(
        X=dataset.X[:, keep],
        y=dataset.y,
        feature_names=[dataset.feature_names[i] for i in keep],
        class_names=dataset.class_names,
    )


def _make_classifier(name, seed):
    if name == "svm":
        return SVC(probability=True, random_state=seed)
    return CLASSIFIERS[name](random_state=seed)


def explain_cross_validated(cfg, dataset=None):
    """Prune, cross-validate, explain every test instance once.

    Returns the interchange document as a dict; ``to_json`` renders it.
    """
    if dataset is None:
        dataset = load_table_file(cfg.dataset_path)

    _, class_counts = np.unique(dataset.y, return_counts=True)
    if class_counts.min() < cfg.folds:
        raise ValueError(
            f"every class needs at least {cfg.folds} instances for {cfg.folds}-fold "
            f"cross-validation; smallest class has {class_counts.min()}"
        )

    pruned = prune_by_mutual_information(dataset, cfg.subset_size, seed=cfg.seed)

    records = [None] * len(pruned.y)
    splitter = StratifiedKFold(n_splits=cfg.folds, shuffle=True, random_state=cfg.seed)
    for fold, (train_idx, test_idx) in enumerate(splitter.split(pruned.X, pruned.y)):
        try:
            model = _make_classifier(cfg.classifier, cfg.seed)
            model.fit(pruned.X[train_idx], pruned.y[train_idx])
            predicted = model.predict(pruned.X[test_idx])

            bg_rng = np.random.default_rng((cfg.seed, fold))
            bg_size = min(BACKGROUND_ROWS, len(train_idx))
            background = pruned.X[bg_rng.choice(train_idx, size=bg_size, replace=False)]
            model_classes = list(model.classes_)

            for row, pred in zip(test_idx, predicted):
                output_col = model_classes.index(pred)

                def predict(matrix, col=output_col):
                    return model.predict_proba(matrix)[:, col]

                attr_rng = np.random.default_rng((cfg.seed, fold, int(row)))
                values = kernel_attributions(predict, pruned.X[row], background, attr_rng)
                records[int(row)] = {
                    "true_class": str(pruned.y[row]),
                    "predicted_class": str(pred),
                    "values": [_pin(v) for v in values],
                }
        except Exception as exc:
            raise RuntimeError(f"fold {fold} failed: {exc}") from exc

    assert all(r is not None for r in records), "every instance must be explained exactly once"
    return {
        "classes": list(pruned.class_names),
        "features": list(pruned.feature_names),
        "instances": records,
        "provenance": {
            "classifier": cfg.classifier,
            "classifier_params": "library defaults",
            "folds": cfg.folds,
            "seed": cfg.seed,
            "subset_size": cfg.subset_size,
        },
    }


def _pin(value):
    # 17 significant digits round-trips doubles exactly and pins the text
    return float(f"{float(value):.17g}")


def to_json(document):
    return json.dumps(document, indent=2, sort_keys=True) + "\n"
