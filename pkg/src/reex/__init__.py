"""Generalize per-instance model explanations into class-level semantic terms.

The pipeline: parse an ontology and a feature-to-term mapping, aggregate
per-instance explanation vectors per class, select each class's most
important features by dynamic thresholding, map them to starting term
sets, generalize those over the ontology (selective staircase or
ancestry), and score the result with GenQ against the direct-mapping
baseline.
"""

from .errors import (
    ConvergenceError,
    CycleError,
    ParseError,
    ReexError,
    SchemaError,
    UnknownTermError,
)
from .explanations import (
    AggregatedImportance,
    ExplanationSet,
    Instance,
    StartingTermSets,
    aggregate,
    dynamic_threshold,
    parse_explanations,
    to_starting_terms,
)
from .mapping import AnnotationMap, convert_pairs, parse_mapping, term_annotation_counts
from .metrics import (
    GenQReport,
    ICTable,
    baseline_genq,
    build_ic_table,
    build_report,
    genq,
    render_report,
    report_from_json,
)
from .ontology import ALL_RELATIONS, Ontology, RelationKind, Term, parse_obo
from .reasoning import (
    ClassTermSets,
    ReasoningConfig,
    ancestry,
    generalize,
    intersection_ratio,
    selective_staircase,
)

__version__ = "0.1.0"

__all__ = [
    "ALL_RELATIONS",
    "AggregatedImportance",
    "AnnotationMap",
    "ClassTermSets",
    "ConvergenceError",
    "CycleError",
    "ExplanationSet",
    "GenQReport",
    "ICTable",
    "Instance",
    "Ontology",
    "ParseError",
    "ReasoningConfig",
    "ReexError",
    "RelationKind",
    "SchemaError",
    "StartingTermSets",
    "Term",
    "UnknownTermError",
    "aggregate",
    "ancestry",
    "baseline_genq",
    "build_ic_table",
    "build_report",
    "convert_pairs",
    "dynamic_threshold",
    "generalize",
    "genq",
    "intersection_ratio",
    "parse_explanations",
    "parse_mapping",
    "parse_obo",
    "render_report",
    "report_from_json",
    "selective_staircase",
    "term_annotation_counts",
    "to_starting_terms",
]
