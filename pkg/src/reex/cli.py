"""Command line entry point.

Subcommands:
  reason    run the full pipeline and write a report
  sweep     run a Cartesian grid of configurations, emit a CSV summary
  genq      score explicit per-class term sets
  validate  parse-only checks of input files

The ``REEX_WORKERS`` environment variable bounds the worker pool used for
per-class reasoning and for sweep runs (default 1).
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

from .errors import ParseError, ReexError
from .explanations import (
    AggregatedImportance,
    aggregate,
    dynamic_threshold,
    parse_explanations,
    to_starting_terms,
)
from .mapping import parse_mapping, term_annotation_counts
from .metrics import build_ic_table, build_report, genq, render_report
from .ontology import ALL_RELATIONS, parse_obo, relation_kinds_from_names
from .reasoning import ReasoningConfig, ancestry, selective_staircase


@dataclass
class RunConfig:
    ontology_path: str
    mapping_path: str
    explanations_path: str
    algorithm: str = "staircase"
    threshold: float = 0.0
    weight: float = 1e-6
    min_terms: int = 10
    step: float = 0.975
    seed: int = 0
    use_absolute: bool = True
    relations: frozenset = ALL_RELATIONS
    include_misclassified: bool = False
    ic_dataset_features: bool = False
    output_path: str | None = None
    format: str = "text"


def workers_from_env():
    raw = os.environ.get("REEX_WORKERS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _read(path, what):
    try:
        with open(path, "rb") as handle:
            return handle.read()
    except OSError as exc:
        raise ReexError(f"cannot read {what} file {path!r}: {exc.strerror}") from exc


def _parse_file(parser, path, what, *args):
    data = _read(path, what)
    try:
        return parser(data, *args)
    except ReexError as exc:
        raise ReexError(f"{path}: {exc}") from exc


@dataclass
class LoadedInputs:
    ontology: object
    annotation_map: object
    explanations: object  # ExplanationSet or pre-aggregated importance


def load_inputs(cfg):
    ontology = _parse_file(parse_obo, cfg.ontology_path, "ontology", cfg.relations)
    annotation_map = _parse_file(parse_mapping, cfg.mapping_path, "mapping", ontology)
    explanations = _parse_file(parse_explanations, cfg.explanations_path, "explanations")
    return LoadedInputs(ontology, annotation_map, explanations)


def execute(cfg, inputs, workers=1):
    """Aggregate, threshold, reason and score. Returns the GenQ report."""
    ontology = inputs.ontology
    annotation_map = inputs.annotation_map

    if isinstance(inputs.explanations, AggregatedImportance):
        agg = inputs.explanations
    else:
        agg = aggregate(
            inputs.explanations,
            use_absolute=cfg.use_absolute,
            include_misclassified=cfg.include_misclassified,
        )

    selected = {}
    for label in agg.classes:
        _, features = dynamic_threshold(agg, label, cfg.min_terms, cfg.step)
        selected[label] = features
    starting = to_starting_terms(selected, annotation_map)

    reasoning_cfg = ReasoningConfig(
        algorithm=cfg.algorithm,
        threshold=cfg.threshold,
        weight=cfg.weight,
        seed=cfg.seed,
    )
    if cfg.algorithm == "staircase":
        sets = selective_staircase(ontology, starting, cfg.threshold, workers=workers)
    else:
        sets = ancestry(ontology, starting, cfg.weight, cfg.seed, workers=workers)

    ic_map = annotation_map
    if cfg.ic_dataset_features:
        ic_map = annotation_map.restricted_to(agg.features)
    counts = term_annotation_counts(ic_map, ontology)
    table = build_ic_table(counts, ic_map.feature_universe_size)
    return build_report(sets, starting, table, ontology), reasoning_cfg


def run_pipeline(cfg, workers=None):
    """Full pipeline for one configuration. Returns (report, rendered text)."""
    workers = workers_from_env() if workers is None else workers
    inputs = load_inputs(cfg)
    report, _ = execute(cfg, inputs, workers=workers)
    rendered = render_report(report, cfg.format)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(rendered)
    return report, rendered


SWEEP_COLUMNS = [
    "algorithm",
    "threshold",
    "weight",
    "min_terms",
    "step",
    "seed",
    "status",
    "error",
    "wall_time_s",
    "per_class_genq",
    "per_class_baseline_genq",
    "per_class_term_count",
    "per_class_baseline_term_count",
    "mean_genq",
    "mean_baseline_genq",
    "mean_depth",
]


def _packed(report, getter):
    parts = []
    for label in sorted(report.per_class):
        value = getter(report.per_class[label])
        parts.append(f"{label}={'' if value is None else value}")
    return ";".join(parts)


def _mean(values):
    values = [v for v in values if v is not None]
    return sum(values) / len(values) if values else ""


def run_sweep(base_cfg, grid, workers=None):
    """Run every configuration in the Cartesian product of ``grid``.

    ``grid`` maps RunConfig field names (threshold, weight, min_terms,
    seed, ...) to value lists. Inputs are loaded once and shared. A failed
    run is recorded in its row and the sweep continues. Returns CSV text
    with one row per configuration.
    """
    if not grid:
        raise ValueError("sweep grid is empty")
    for axis, values in grid.items():
        if not values:
            raise ValueError(f"sweep axis {axis!r} has no values")

    workers = workers_from_env() if workers is None else workers
    inputs = load_inputs(base_cfg)
    axes = sorted(grid)
    combos = list(itertools.product(*(grid[a] for a in axes)))
    configs = [replace(base_cfg, **dict(zip(axes, combo))) for combo in combos]

    def one_run(cfg):
        started = time.perf_counter()
        row = {
            "algorithm": cfg.algorithm,
            "threshold": cfg.threshold,
            "weight": cfg.weight,
            "min_terms": cfg.min_terms,
            "step": cfg.step,
            "seed": cfg.seed,
        }
        try:
            report, _ = execute(cfg, inputs, workers=1)
        except Exception as exc:  # noqa: BLE001 - a bad run must not kill the sweep
            row.update(status="error", error=str(exc), wall_time_s=time.perf_counter() - started)
            return row
        entries = report.per_class.values()
        row.update(
            status="ok",
            error="",
            wall_time_s=time.perf_counter() - started,
            per_class_genq=_packed(report, lambda e: e.genq),
            per_class_baseline_genq=_packed(report, lambda e: e.baseline_genq),
            per_class_term_count=_packed(report, lambda e: e.term_count),
            per_class_baseline_term_count=_packed(report, lambda e: e.baseline_term_count),
            mean_genq=_mean([e.genq for e in entries]),
            mean_baseline_genq=_mean([e.baseline_genq for e in entries]),
            mean_depth=_mean([e.mean_depth for e in entries]),
        )
        return row

    if workers > 1 and len(configs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one_run, configs))
    else:
        rows = [one_run(cfg) for cfg in configs]

    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=SWEEP_COLUMNS, lineterminator="\n", restval="")
    writer.writeheader()
    writer.writerows(rows)
    return out.getvalue()


# -- argument parsing --------------------------------------------------------


def _add_input_flags(parser):
    parser.add_argument("--ontology", required=True, help="OBO ontology file")
    parser.add_argument("--mapping", required=True, help="feature-to-term TSV mapping")
    parser.add_argument("--explanations", required=True, help="interchange JSON file")


def _add_run_flags(parser):
    parser.add_argument("--algorithm", choices=("staircase", "ancestry"), default="staircase")
    parser.add_argument("--threshold", type=float, default=0.0)
    parser.add_argument("--weight", type=float, default=1e-6)
    parser.add_argument("--min-terms", type=int, default=10)
    parser.add_argument("--step", type=float, default=0.975)
    parser.add_argument("--seed", type=int, default=0)
    absolute = parser.add_mutually_exclusive_group()
    absolute.add_argument("--absolute", dest="use_absolute", action="store_true", default=True,
                          help="aggregate absolute explanation values (default)")
    absolute.add_argument("--signed", dest="use_absolute", action="store_false",
                          help="aggregate signed explanation values")
    parser.add_argument("--relations", default=None,
                        help="comma-separated relation kinds to traverse "
                             "(default: is_a,part_of,regulates,negatively_regulates,positively_regulates)")
    parser.add_argument("--include-misclassified", action="store_true",
                        help="aggregate over all instances of a class, not only correct ones")
    parser.add_argument("--ic-dataset-features", action="store_true",
                        help="compute annotation priors from dataset features only")
    parser.add_argument("--output", default=None, help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")


def _csv_list(kind):
    def convert(raw):
        return [kind(part) for part in raw.split(",") if part.strip() != ""]

    return convert


def build_parser():
    parser = argparse.ArgumentParser(
        prog="reex",
        description="Generalize per-instance model explanations into class-level "
                    "semantic terms over a background ontology.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    reason = sub.add_parser("reason", help="run the full pipeline")
    _add_input_flags(reason)
    _add_run_flags(reason)

    sweep = sub.add_parser("sweep", help="run a parameter grid, emit a CSV summary")
    _add_input_flags(sweep)
    _add_run_flags(sweep)
    sweep.add_argument("--sweep-threshold", type=_csv_list(float), default=None,
                       help="comma-separated threshold values to sweep")
    sweep.add_argument("--sweep-weight", type=_csv_list(float), default=None,
                       help="comma-separated weight values to sweep")
    sweep.add_argument("--sweep-min-terms", type=_csv_list(int), default=None,
                       help="comma-separated min-terms values to sweep")
    sweep.add_argument("--sweep-seed", type=_csv_list(int), default=None,
                       help="comma-separated seeds to sweep")

    score = sub.add_parser("genq", help="score explicit term sets")
    score.add_argument("--ontology", required=True)
    score.add_argument("--mapping", required=True)
    score.add_argument("--terms", required=True,
                       help="TSV of class<TAB>term[,term...] lines")
    score.add_argument("--relations", default=None)
    score.add_argument("--output", default=None)
    score.add_argument("--format", choices=("text", "json", "csv"), default="text")

    validate = sub.add_parser("validate", help="parse inputs and report what they hold")
    validate.add_argument("--ontology", default=None)
    validate.add_argument("--mapping", default=None)
    validate.add_argument("--explanations", default=None)
    validate.add_argument("--relations", default=None)

    return parser


def _relations_from(args):
    if args.relations is None:
        return ALL_RELATIONS
    return relation_kinds_from_names(args.relations.split(","))


def _config_from(args):
    return RunConfig(
        ontology_path=args.ontology,
        mapping_path=args.mapping,
        explanations_path=args.explanations,
        algorithm=args.algorithm,
        threshold=args.threshold,
        weight=args.weight,
        min_terms=args.min_terms,
        step=args.step,
        seed=args.seed,
        use_absolute=args.use_absolute,
        relations=_relations_from(args),
        include_misclassified=args.include_misclassified,
        ic_dataset_features=args.ic_dataset_features,
        output_path=args.output,
        format=args.format,
    )


def _emit(text, output_path):
    if output_path:
        with open(output_path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_reason(args):
    cfg = _config_from(args)
    _, rendered = run_pipeline(cfg)
    if not cfg.output_path:
        sys.stdout.write(rendered)
    return 0


def _cmd_sweep(args):
    cfg = _config_from(args)
    grid = {}
    if args.sweep_threshold:
        grid["threshold"] = args.sweep_threshold
    if args.sweep_weight:
        grid["weight"] = args.sweep_weight
    if args.sweep_min_terms:
        grid["min_terms"] = args.sweep_min_terms
    if args.sweep_seed:
        grid["seed"] = args.sweep_seed
    if not grid:
        raise ReexError("sweep needs at least one --sweep-* axis")
    summary = run_sweep(cfg, grid)
    _emit(summary, args.output)
    return 0


def parse_term_sets(text):
    """Parse ``class<TAB>term[,term...]`` lines into per-class term sets."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    sets = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, sep, rest = line.partition("\t")
        if not sep:
            raise ParseError(f"expected class<TAB>terms, got {line!r}", line=lineno)
        terms = {t.strip() for t in rest.split(",") if t.strip()}
        sets.setdefault(label.strip(), set()).update(terms)
    if not sets:
        raise ParseError("term-set file holds no class lines")
    return {label: frozenset(terms) for label, terms in sets.items()}


def _cmd_genq(args):
    ontology = _parse_file(parse_obo, args.ontology, "ontology", _relations_from(args))
    annotation_map = _parse_file(parse_mapping, args.mapping, "mapping", ontology)
    term_sets = _parse_file(parse_term_sets, args.terms, "term-set")
    counts = term_annotation_counts(annotation_map, ontology)
    table = build_ic_table(counts, annotation_map.feature_universe_size)
    scores = {label: genq(terms, table) for label, terms in sorted(term_sets.items()) if terms}

    if args.format == "json":
        text = json.dumps(scores, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["class", "genq"])
        for label in sorted(scores):
            writer.writerow([label, repr(scores[label])])
        text = out.getvalue()
    else:
        text = "".join(f"{label}\t{scores[label]!r}\n" for label in sorted(scores))
    _emit(text, args.output)
    return 0


def _cmd_validate(args):
    if not (args.ontology or args.mapping or args.explanations):
        raise ReexError("validate needs at least one of --ontology/--mapping/--explanations")
    lines = []
    ontology = None
    if args.ontology:
        ontology = _parse_file(parse_obo, args.ontology, "ontology", _relations_from(args))
        lines.append(f"ontology: {len(ontology)} terms, {len(ontology.edges)} edges")
    if args.mapping:
        annotation_map = _parse_file(parse_mapping, args.mapping, "mapping", ontology)
        lines.append(
            f"mapping: {annotation_map.feature_universe_size} features, "
            f"{annotation_map.dropped_terms} unknown terms dropped"
        )
    if args.explanations:
        loaded = _parse_file(parse_explanations, args.explanations, "explanations")
        if isinstance(loaded, AggregatedImportance):
            lines.append(
                f"explanations: pre-aggregated, {len(loaded.classes)} classes, "
                f"{len(loaded.features)} features"
            )
        else:
            lines.append(
                f"explanations: {len(loaded.instances)} instances, "
                f"{len(loaded.classes)} classes, {len(loaded.features)} features"
            )
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


_COMMANDS = {
    "reason": _cmd_reason,
    "sweep": _cmd_sweep,
    "genq": _cmd_genq,
    "validate": _cmd_validate,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ReexError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
