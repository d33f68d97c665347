"""Information content, the GenQ generalization-quality score and reports.

A term's information content is the negative log of its annotation prior,
``ic(t) = -ln(count(t) / universe)``. GenQ of a term set is one minus the
normalized mean information content,

    genq(T) = 1 - (sum of ic over T) / (|T| * nr_o)

where ``nr_o`` is the largest information content among annotated terms.
Terms nobody annotates are clamped to ``nr_o``, which keeps the score in
[0, 1]. Higher GenQ means the set is more general.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ICTable:
    """Information content per term (nats) and the normalizer ``nr_o``."""

    ic: dict
    nr_o: float

    def of(self, term_id):
        return self.ic[term_id]


def build_ic_table(counts, universe_size):
    """Turn propagated annotation counts into an :class:`ICTable`.

    Counts above the universe size are invalid input. Terms with count 0
    take the maximal observed information content.
    """
    if universe_size < 1:
        raise ValueError(f"universe_size must be >= 1, got {universe_size}")
    annotated = {t: c for t, c in counts.items() if c > 0}
    if not annotated:
        raise ValueError("every annotation count is zero; no basis for information content")
    bad = {t: c for t, c in annotated.items() if c > universe_size}
    if bad:
        raise ValueError(f"counts exceed the universe size {universe_size}: {sorted(bad)[:3]}")

    ic = {t: max(0.0, -math.log(c / universe_size)) for t, c in annotated.items()}
    nr_o = max(ic.values())
    if nr_o <= 0.0:
        raise ValueError("every annotated term has probability 1; nothing to normalize against")
    for term in counts:
        if term not in ic:
            ic[term] = nr_o
    return ICTable(ic, nr_o)


def genq(terms, table):
    """GenQ of a non-empty term set, clamped to [0, 1] against rounding."""
    terms = set(terms)
    if not terms:
        raise ValueError("GenQ is undefined for an empty term set")
    total = sum(table.ic[t] for t in terms)
    score = 1.0 - total / (len(terms) * table.nr_o)
    return min(1.0, max(0.0, score))


def baseline_genq(starting, table):
    """GenQ of each class's raw starting set (the direct-mapping baseline).

    Classes with an empty starting set are omitted.
    """
    scores = {}
    for label, terms in starting.per_class.items():
        if terms:
            scores[label] = genq(terms, table)
    return scores


@dataclass(frozen=True)
class TermEntry:
    term_id: str
    name: str
    depth: int
    ic: float


@dataclass(frozen=True)
class ClassReport:
    genq: float | None
    baseline_genq: float | None
    term_count: int
    baseline_term_count: int
    mean_depth: float
    terms: tuple


@dataclass(frozen=True)
class GenQReport:
    per_class: dict


def build_report(class_sets, starting, table, ontology):
    """Assemble the per-class scores and term listings into a report."""
    per_class = {}
    for label in sorted(class_sets.per_class):
        members = class_sets.per_class[label]
        start_terms = starting.per_class.get(label, frozenset())
        entries = tuple(
            sorted(
                (TermEntry(t, ontology.name_of(t) if t in ontology else "", d, table.ic[t])
                 for t, d in members.items()),
                key=lambda e: (-e.depth, e.name or e.term_id, e.term_id),
            )
        )
        depths = [e.depth for e in entries]
        per_class[label] = ClassReport(
            genq=genq(members, table) if members else None,
            baseline_genq=genq(start_terms, table) if start_terms else None,
            term_count=len(entries),
            baseline_term_count=len(start_terms),
            mean_depth=sum(depths) / len(depths) if depths else 0.0,
            terms=entries,
        )
    return GenQReport(per_class)


CSV_COLUMNS = (
    "class,term_id,term_name,depth,ic,genq_class,baseline_genq_class,term_count,baseline_term_count"
)


def render_report(report, fmt="text"):
    """Render a :class:`GenQReport` as text, JSON or CSV.

    Text shows one conjunctive rule per class, most-generalized terms
    first; unnamed terms fall back to their identifier. JSON and CSV carry
    the full report. Output is byte-stable for identical reports.
    """
    if fmt == "text":
        conj = " ∧ "
        lines = []
        for label in sorted(report.per_class):
            entry = report.per_class[label]
            names = [e.name or e.term_id for e in entry.terms]
            lines.append(f"{label} :- {conj.join(names)}" if names else f"{label} :-")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        doc = {
            "classes": {
                label: {
                    "genq": entry.genq,
                    "baseline_genq": entry.baseline_genq,
                    "term_count": entry.term_count,
                    "baseline_term_count": entry.baseline_term_count,
                    "mean_depth": entry.mean_depth,
                    "terms": [
                        {"term_id": e.term_id, "name": e.name, "depth": e.depth, "ic": e.ic}
                        for e in entry.terms
                    ],
                }
                for label, entry in report.per_class.items()
            }
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_COLUMNS.split(","))
        for label in sorted(report.per_class):
            entry = report.per_class[label]
            for e in entry.terms:
                writer.writerow(
                    [
                        label,
                        e.term_id,
                        e.name,
                        e.depth,
                        repr(e.ic),
                        _num(entry.genq),
                        _num(entry.baseline_genq),
                        entry.term_count,
                        entry.baseline_term_count,
                    ]
                )
        return out.getvalue()
    raise ValueError(f"unknown report format {fmt!r}")


def _num(value):
    return "" if value is None else repr(value)


def report_from_json(text):
    """Inverse of ``render_report(..., fmt="json")``."""
    doc = json.loads(text)
    per_class = {}
    for label, entry in doc["classes"].items():
        per_class[label] = ClassReport(
            genq=entry["genq"],
            baseline_genq=entry["baseline_genq"],
            term_count=entry["term_count"],
            baseline_term_count=entry["baseline_term_count"],
            mean_depth=entry["mean_depth"],
            terms=tuple(
                TermEntry(t["term_id"], t["name"], t["depth"], t["ic"]) for t in entry["terms"]
            ),
        )
    return GenQReport(per_class)
