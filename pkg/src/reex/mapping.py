"""Feature-to-term annotation maps and propagated annotation counts."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError


@dataclass(frozen=True)
class AnnotationMap:
    """Feature identifier -> set of term identifiers.

    ``feature_universe_size`` is the number of distinct annotated features
    and stays fixed even when some of a feature's terms were dropped for
    not existing in the companion ontology (``dropped_terms`` counts those).
    """

    by_feature: dict
    feature_universe_size: int
    dropped_terms: int = 0

    def terms_for(self, feature_id):
        return self.by_feature.get(feature_id)

    def restricted_to(self, feature_ids):
        """Sub-map holding only the given features (for dataset-local priors)."""
        kept = {f: ts for f, ts in self.by_feature.items() if f in set(feature_ids)}
        if not kept:
            raise ValueError("restriction removes every feature from the mapping")
        return AnnotationMap(kept, len(kept), self.dropped_terms)


def parse_mapping(text, ontology=None):
    """Parse ``feature<TAB>term[,term...]`` lines into an :class:`AnnotationMap`.

    Lines starting with ``#`` are comments. Repeated feature lines merge
    their term sets. When an ontology is given, terms it does not contain
    are dropped and counted in ``dropped_terms``.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    by_feature = {}
    dropped = 0
    saw_line = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        saw_line = True
        feature, sep, rest = line.partition("\t")
        if not sep:
            raise ParseError(f"expected feature<TAB>terms, got {line!r}", line=lineno)
        feature = feature.strip()
        if not feature:
            raise ParseError("empty feature identifier", line=lineno)
        terms = {t.strip() for t in rest.split(",") if t.strip()}
        if ontology is not None:
            known = {t for t in terms if t in ontology}
            dropped += len(terms) - len(known)
            terms = known
        by_feature.setdefault(feature, set()).update(terms)
    if not saw_line:
        raise ParseError("mapping file holds no feature lines")

    frozen = {f: frozenset(ts) for f, ts in by_feature.items()}
    return AnnotationMap(frozen, len(frozen), dropped)


def convert_pairs(text):
    """Convert one-pair-per-line ``feature<TAB>term`` text to the grouped form."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    pairs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        feature, sep, term = line.partition("\t")
        if not sep or not term.strip():
            raise ParseError(f"expected feature<TAB>term, got {line!r}", line=lineno)
        pairs.setdefault(feature.strip(), []).append(term.strip())
    lines = []
    for feature in sorted(pairs):
        seen = sorted(set(pairs[feature]))
        lines.append(f"{feature}\t{','.join(seen)}")
    return "\n".join(lines) + "\n"


def term_annotation_counts(annotation_map, ontology):
    """Per-term counts of features annotated to the term or any descendant.

    An annotation to a term implicitly annotates every ancestor of that
    term, so counts are monotone along the parent relation. Every ontology
    term appears in the result, unannotated ones with count 0.
    """
    counts = dict.fromkeys(ontology.terms, 0)
    for terms in annotation_map.by_feature.values():
        closure = set()
        for term in terms:
            if term in ontology:
                closure.update(ontology.ancestors(term))
        for term in closure:
            counts[term] += 1
    return counts
