"""OBO parsing and ancestor/descendant/LCA queries over a typed term DAG.

Edges always point child -> parent, i.e. toward the more general term.
All relation kinds are traversed uniformly as generalization edges; the
set of kinds that participate in traversal is fixed at construction.
"""
from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .errors import CycleError, ParseError, UnknownTermError


class RelationKind(enum.Enum):
    IS_A = "is_a"
    PART_OF = "part_of"
    REGULATES = "regulates"
    NEGATIVELY_REGULATES = "negatively_regulates"
    POSITIVELY_REGULATES = "positively_regulates"


ALL_RELATIONS = frozenset(RelationKind)

# relationship: <token> <target>  -- tokens matched exactly
_RELATIONSHIP_TOKENS = {kind.value: kind for kind in RelationKind if kind is not RelationKind.IS_A}


@dataclass(frozen=True)
class Term:
    id: str
    name: str = ""
    namespace: str = ""


class Ontology:
    """Immutable DAG of terms with typed child->parent edges.

    Safe for concurrent reads once constructed. Traversal only follows
    edges whose kind is in ``active_relations``.
    """

    def __init__(self, terms, edges, active_relations=ALL_RELATIONS, unknown_edges=()):
        self._terms = dict(terms)
        self._edges = frozenset(edges)
        self.active_relations = frozenset(active_relations)
        # raw (child, token, parent) triples whose relation token is not a
        # known kind; kept for inspection, never traversed
        self.unknown_edges = tuple(unknown_edges)

        parents = {t: set() for t in self._terms}
        children = {t: set() for t in self._terms}
        for child, parent, kind in self._edges:
            if child not in self._terms:
                raise UnknownTermError(child)
            if parent not in self._terms:
                raise UnknownTermError(parent)
            if kind in self.active_relations:
                parents[child].add(parent)
                children[parent].add(child)
        self._parents = {t: tuple(sorted(ps)) for t, ps in parents.items()}
        self._children = {t: tuple(sorted(cs)) for t, cs in children.items()}
        self._descendant_cache = {}
        self._ancestor_cache = {}
        self._check_acyclic()

    # -- basic accessors ---------------------------------------------------

    @property
    def terms(self):
        return self._terms

    @property
    def edges(self):
        return self._edges

    def __contains__(self, term_id):
        return term_id in self._terms

    def __len__(self):
        return len(self._terms)

    def name_of(self, term_id):
        self._require(term_id)
        return self._terms[term_id].name

    def _require(self, term_id):
        if term_id not in self._terms:
            raise UnknownTermError(term_id)

    # -- traversal ---------------------------------------------------------

    def parents(self, term_id):
        """Direct parents of ``term_id`` over the active relations."""
        self._require(term_id)
        return set(self._parents[term_id])

    def children(self, term_id):
        """Direct children of ``term_id`` over the active relations."""
        self._require(term_id)
        return set(self._children[term_id])

    def descendants(self, term_id):
        """Reflexive transitive closure of the child relation.

        Includes ``term_id`` itself; a term counts as its own descendant.
        """
        self._require(term_id)
        cached = self._descendant_cache.get(term_id)
        if cached is None:
            cached = self._closure(term_id, self._children)
            self._descendant_cache[term_id] = cached
        return cached

    def ancestors(self, term_id):
        """Reflexive transitive closure of the parent relation."""
        self._require(term_id)
        cached = self._ancestor_cache.get(term_id)
        if cached is None:
            cached = self._closure(term_id, self._parents)
            self._ancestor_cache[term_id] = cached
        return cached

    @staticmethod
    def _closure(start, adjacency):
        seen = {start}
        queue = deque((start,))
        while queue:
            node = queue.popleft()
            for nxt in adjacency[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return frozenset(seen)

    def distances_up(self, term_id):
        """Shortest edge distance from ``term_id`` to each of its ancestors."""
        self._require(term_id)
        dist = {term_id: 0}
        queue = deque((term_id,))
        while queue:
            node = queue.popleft()
            d = dist[node] + 1
            for parent in self._parents[node]:
                if parent not in dist:
                    dist[parent] = d
                    queue.append(parent)
        return dist

    def lowest_common_ancestor(self, a, b):
        """Common ancestor of ``a`` and ``b`` closest to one of them.

        Returns ``(ancestor, depth)`` where depth is the smaller of the two
        shortest-path distances, or ``None`` when no common ancestor exists.
        Among equal-depth candidates the one with the smaller far-side
        distance wins, then the lexicographically smallest identifier.
        """
        if a == b:
            raise ValueError(f"lowest_common_ancestor needs two distinct terms, got {a!r} twice")
        dist_a = self.distances_up(a)
        dist_b = self.distances_up(b)
        common = dist_a.keys() & dist_b.keys()
        if not common:
            return None
        best = min(common, key=lambda t: (min(dist_a[t], dist_b[t]), max(dist_a[t], dist_b[t]), t))
        return best, min(dist_a[best], dist_b[best])

    # -- validation ----------------------------------------------------------

    def _check_acyclic(self):
        indegree = {t: len(self._parents[t]) for t in self._terms}
        queue = deque(t for t, d in indegree.items() if d == 0)
        visited = 0
        while queue:
            node = queue.popleft()
            visited += 1
            for child in self._children[node]:
                indegree[child] -= 1
                if indegree[child] == 0:
                    queue.append(child)
        if visited == len(self._terms):
            return
        # some nodes never drained: walk the residual graph to exhibit one cycle
        residual = {t for t, d in indegree.items() if d > 0}
        start = min(residual)
        path, seen = [], {}
        node = start
        while node not in seen:
            seen[node] = len(path)
            path.append(node)
            node = min(p for p in self._parents[node] if p in residual)
        raise CycleError(path[seen[node]:] + [node])


def parse_obo(text, active_relations=ALL_RELATIONS):
    """Parse OBO 1.2-style text into an :class:`Ontology`.

    Recognized stanza keys: ``id``, ``name``, ``namespace``, ``is_a``,
    ``relationship``, ``is_obsolete``. Everything else is ignored, as are
    non-``[Term]`` stanzas. Obsolete terms are dropped along with any edge
    touching them. Edges citing a parent that has no stanza of its own get
    a placeholder term with an empty name.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    terms = {}
    raw_edges = []  # (child, relation token, parent)
    obsolete = set()

    stanza = None  # current [Term] accumulator, None outside a term stanza
    stanza_line = 0

    def flush():
        if stanza is None:
            return
        term_id = stanza.get("id")
        if term_id is None:
            raise ParseError("[Term] stanza has no id:", line=stanza_line)
        if stanza.get("obsolete"):
            obsolete.add(term_id)
            return
        prior = terms.get(term_id)
        name = stanza.get("name", "") or (prior.name if prior else "")
        namespace = stanza.get("namespace", "") or (prior.namespace if prior else "")
        terms[term_id] = Term(term_id, name, namespace)
        for token, parent in stanza.get("edges", ()):
            raw_edges.append((term_id, token, parent))

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("["):
            flush()
            if line == "[Term]":
                stanza = {"edges": []}
                stanza_line = lineno
            else:
                stanza = None
            continue
        if stanza is None:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            continue
        key = key.strip()
        value = value.split("!", 1)[0].strip()
        if key == "id":
            if not value:
                raise ParseError("empty id:", line=lineno)
            stanza["id"] = value
        elif key == "name":
            stanza["name"] = value
        elif key == "namespace":
            stanza["namespace"] = value
        elif key == "is_a":
            if not value:
                raise ParseError("is_a without a target", line=lineno)
            stanza["edges"].append(("is_a", value))
        elif key == "relationship":
            parts = value.split()
            if len(parts) < 2:
                raise ParseError(f"relationship needs a kind and a target, got {value!r}", line=lineno)
            stanza["edges"].append((parts[0], parts[1]))
        elif key == "is_obsolete":
            stanza["obsolete"] = value.lower() == "true"
    flush()

    edges = set()
    unknown = []
    for child, token, parent in raw_edges:
        if child in obsolete or parent in obsolete:
            continue
        if token == "is_a":
            kind = RelationKind.IS_A
        else:
            kind = _RELATIONSHIP_TOKENS.get(token)
        if kind is None:
            unknown.append((child, token, parent))
            continue
        if parent not in terms:
            terms[parent] = Term(parent)
        edges.add((child, parent, kind))

    return Ontology(terms, edges, active_relations=active_relations, unknown_edges=unknown)


def relation_kinds_from_names(names):
    """Map OBO relation tokens (``is_a``, ``part_of``, ...) to kinds."""
    by_token = {kind.value: kind for kind in RelationKind}
    kinds = set()
    for name in names:
        token = name.strip()
        if token not in by_token:
            known = ", ".join(sorted(by_token))
            raise ValueError(f"unknown relation {token!r} (known: {known})")
        kinds.add(by_token[token])
    return frozenset(kinds)
