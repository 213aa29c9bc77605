"""Fuzzy search over document metadata.

Documents are matched token by token: the query is tokenized, every query
token is allowed a length-dependent edit-distance budget, and vocabulary
tokens within budget contribute a weighted, length-normalized similarity
to the owning document's score. The same vocabulary drives "did you mean"
suggestions.

The index is rebuilt from the store on startup and kept in sync by the
store on every mutation; it never persists anything itself.
"""

from __future__ import annotations

import logging
import threading
from collections import Counter
from dataclasses import dataclass
from datetime import datetime
from itertools import groupby
from typing import Iterable, Mapping, Optional, Protocol

from arsip.distance import levenshtein_bounded
from arsip.records import validate_category

logger = logging.getLogger(__name__)

# Metadata fields that get indexed, with their ranking weights. Subject
# lines dominate, letter numbers matter, free-form description the least.
FIELD_WEIGHTS: dict[str, float] = {
    "perihal": 3.0,
    "no_surat": 2.0,
    "deskripsi": 1.0,
}

INDEXED_FIELDS: tuple[str, ...] = tuple(FIELD_WEIGHTS)


def tokenize(text: str) -> list[str]:
    """Lowercase and split on every non-alphanumeric scalar, dropping empties."""
    return [
        "".join(group)
        for is_word, group in groupby(text.lower(), key=str.isalnum)
        if is_word
    ]


@dataclass(frozen=True)
class BudgetPolicy:
    """Edit-distance budget per query token, banded by token length.

    Tokens of length <= ``short_max`` get ``short_budget`` edits, lengths
    up to ``medium_max`` get ``medium_budget``, everything longer gets
    ``long_budget``.
    """

    short_max: int = 4
    medium_max: int = 8
    short_budget: int = 1
    medium_budget: int = 2
    long_budget: int = 3

    def budget(self, token: str) -> int:
        if not token:
            raise ValueError("token must be non-empty")
        n = len(token)
        if n <= self.short_max:
            return self.short_budget
        if n <= self.medium_max:
            return self.medium_budget
        return self.long_budget

    @classmethod
    def parse(cls, spec: str) -> "BudgetPolicy":
        """Parse ``"SHORT_MAX:SHORT,MEDIUM_MAX:MEDIUM,LONG"``, e.g. ``"4:1,8:2,3"``."""
        try:
            short_part, medium_part, long_part = spec.split(",")
            short_max, short_budget = (int(x) for x in short_part.split(":"))
            medium_max, medium_budget = (int(x) for x in medium_part.split(":"))
            long_budget = int(long_part)
        except ValueError as exc:
            raise ValueError(
                f"bad budget spec {spec!r}; expected e.g. '4:1,8:2,3'"
            ) from exc
        if not 0 < short_max < medium_max:
            raise ValueError("budget bands must have 0 < SHORT_MAX < MEDIUM_MAX")
        if min(short_budget, medium_budget, long_budget) < 0:
            raise ValueError("budgets must be non-negative")
        return cls(short_max, medium_max, short_budget, medium_budget, long_budget)


DEFAULT_POLICY = BudgetPolicy()


def distance_budget(token: str) -> int:
    """Default edit budget for a query token: 1, 2 or 3 by length band."""
    return DEFAULT_POLICY.budget(token)


@dataclass(frozen=True)
class Suggestion:
    candidate: str
    distance: int
    frequency: int


@dataclass(frozen=True)
class MatchedTerm:
    query: str
    matched: str
    distance: int


@dataclass(frozen=True)
class SearchHit:
    document_id: str
    score: float
    matched_terms: tuple[MatchedTerm, ...]


class IndexableDocument(Protocol):
    id: str
    perihal: str
    no_surat: str
    deskripsi: str
    kategori: str
    uploaded_at: datetime
    deleted: bool


def suggest(
    query_token: str,
    vocab: Mapping[str, int],
    limit: int,
    *,
    policy: BudgetPolicy = DEFAULT_POLICY,
) -> list[Suggestion]:
    """Vocabulary tokens within the token's edit budget, best first.

    Ordering is ascending distance, then descending frequency, then
    lexicographic, so exact matches always lead and the result order is a
    total order. Returns [] when nothing is within budget.
    """
    token = query_token.lower()
    if not token:
        raise ValueError("query token must be non-empty")
    if limit < 1:
        raise ValueError("limit must be positive")
    budget = policy.budget(token)
    found: list[Suggestion] = []
    n = len(token)
    for candidate, freq in vocab.items():
        if abs(len(candidate) - n) > budget:
            continue
        d = levenshtein_bounded(token, candidate, budget)
        if d is not None:
            found.append(Suggestion(candidate, d, freq))
    found.sort(key=lambda s: (s.distance, -s.frequency, s.candidate))
    return found[:limit]


@dataclass
class _DocEntry:
    kategori: str
    uploaded_at: datetime
    sort_key: float  # uploaded_at as a timestamp, for ordering
    field_tokens: dict[str, Counter]


class SearchIndex:
    """In-memory vocabulary, postings and ranking for the live documents.

    One writer at a time; every public method takes the internal lock, so
    readers always see a fully applied index state.
    """

    def __init__(self, policy: BudgetPolicy = DEFAULT_POLICY) -> None:
        self.policy = policy
        self._vocab: Counter = Counter()
        # token -> doc id -> set of fields the token occurs in
        self._postings: dict[str, dict[str, set[str]]] = {}
        self._docs: dict[str, _DocEntry] = {}
        self._lock = threading.RLock()

    # -- maintenance ----------------------------------------------------

    def index_document(self, doc: IndexableDocument) -> None:
        """Add a document's metadata tokens; re-indexing an id replaces it."""
        entry = _DocEntry(
            kategori=doc.kategori,
            uploaded_at=doc.uploaded_at,
            sort_key=doc.uploaded_at.timestamp(),
            field_tokens={
                fname: Counter(tokenize(getattr(doc, fname)))
                for fname in INDEXED_FIELDS
            },
        )
        with self._lock:
            if doc.id in self._docs:
                self._remove_locked(doc.id)
            for fname, counts in entry.field_tokens.items():
                for token, n in counts.items():
                    self._vocab[token] += n
                    self._postings.setdefault(token, {}).setdefault(doc.id, set()).add(fname)
            self._docs[doc.id] = entry

    def deindex_document(self, doc: IndexableDocument) -> None:
        self.deindex_id(doc.id)

    def deindex_id(self, doc_id: str) -> None:
        """Remove a document; unknown ids are logged and ignored."""
        with self._lock:
            if doc_id not in self._docs:
                logger.warning("deindex of unindexed document %s ignored", doc_id)
                return
            self._remove_locked(doc_id)

    def _remove_locked(self, doc_id: str) -> None:
        entry = self._docs.pop(doc_id)
        for fname, counts in entry.field_tokens.items():
            for token, n in counts.items():
                self._vocab[token] -= n
                if self._vocab[token] <= 0:
                    del self._vocab[token]
                by_doc = self._postings[token]
                fields = by_doc[doc_id]
                fields.discard(fname)
                if not fields:
                    del by_doc[doc_id]
                    if not by_doc:
                        del self._postings[token]

    def clear(self) -> None:
        with self._lock:
            self._vocab.clear()
            self._postings.clear()
            self._docs.clear()

    # -- queries ---------------------------------------------------------

    def vocabulary(self) -> dict[str, int]:
        """Snapshot of token -> occurrence count over live documents."""
        with self._lock:
            return dict(self._vocab)

    def contains_token(self, token: str) -> bool:
        with self._lock:
            return token in self._vocab

    def suggest(self, query_token: str, limit: int = 5) -> list[Suggestion]:
        with self._lock:
            return suggest(query_token, self._vocab, limit, policy=self.policy)

    def search(self, query: str, category: Optional[str] = None) -> list[SearchHit]:
        """Rank live documents against the query, optionally inside one root.

        Score of a document is the sum over query tokens of the best
        weighted similarity any of its field tokens achieves; only
        documents scoring > 0 come back. Order: score desc, newest
        uploaded_at, ascending id.
        """
        if category is not None:
            validate_category(category)
        query_tokens = tokenize(query)
        if not query_tokens:
            return []
        with self._lock:
            # (doc id, slot) -> best (contribution, distance, matched token)
            best: dict[tuple[str, int], tuple[float, int, str]] = {}
            for slot, qtoken in enumerate(query_tokens):
                for vtoken, dist in self._within_budget(qtoken):
                    sim = 1.0 - dist / max(len(qtoken), len(vtoken))
                    for doc_id, fields in self._postings[vtoken].items():
                        entry = self._docs[doc_id]
                        if category is not None and entry.kategori != category:
                            continue
                        weight = max(FIELD_WEIGHTS[f] for f in fields)
                        contribution = weight * sim
                        key = (doc_id, slot)
                        cur = best.get(key)
                        if (
                            cur is None
                            or contribution > cur[0]
                            or (
                                contribution == cur[0]
                                and (dist, vtoken) < (cur[1], cur[2])
                            )
                        ):
                            best[key] = (contribution, dist, vtoken)

            scores: dict[str, float] = {}
            terms: dict[str, list[MatchedTerm]] = {}
            for (doc_id, slot), (contribution, dist, vtoken) in sorted(best.items()):
                scores[doc_id] = scores.get(doc_id, 0.0) + contribution
                terms.setdefault(doc_id, []).append(
                    MatchedTerm(query_tokens[slot], vtoken, dist)
                )
            hits = [
                SearchHit(doc_id, score, tuple(terms[doc_id]))
                for doc_id, score in scores.items()
                if score > 0.0
            ]
            hits.sort(
                key=lambda h: (-h.score, -self._docs[h.document_id].sort_key, h.document_id)
            )
            return hits

    def _within_budget(self, qtoken: str) -> list[tuple[str, int]]:
        """Linear vocabulary scan with a length pre-filter."""
        budget = self.policy.budget(qtoken)
        n = len(qtoken)
        out: list[tuple[str, int]] = []
        for vtoken in self._vocab:
            if abs(len(vtoken) - n) > budget:
                continue
            d = levenshtein_bounded(qtoken, vtoken, budget)
            if d is not None:
                out.append((vtoken, d))
        return out


def rebuild_index(docs: Iterable[IndexableDocument], policy: BudgetPolicy = DEFAULT_POLICY) -> SearchIndex:
    """Fresh index over the given live documents."""
    index = SearchIndex(policy)
    for doc in docs:
        if not doc.deleted:
            index.index_document(doc)
    return index
