"""Keyword search over the index, ranked by raw term frequency.

The query runs through the same analysis pipeline as the corpus. A document
matches when any analyzed query term occurs in any of the four core fields
(keywords, title, abstract, body); its score is the summed raw count of the
query terms over those fields. OR semantics, descending score, ties broken
by ascending document id. Search deliberately uses raw frequencies, not
tf-idf; the recommender is the tf-idf consumer.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .errors import AnalyzerMismatchWarning, EmptyQueryError
from .index import CORE_FIELDS, Index
from .textproc import AnalyzerConfig, analyze


@dataclass
class SearchResult:
    """Ranked matches for one query."""

    query_terms: list[str]
    ranked: list[tuple[str, int]]


def search(index: Index, query: str, config: AnalyzerConfig, limit: int = 10) -> SearchResult:
    """Frequency-ranked OR search.

    Raises :class:`EmptyQueryError` when nothing survives analysis (for
    example a stop-word-only query); that is distinct from a valid query
    with zero results. Warns when the query-time analyzer differs from the
    one the index was built with.
    """
    if config.fingerprint() != index.analyzer_fingerprint:
        warnings.warn(
            "query analyzer does not match the analyzer the index was built with; "
            "results may be inconsistent",
            AnalyzerMismatchWarning,
            stacklevel=2,
        )

    terms = analyze(query, config)
    if not terms:
        raise EmptyQueryError(f"query {query!r} is empty after analysis")
    seen: dict[str, None] = {}
    for term in terms:
        seen.setdefault(term)
    query_terms = list(seen)

    scores: dict[str, int] = {}
    for term in query_terms:
        for field_name in CORE_FIELDS:
            for doc_id, count in index.postings.get(field_name, {}).get(term, {}).items():
                scores[doc_id] = scores.get(doc_id, 0) + count

    ranked = sorted(scores.items(), key=lambda p: (-p[1], p[0]))[:limit]
    return SearchResult(query_terms=query_terms, ranked=ranked)
