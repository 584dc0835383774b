"""Per-field term-frequency index with tf-idf weights and persistence.

Raw counts only are stored; weighting (tf times log10(N/df)) is derived on
demand. Document frequency is pooled over every field of a document, so a
term counts a document once no matter where it occurs.

The persisted form is a single versioned JSON file with sorted keys, which
makes builds byte-for-byte reproducible.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from pathlib import Path
from typing import Iterable

from .corpus import Article
from .errors import DuplicateIdError, IndexFormatError, UnknownDocError
from .textproc import AnalyzerConfig, analyze

FIELD_KEYWORDS = "keywords"
FIELD_TITLE = "title"
FIELD_ABSTRACT = "abstract"
FIELD_BODY = "body"
CORE_FIELDS = (FIELD_KEYWORDS, FIELD_TITLE, FIELD_ABSTRACT, FIELD_BODY)

INDEX_FORMAT = "albrec-index"
INDEX_VERSION = 1


def section_field(position: int) -> str:
    """Field key for the per-section ("article part") counts."""
    return f"section:{position}"


class Index:
    """Immutable term statistics for one corpus snapshot.

    ``postings`` maps field -> term -> doc id -> raw count; ``doc_freq``
    maps term -> number of documents containing it in any field.
    """

    def __init__(
        self,
        n_docs: int,
        doc_categories: dict[str, str],
        postings: dict[str, dict[str, dict[str, int]]],
        doc_freq: dict[str, int],
        analyzer_fingerprint: str,
    ):
        self.n_docs = n_docs
        self.doc_categories = dict(doc_categories)
        self.postings = postings
        self.doc_freq = doc_freq
        self.analyzer_fingerprint = analyzer_fingerprint
        self._doc_terms = self._build_doc_view()
        self._term_ids: dict[str, int] | None = None

    def _build_doc_view(self) -> dict[str, dict[str, dict[str, int]]]:
        view: dict[str, dict[str, dict[str, int]]] = {d: {} for d in self.doc_categories}
        for field_name, terms in self.postings.items():
            for term, docs in terms.items():
                for doc_id, count in docs.items():
                    view[doc_id].setdefault(field_name, {})[term] = count
        return view

    @property
    def vocabulary(self) -> frozenset[str]:
        return frozenset(self.doc_freq)

    @property
    def doc_ids(self) -> list[str]:
        return sorted(self.doc_categories)

    @property
    def term_ids(self) -> dict[str, int]:
        """Term -> dense integer id, assigned in sorted-term order."""
        if self._term_ids is None:
            self._term_ids = {t: i for i, t in enumerate(sorted(self.doc_freq))}
        return self._term_ids

    def __contains__(self, doc_id: str) -> bool:
        return doc_id in self.doc_categories

    def tf(self, doc_id: str, field_name: str, term: str) -> int:
        """Raw count of ``term`` in one field of one document."""
        if doc_id not in self.doc_categories:
            raise UnknownDocError(f"unknown document id {doc_id!r}")
        return self._doc_terms[doc_id].get(field_name, {}).get(term, 0)

    def doc_terms(self, doc_id: str, fields: Iterable[str] = CORE_FIELDS) -> list[str]:
        """Sorted union of the document's terms across the given fields."""
        if doc_id not in self.doc_categories:
            raise UnknownDocError(f"unknown document id {doc_id!r}")
        seen: set[str] = set()
        for field_name in fields:
            seen.update(self._doc_terms[doc_id].get(field_name, ()))
        return sorted(seen)


def build_index(articles: list[Article], config: AnalyzerConfig) -> Index:
    """Analyze every article and collect per-field raw counts.

    Keyword phrases run through the same analyzer as running text, so
    keyword terms share the vocabulary with title/abstract/body terms.
    Section texts (with their headings) are counted under ``section:i``
    extra fields.
    """
    positions: dict[str, int] = {}
    for pos, article in enumerate(articles):
        if article.id in positions:
            raise DuplicateIdError(
                f"duplicate article id {article.id!r} at positions {positions[article.id]} and {pos}",
                field="id",
            )
        positions[article.id] = pos

    postings: dict[str, dict[str, dict[str, int]]] = {}
    doc_freq: dict[str, int] = {}
    doc_categories: dict[str, str] = {}

    for article in articles:
        fields = {
            FIELD_KEYWORDS: analyze(" ".join(article.keywords), config),
            FIELD_TITLE: analyze(article.title, config),
            FIELD_ABSTRACT: analyze(article.abstract, config),
            FIELD_BODY: analyze(article.body, config),
        }
        for pos, sec in enumerate(article.sections):
            fields[section_field(pos)] = analyze(f"{sec.heading} {sec.text}", config)

        doc_vocab: set[str] = set()
        for field_name, terms in fields.items():
            for term, count in Counter(terms).items():
                postings.setdefault(field_name, {}).setdefault(term, {})[article.id] = count
                doc_vocab.add(term)
        for term in doc_vocab:
            doc_freq[term] = doc_freq.get(term, 0) + 1
        doc_categories[article.id] = article.category

    return Index(
        n_docs=len(articles),
        doc_categories=doc_categories,
        postings=postings,
        doc_freq=doc_freq,
        analyzer_fingerprint=config.fingerprint(),
    )


def tfidf(index: Index, doc_id: str, field_name: str, term: str) -> float:
    """Weight of a term in one field: raw count times log10(N / df).

    Zero when the term does not occur in that field; an unknown term is
    weight zero, not an error. Terms occurring in every document get an
    idf of zero.
    """
    count = index.tf(doc_id, field_name, term)
    if count == 0:
        return 0.0
    return count * math.log10(index.n_docs / index.doc_freq[term])


def _index_payload(index: Index) -> dict:
    return {
        "format": INDEX_FORMAT,
        "version": INDEX_VERSION,
        "analyzer_fingerprint": index.analyzer_fingerprint,
        "n_docs": index.n_docs,
        "doc_categories": index.doc_categories,
        "postings": index.postings,
        "doc_freq": index.doc_freq,
    }


def index_to_bytes(index: Index) -> bytes:
    """Canonical serialized form (sorted keys, compact, UTF-8)."""
    blob = json.dumps(_index_payload(index), ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return (blob + "\n").encode("utf-8")


def save_index(index: Index, path: str | Path) -> None:
    Path(path).write_bytes(index_to_bytes(index))


def load_index(path: str | Path) -> Index:
    """Load a persisted index; raises :class:`IndexFormatError` on mismatch."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise IndexFormatError(f"index file is not valid JSON: {exc}") from None
    if not isinstance(payload, dict) or payload.get("format") != INDEX_FORMAT:
        raise IndexFormatError("file does not carry the expected index format header")
    if payload.get("version") != INDEX_VERSION:
        raise IndexFormatError(
            f"unsupported index format version {payload.get('version')!r}; "
            f"expected {INDEX_VERSION}"
        )

    doc_categories = payload["doc_categories"]
    postings = payload["postings"]
    doc_freq = payload["doc_freq"]
    n_docs = payload["n_docs"]

    for field_name, terms in postings.items():
        for term, docs in terms.items():
            for doc_id in docs:
                if doc_id not in doc_categories:
                    raise IndexFormatError(
                        f"posting for term {term!r} references unknown document {doc_id!r}"
                    )
    for term, df in doc_freq.items():
        if not 1 <= df <= n_docs:
            raise IndexFormatError(f"document frequency of {term!r} out of range: {df}")

    return Index(
        n_docs=n_docs,
        doc_categories=doc_categories,
        postings=postings,
        doc_freq=doc_freq,
        analyzer_fingerprint=payload["analyzer_fingerprint"],
    )
