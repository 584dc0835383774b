"""Article data model and the line-delimited corpus file it is loaded from.

Corpus file format (the "structured corpus" replacing per-journal PDF
parsing): UTF-8 JSON Lines, NFC-normalized, one article record per line.

Record fields::

    id           required, nonempty, unique within a corpus
    title        required, nonempty
    abstract     optional text, default ""
    keywords     optional array of phrases, default []
    body         optional text, default ""
    sections     optional array of {"heading": ..., "text": ...}, default []
    category     required label (open set, e.g. "biology")
    language     optional language tag, default "sq"
    source_path  optional path to the original article file

Unknown keys (for example ``authors``) are accepted and ignored; nothing
downstream consumes them. Degenerate articles (empty abstract, keywords or
body) are kept and merely flagged by validation.
"""

from __future__ import annotations

import json
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Iterable

from .errors import DuplicateIdError, ParseError, ValidationError


def _nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass
class Section:
    """One titled part of an article body."""

    heading: str
    text: str


@dataclass
class Article:
    """One scientific article with per-field text and provenance."""

    id: str
    title: str
    category: str
    abstract: str = ""
    keywords: list[str] = field(default_factory=list)
    body: str = ""
    sections: list[Section] = field(default_factory=list)
    language: str = "sq"
    source_path: str | None = None

    @property
    def degenerate(self) -> bool:
        """True when abstract, keywords or body is empty."""
        return not self.abstract or not self.keywords or not self.body


@dataclass
class CorpusStats:
    """Aggregate shape of a corpus."""

    article_count: int
    per_category_counts: dict[str, int]


@dataclass(frozen=True)
class CorpusWarning:
    """A soft validation finding attached to one article."""

    code: str
    article_id: str
    message: str


def _text_field(record: dict, key: str, default: str | None = "") -> str | None:
    value = record.get(key, default)
    if value is None and default is None:
        return None
    if not isinstance(value, str):
        raise ParseError(f"field {key!r} must be a string, got {type(value).__name__}", field=key)
    return _nfc(value)


def parse_article(record: Any) -> Article:
    """Turn one corpus record into an :class:`Article`.

    Raises :class:`ParseError` for structural problems (naming the offending
    field) and :class:`ValidationError` for a missing or empty id or title.
    """
    if not isinstance(record, dict):
        raise ParseError(f"corpus record must be an object, got {type(record).__name__}")

    for key in ("id", "title"):
        value = record.get(key)
        if value is None or (isinstance(value, str) and not value.strip()):
            raise ValidationError(f"article record is missing required field {key!r}", field=key)
        if not isinstance(value, str):
            raise ParseError(f"field {key!r} must be a string, got {type(value).__name__}", field=key)

    if "category" not in record:
        raise ParseError("article record is missing field 'category'", field="category")

    keywords = record.get("keywords", [])
    if not isinstance(keywords, list) or not all(isinstance(k, str) for k in keywords):
        raise ParseError("field 'keywords' must be an array of strings", field="keywords")

    raw_sections = record.get("sections", [])
    if not isinstance(raw_sections, list):
        raise ParseError("field 'sections' must be an array", field="sections")
    sections = []
    for pos, sec in enumerate(raw_sections):
        if not isinstance(sec, dict) or "text" not in sec:
            raise ParseError(f"section {pos} must be an object with a 'text' field", field="sections")
        heading = sec.get("heading", "")
        if not isinstance(heading, str) or not isinstance(sec["text"], str):
            raise ParseError(f"section {pos} fields must be strings", field="sections")
        sections.append(Section(heading=_nfc(heading), text=_nfc(sec["text"])))

    return Article(
        id=_nfc(record["id"]),
        title=_nfc(record["title"]),
        category=_text_field(record, "category"),
        abstract=_text_field(record, "abstract"),
        keywords=[_nfc(k) for k in keywords],
        body=_text_field(record, "body"),
        sections=sections,
        language=_text_field(record, "language", "sq"),
        source_path=_text_field(record, "source_path", None),
    )


def article_to_record(article: Article) -> dict:
    """Inverse of :func:`parse_article` over all declared fields."""
    return {
        "id": article.id,
        "title": article.title,
        "abstract": article.abstract,
        "keywords": list(article.keywords),
        "body": article.body,
        "sections": [{"heading": s.heading, "text": s.text} for s in article.sections],
        "category": article.category,
        "language": article.language,
        "source_path": article.source_path,
    }


def load_corpus(path: str | Path) -> list[Article]:
    """Read a JSON Lines corpus file; blank lines are ignored."""
    articles = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ParseError(f"line {lineno}: invalid JSON record ({exc.msg})") from None
        try:
            articles.append(parse_article(record))
        except (ParseError, ValidationError) as exc:
            raise type(exc)(f"line {lineno}: {exc}", field=exc.field) from None
    return articles


def save_corpus(articles: Iterable[Article], path: str | Path) -> None:
    """Write articles as JSON Lines (UTF-8, sorted keys, one record per line)."""
    lines = [
        json.dumps(article_to_record(a), ensure_ascii=False, sort_keys=True)
        for a in articles
    ]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")


def validate_corpus(articles: list[Article]) -> tuple[CorpusStats, list[CorpusWarning]]:
    """Aggregate corpus statistics and per-article warnings.

    Duplicate ids are a hard error (both occurrences are named); empty
    abstracts, keyword lists and bodies, and section texts that do not
    appear verbatim in the body, are warnings.
    """
    positions: dict[str, int] = {}
    for pos, article in enumerate(articles):
        if article.id in positions:
            raise DuplicateIdError(
                f"duplicate article id {article.id!r} at positions "
                f"{positions[article.id]} and {pos}",
                field="id",
            )
        positions[article.id] = pos

    warnings = []
    counts: Counter[str] = Counter()
    for article in articles:
        counts[article.category] += 1
        if not article.abstract:
            warnings.append(CorpusWarning("empty-abstract", article.id, "abstract is empty"))
        if not article.keywords:
            warnings.append(CorpusWarning("empty-keywords", article.id, "keywords list is empty"))
        if not article.body:
            warnings.append(CorpusWarning("empty-body", article.id, "body is empty"))
        for pos, sec in enumerate(article.sections):
            if sec.text and sec.text not in article.body:
                warnings.append(
                    CorpusWarning(
                        "section-not-in-body",
                        article.id,
                        f"section {pos} text does not appear verbatim in body",
                    )
                )

    stats = CorpusStats(
        article_count=len(articles),
        per_category_counts=dict(sorted(counts.items())),
    )
    return stats, warnings
