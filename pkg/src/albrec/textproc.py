"""Text analysis pipeline: tokenization, stop-word removal, suffix stemming.

The pipeline order is fixed: tokenize, drop stop words, then stem. Stop
words are matched on their surface form, so stemmed forms of stop words are
*not* filtered; that is intentional and documented behavior.

The stemmer is a data-driven ordered suffix-rule engine. Both the stop-word
list and the rule table are plain config files; the Albanian defaults
shipped in ``albrec/data`` are an editable approximation of common Albanian
suffix morphology, not a complete morphological analyzer.
"""

from __future__ import annotations

import hashlib
import json
import re
import unicodedata
from dataclasses import dataclass, replace
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import ParseError

# A token is a maximal run of letters (including diacritics) and digits;
# everything else, underscore included, separates tokens.
_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

_DATA = resources.files("albrec").joinpath("data")
DEFAULT_STOPWORDS_FILE = "stopwords_sq.txt"
DEFAULT_RULES_FILE = "stem_rules_sq.tsv"


class StemMode(Enum):
    """How many times the rule table is applied per word."""

    SINGLE_RUN = "single"
    FIXPOINT = "fixpoint"

    @classmethod
    def parse(cls, value: str) -> "StemMode":
        for mode in cls:
            if mode.value == value:
                return mode
        raise ValueError(f"unknown stem mode {value!r}; expected 'single' or 'fixpoint'")


@dataclass(frozen=True)
class StemRule:
    """One ordered suffix-stripping rule.

    A rule applies to a word when the word ends with ``suffix`` and the
    rewritten word is at least ``min_stem_length`` characters long.
    """

    suffix: str
    replacement: str
    min_stem_length: int

    def __post_init__(self):
        if not self.suffix:
            raise ValueError("stem rule suffix must be nonempty")
        if self.min_stem_length < 1:
            raise ValueError("min_stem_length must be a positive integer")


@dataclass(frozen=True)
class AnalyzerConfig:
    """Immutable analysis configuration; rule order is significant."""

    stopwords: frozenset[str]
    rules: tuple[StemRule, ...]
    stem_mode: StemMode = StemMode.SINGLE_RUN
    lowercase: bool = True

    def with_stem_mode(self, mode: StemMode) -> "AnalyzerConfig":
        return replace(self, stem_mode=mode)

    def fingerprint(self) -> str:
        """Stable hash of everything that affects analysis output."""
        payload = {
            "stopwords": sorted(self.stopwords),
            "rules": [[r.suffix, r.replacement, r.min_stem_length] for r in self.rules],
            "stem_mode": self.stem_mode.value,
            "lowercase": self.lowercase,
        }
        blob = json.dumps(payload, ensure_ascii=False, sort_keys=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def normalize(text: str, lowercase: bool = True) -> str:
    """NFC-normalize and (by default) lowercase a piece of text."""
    text = unicodedata.normalize("NFC", text)
    if lowercase:
        # Lowercasing can denormalize in exotic scripts; renormalize.
        text = unicodedata.normalize("NFC", text.lower())
    return text


def tokenize(text: str, lowercase: bool = True) -> list[str]:
    """Split text into normalized tokens.

    Tokens are maximal runs of letters and digits; Albanian diacritics
    (ë, ç) are letters and survive intact.
    """
    if not text:
        return []
    return _TOKEN_RE.findall(normalize(text, lowercase=lowercase))


def remove_stopwords(tokens: Iterable[str], stopwords: frozenset[str] | set[str]) -> list[str]:
    """Order-preserving filter dropping tokens found in the stop-word set."""
    return [tok for tok in tokens if tok not in stopwords]


def stem_single(word: str, rules: Iterable[StemRule]) -> str:
    """Apply the first applicable rule exactly once; identity if none applies."""
    for rule in rules:
        if word.endswith(rule.suffix):
            stem = word[: len(word) - len(rule.suffix)] + rule.replacement
            if len(stem) >= rule.min_stem_length:
                return stem
    return word


def stem_fixpoint(word: str, rules: Iterable[StemRule]) -> str:
    """Apply :func:`stem_single` repeatedly until the word stops changing.

    Rewrites that do not strictly shorten the word are not applied here;
    that guards termination (and idempotence) against pathological rule
    tables. Rule packs passing :func:`lint_rule_pack` never hit the guard.
    """
    rules = tuple(rules)
    while True:
        stemmed = stem_single(word, rules)
        if stemmed == word or len(stemmed) >= len(word):
            return word
        word = stemmed


def analyze(text: str, config: AnalyzerConfig) -> list[str]:
    """Full pipeline: tokenize, remove stop words, stem per the config mode."""
    tokens = tokenize(text, lowercase=config.lowercase)
    tokens = remove_stopwords(tokens, config.stopwords)
    if config.stem_mode is StemMode.SINGLE_RUN:
        return [stem_single(tok, config.rules) for tok in tokens]
    return [stem_fixpoint(tok, config.rules) for tok in tokens]


def lint_rule_pack(rules: Iterable[StemRule]) -> list[str]:
    """Check that every rule strictly shortens the words it rewrites.

    Returns a list of problem descriptions (empty for a healthy pack).
    Shipped packs must pass; custom packs may violate this at their own
    risk (see :func:`stem_fixpoint`).
    """
    problems = []
    for pos, rule in enumerate(rules):
        if len(rule.replacement) >= len(rule.suffix):
            problems.append(
                f"rule {pos} ({rule.suffix!r} -> {rule.replacement!r}) does not shorten words"
            )
    return problems


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Read a stop-word file: one word per line, '#' comments allowed."""
    words = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        words.add(normalize(line))
    return frozenset(words)


def load_rules(path: str | Path) -> tuple[StemRule, ...]:
    """Read an ordered rule table: tab-separated suffix, replacement, min length."""
    rules = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.split("\t")
        if len(parts) != 3:
            raise ParseError(
                f"{Path(path).name}:{lineno}: expected 3 tab-separated columns, got {len(parts)}",
                field="rules",
            )
        suffix, replacement, min_len = parts
        try:
            min_stem_length = int(min_len.strip())
        except ValueError:
            raise ParseError(
                f"{Path(path).name}:{lineno}: min stem length {min_len!r} is not an integer",
                field="min_stem_length",
            ) from None
        try:
            rules.append(
                StemRule(normalize(suffix), normalize(replacement), min_stem_length)
            )
        except ValueError as exc:
            raise ParseError(f"{Path(path).name}:{lineno}: {exc}", field="rules") from None
    return tuple(rules)


def default_stopwords() -> frozenset[str]:
    """The shipped Albanian stop-word list (~100 high-frequency words)."""
    with resources.as_file(_DATA.joinpath(DEFAULT_STOPWORDS_FILE)) as path:
        return load_stopwords(path)


def default_rules() -> tuple[StemRule, ...]:
    """The shipped Albanian suffix-rule pack (an approximation; editable)."""
    with resources.as_file(_DATA.joinpath(DEFAULT_RULES_FILE)) as path:
        return load_rules(path)


def default_config(stem_mode: StemMode = StemMode.SINGLE_RUN) -> AnalyzerConfig:
    """Analyzer config backed by the shipped Albanian data files."""
    return AnalyzerConfig(
        stopwords=default_stopwords(),
        rules=default_rules(),
        stem_mode=stem_mode,
    )
