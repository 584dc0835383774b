from __future__ import annotations

from pathlib import Path

import pytest

from albrec.corpus import load_corpus
from albrec.textproc import AnalyzerConfig, StemMode, StemRule

DATA_DIR = Path(__file__).parent / "data"

# Analyzer used by the hand-computed fixtures: stop words only, no stemming,
# so the weight arithmetic stays trivially traceable.
TINY_STOPWORDS = frozenset({"i", "e", "dhe", "ne", "mbi"})

# Analyzer for the sweep fixture: a four-rule pack where some token pairs
# merge only under fixpoint stemming, so the two stem modes produce
# genuinely different grids.
SWEEP_STOPWORDS = frozenset({"dhe", "e", "i", "ne", "te", "me", "nje"})
SWEEP_RULES = (
    StemRule("ve", "", 3),
    StemRule("ime", "", 3),
    StemRule("it", "", 3),
    StemRule("i", "", 3),
)


@pytest.fixture
def tiny_analyzer():
    return AnalyzerConfig(stopwords=TINY_STOPWORDS, rules=(), stem_mode=StemMode.SINGLE_RUN)


@pytest.fixture
def tiny_corpus():
    return load_corpus(DATA_DIR / "corpus_tiny.jsonl")


@pytest.fixture
def sweep_analyzer():
    return AnalyzerConfig(
        stopwords=SWEEP_STOPWORDS, rules=SWEEP_RULES, stem_mode=StemMode.SINGLE_RUN
    )


@pytest.fixture
def sweep_corpus():
    return load_corpus(DATA_DIR / "corpus_sweep.jsonl")
