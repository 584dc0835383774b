"""Content-based indexing, search and recommendation for Albanian articles."""

from .corpus import Article, CorpusStats, Section, load_corpus, parse_article, save_corpus, validate_corpus
from .index import Index, build_index, load_index, save_index, tfidf
from .recommend import (
    DocVector,
    Recommendation,
    WeightCoefficients,
    batch_recommend,
    cosine,
    doc_vector,
    recommend,
    term_weight,
)
from .search import SearchResult, search
from .textproc import AnalyzerConfig, StemMode, StemRule, analyze, default_config

__version__ = "0.1.0"

__all__ = [
    "AnalyzerConfig",
    "Article",
    "CorpusStats",
    "DocVector",
    "Index",
    "Recommendation",
    "SearchResult",
    "Section",
    "StemMode",
    "StemRule",
    "WeightCoefficients",
    "analyze",
    "batch_recommend",
    "build_index",
    "cosine",
    "default_config",
    "doc_vector",
    "load_corpus",
    "load_index",
    "parse_article",
    "recommend",
    "save_corpus",
    "save_index",
    "search",
    "term_weight",
    "tfidf",
    "validate_corpus",
]
