"""Independent reference implementations used as test oracles.

Everything here recomputes results from raw data (postings, article text)
without going through the sparse-vector/kernel code paths it checks.
"""

from __future__ import annotations

import math
import random

from albrec.corpus import Article
from albrec.index import Index
from albrec.recommend import WeightCoefficients
from albrec.textproc import AnalyzerConfig, analyze


def _raw_count(index: Index, doc_id: str, field_name: str, term: str) -> int:
    return index.postings.get(field_name, {}).get(term, {}).get(doc_id, 0)


def dense_vector(index: Index, doc_id: str, coeffs: WeightCoefficients) -> list[float]:
    """Dense weight vector over the full sorted vocabulary (zeros kept)."""
    n = index.n_docs
    weights = []
    for term in sorted(index.doc_freq):
        idf = math.log10(n / index.doc_freq[term])
        kw = 1.0 if _raw_count(index, doc_id, "keywords", term) > 0 else 0.0
        w = coeffs.kappa * kw
        w += coeffs.tau * (_raw_count(index, doc_id, "title", term) * idf)
        w += coeffs.alpha * (_raw_count(index, doc_id, "abstract", term) * idf)
        w += coeffs.beta * (_raw_count(index, doc_id, "body", term) * idf)
        weights.append(w)
    return weights


def dense_cosine(v1: list[float], v2: list[float]) -> float:
    dot = 0.0
    n1 = 0.0
    n2 = 0.0
    for a, b in zip(v1, v2):
        dot += a * b
        n1 += a * a
        n2 += b * b
    if n1 == 0.0 or n2 == 0.0:
        return 0.0
    return min(dot / math.sqrt(n1 * n2), 1.0)


def oracle_recommend(
    index: Index, query_doc: str, coeffs: WeightCoefficients, k: int
) -> list[tuple[str, float]]:
    """Brute-force all-pairs recommendation over dense full-vocabulary vectors."""
    category = index.doc_categories[query_doc]
    query_vec = dense_vector(index, query_doc, coeffs)
    scored = []
    for doc_id in sorted(index.doc_categories):
        if doc_id == query_doc or index.doc_categories[doc_id] != category:
            continue
        score = dense_cosine(query_vec, dense_vector(index, doc_id, coeffs))
        if score > 0.0:
            scored.append((doc_id, score))
    scored.sort(key=lambda p: (-p[1], p[0]))
    return scored[:k]


def oracle_search(
    articles: list[Article], config: AnalyzerConfig, query: str, limit: int
) -> list[tuple[str, int]]:
    """Frequency-ranked search recomputed from article text, bypassing the index."""
    query_terms = list(dict.fromkeys(analyze(query, config)))
    scored = []
    for article in articles:
        fields = [
            analyze(" ".join(article.keywords), config),
            analyze(article.title, config),
            analyze(article.abstract, config),
            analyze(article.body, config),
        ]
        score = sum(terms.count(t) for t in query_terms for terms in fields)
        if score > 0:
            scored.append((article.id, score))
    scored.sort(key=lambda p: (-p[1], p[0]))
    return scored[:limit]


# Synthetic corpora for randomized oracle-equivalence testing. Drawing the
# words from a bounded pool keeps the vocabulary small (no stemming, no
# stop words in the analyzer these corpora are indexed with).
WORD_POOL = [f"fjala{i:03d}" for i in range(180)]
CATEGORIES = ["biologji", "kimi", "matematike", "fizike"]


def random_corpus(seed: int, max_docs: int = 50) -> list[Article]:
    rng = random.Random(seed)
    n_docs = rng.randint(4, max_docs)
    vocab = rng.sample(WORD_POOL, rng.randint(20, len(WORD_POOL)))
    articles = []
    for i in range(n_docs):
        def text(lo: int, hi: int) -> str:
            return " ".join(rng.choice(vocab) for _ in range(rng.randint(lo, hi)))

        articles.append(
            Article(
                id=f"d{i:03d}",
                title=text(1, 6) or vocab[0],
                category=rng.choice(CATEGORIES[: rng.randint(1, len(CATEGORIES))]),
                abstract=text(0, 12),
                keywords=[rng.choice(vocab) for _ in range(rng.randint(0, 4))],
                body=text(0, 40),
            )
        )
    return articles
