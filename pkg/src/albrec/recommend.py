"""Field-weighted document vectors, cosine similarity and top-k recommendation.

A term's weight in a document is an affine combination of a binary
keyword-presence indicator and the tf-idf weights of the term in the title,
abstract and body. The four coefficients must sum to one.

Similarity of two documents is the cosine of their sparse weight vectors.
A zero vector (degenerate article) has similarity 0 with everything and is
never recommended; candidates with similarity 0 are dropped from results.
Recommendations are restricted to the query article's category, sorted by
descending score with ties broken by ascending document id.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import kernels
from .errors import CoefficientError, IndexFormatError, UnknownDocError
from .index import (
    FIELD_ABSTRACT,
    FIELD_BODY,
    FIELD_KEYWORDS,
    FIELD_TITLE,
    Index,
    tfidf,
)

COEFFICIENT_TOLERANCE = 1e-9
DEFAULT_TOP_K = 10

BATCH_FORMAT = "albrec-batch"
BATCH_VERSION = 1
SCORE_DECIMALS = 4


@dataclass(frozen=True)
class WeightCoefficients:
    """The affine field-importance coefficients (keywords, title, abstract, body)."""

    kappa: float
    tau: float
    alpha: float
    beta: float

    def validate(self) -> None:
        """Enforce the affine constraint kappa + tau + alpha + beta = 1."""
        values = (self.kappa, self.tau, self.alpha, self.beta)
        for name, value in zip(("kappa", "tau", "alpha", "beta"), values):
            if not 0.0 <= value <= 1.0:
                raise CoefficientError(f"coefficient {name}={value} must lie in [0, 1]")
        total = self.kappa + self.tau + self.alpha + self.beta
        if abs(total - 1.0) > COEFFICIENT_TOLERANCE:
            raise CoefficientError(
                f"coefficients must satisfy kappa + tau + alpha + beta = 1; sum is {total:.6g}"
            )

    def as_dict(self) -> dict[str, float]:
        return {"kappa": self.kappa, "tau": self.tau, "alpha": self.alpha, "beta": self.beta}


@dataclass
class DocVector:
    """Sparse weight vector of one document.

    ``weights`` holds only strictly positive entries, keyed by term.
    ``norm_sq`` is the exact accumulated sum of squares (in sorted-term
    order); ``norm`` is its square root.
    """

    doc_id: str
    weights: dict[str, float]
    norm: float
    norm_sq: float


@dataclass
class Recommendation:
    """Ranked same-category articles for one query article."""

    query_doc_id: str
    ranked: list[tuple[str, float]]
    k_requested: int


def combine_weights(
    coeffs: WeightCoefficients,
    keyword_present: bool,
    title_tfidf: float,
    abstract_tfidf: float,
    body_tfidf: float,
) -> float:
    """The affine combination producing one term weight."""
    w = coeffs.kappa * (1.0 if keyword_present else 0.0)
    w += coeffs.tau * title_tfidf
    w += coeffs.alpha * abstract_tfidf
    w += coeffs.beta * body_tfidf
    return w


def _term_weight(index: Index, doc_id: str, term: str, coeffs: WeightCoefficients) -> float:
    return combine_weights(
        coeffs,
        index.tf(doc_id, FIELD_KEYWORDS, term) > 0,
        tfidf(index, doc_id, FIELD_TITLE, term),
        tfidf(index, doc_id, FIELD_ABSTRACT, term),
        tfidf(index, doc_id, FIELD_BODY, term),
    )


def term_weight(index: Index, doc_id: str, term: str, coeffs: WeightCoefficients) -> float:
    """Weight of one term in one document under the given coefficients."""
    coeffs.validate()
    return _term_weight(index, doc_id, term, coeffs)


def doc_vector(index: Index, doc_id: str, coeffs: WeightCoefficients) -> DocVector:
    """Sparse weight vector over every vocabulary term with nonzero weight."""
    if doc_id not in index:
        raise UnknownDocError(f"unknown document id {doc_id!r}")
    weights: dict[str, float] = {}
    norm_sq = 0.0
    for term in index.doc_terms(doc_id):
        w = _term_weight(index, doc_id, term, coeffs)
        if w > 0.0:
            weights[term] = w
            norm_sq += w * w
    return DocVector(doc_id=doc_id, weights=weights, norm=math.sqrt(norm_sq), norm_sq=norm_sq)


def cosine(v1: DocVector, v2: DocVector) -> float:
    """Cosine similarity in [0, 1]; 0 by convention when either norm is 0."""
    if v1.norm_sq == 0.0 or v2.norm_sq == 0.0:
        return 0.0
    acc = 0.0
    for term in sorted(v1.weights.keys() & v2.weights.keys()):
        acc += v1.weights[term] * v2.weights[term]
    score = acc / math.sqrt(v1.norm_sq * v2.norm_sq)
    return min(score, 1.0)


def _encode(vec: DocVector, term_ids: dict[str, int]) -> tuple[np.ndarray, np.ndarray]:
    terms = sorted(vec.weights)
    ids = np.array([term_ids[t] for t in terms], dtype=np.int32)
    ws = np.array([vec.weights[t] for t in terms], dtype=np.float64)
    return ids, ws

def _encode_csr(
    vectors: list[DocVector], term_ids: dict[str, int]
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    indptr = np.zeros(len(vectors) + 1, dtype=np.int64)
    id_parts = []
    w_parts = []
    norms = np.zeros(len(vectors), dtype=np.float64)
    for pos, vec in enumerate(vectors):
        ids, ws = _encode(vec, term_ids)
        indptr[pos + 1] = indptr[pos] + len(ids)
        id_parts.append(ids)
        w_parts.append(ws)
        norms[pos] = vec.norm_sq
    c_ids = np.concatenate(id_parts) if id_parts else np.zeros(0, dtype=np.int32)
    c_w = np.concatenate(w_parts) if w_parts else np.zeros(0, dtype=np.float64)
    return indptr, c_ids, c_w, norms


def _rank(
    query_vec: DocVector,
    candidates: list[DocVector],
    term_ids: dict[str, int],
    k: int,
) -> list[tuple[str, float]]:
    """Score candidates against the query and keep the k best positive ones."""
    if not candidates:
        return []
    q_ids, q_w = _encode(query_vec, term_ids)
    indptr, c_ids, c_w, norms = _encode_csr(candidates, term_ids)
    scores = kernels.cosine_scores(q_ids, q_w, query_vec.norm_sq, indptr, c_ids, c_w, norms)
    pairs = [
        (vec.doc_id, float(score))
        for vec, score in zip(candidates, scores)
        if score > 0.0
    ]
    pairs.sort(key=lambda p: (-p[1], p[0]))
    return pairs[:k]


def recommend(
    index: Index, query_doc: str, coeffs: WeightCoefficients, k: int = DEFAULT_TOP_K
) -> Recommendation:
    """Top-k most similar same-category articles for one query article."""
    coeffs.validate()
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if query_doc not in index:
        raise UnknownDocError(f"unknown document id {query_doc!r}")
    category = index.doc_categories[query_doc]
    candidate_ids = [
        d for d in index.doc_ids if d != query_doc and index.doc_categories[d] == category
    ]
    query_vec = doc_vector(index, query_doc, coeffs)
    candidates = [doc_vector(index, d, coeffs) for d in candidate_ids]
    ranked = _rank(query_vec, candidates, index.term_ids, k)
    return Recommendation(query_doc_id=query_doc, ranked=ranked, k_requested=k)


def batch_recommend(
    index: Index, coeffs: WeightCoefficients, k: int = DEFAULT_TOP_K
) -> dict[str, Recommendation]:
    """Offline job: recommendations for every document in the index.

    Vectors are computed once per category; per-document output is
    identical to calling :func:`recommend` directly.
    """
    coeffs.validate()
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    by_category: dict[str, list[str]] = {}
    for doc_id in index.doc_ids:
        by_category.setdefault(index.doc_categories[doc_id], []).append(doc_id)

    results: dict[str, Recommendation] = {}
    for doc_ids in by_category.values():
        vectors = {d: doc_vector(index, d, coeffs) for d in doc_ids}
        for query_doc in doc_ids:
            candidates = [vectors[d] for d in doc_ids if d != query_doc]
            ranked = _rank(vectors[query_doc], candidates, index.term_ids, k)
            results[query_doc] = Recommendation(query_doc, ranked, k)
    return dict(sorted(results.items()))


def _batch_payload(
    results: dict[str, Recommendation], coeffs: WeightCoefficients, k: int, fingerprint: str
) -> dict:
    return {
        "format": BATCH_FORMAT,
        "version": BATCH_VERSION,
        "analyzer_fingerprint": fingerprint,
        "coefficients": coeffs.as_dict(),
        "k": k,
        "recommendations": {
            q: [[d, round(s, SCORE_DECIMALS)] for d, s in rec.ranked]
            for q, rec in results.items()
        },
    }


def batch_to_bytes(
    results: dict[str, Recommendation],
    coeffs: WeightCoefficients,
    k: int,
    analyzer_fingerprint: str,
) -> bytes:
    """Canonical serialized batch output (scores rounded to 4 decimals)."""
    payload = _batch_payload(results, coeffs, k, analyzer_fingerprint)
    blob = json.dumps(payload, ensure_ascii=False, sort_keys=True, separators=(",", ":"))
    return (blob + "\n").encode("utf-8")


def save_batch(
    results: dict[str, Recommendation],
    coeffs: WeightCoefficients,
    k: int,
    analyzer_fingerprint: str,
    path: str | Path,
) -> None:
    Path(path).write_bytes(batch_to_bytes(results, coeffs, k, analyzer_fingerprint))


def load_batch(path: str | Path) -> dict:
    """Load a persisted batch output file (as plain payload dict)."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise IndexFormatError(f"batch file is not valid JSON: {exc}") from None
    if not isinstance(payload, dict) or payload.get("format") != BATCH_FORMAT:
        raise IndexFormatError("file does not carry the expected batch format header")
    if payload.get("version") != BATCH_VERSION:
        raise IndexFormatError(
            f"unsupported batch format version {payload.get('version')!r}; expected {BATCH_VERSION}"
        )
    return payload
