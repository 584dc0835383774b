"""Web service exposing search, recommendation and article ingestion.

Endpoints::

    GET  /search?q=...&limit=...
    GET  /articles/{doc_id}/recommendations?k=...
    POST /articles
    POST /admin/rebuild

Every response is wrapped in an envelope carrying a request id and a
status; error detail never leaks server-side paths. Ingestion only stages
articles; recommendation stays an offline computation over an immutable
index snapshot, and the rebuild endpoint swaps in a new snapshot
atomically. Precomputed batch recommendations are served when they match
the live index; otherwise the service computes on demand and says so.
"""

from __future__ import annotations

import threading
import uuid
from typing import Any

from fastapi import Body, FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from starlette.exceptions import HTTPException as StarletteHTTPException

from .corpus import Article, parse_article
from .errors import EmptyQueryError, ParseError, ValidationError
from .index import Index, build_index
from .recommend import DEFAULT_TOP_K, SCORE_DECIMALS, WeightCoefficients, recommend
from .search import search
from .textproc import AnalyzerConfig


class ServiceState:
    """Mutable service-side state; the index reference swaps atomically."""

    def __init__(
        self,
        analyzer: AnalyzerConfig,
        coeffs: WeightCoefficients,
        articles: list[Article] | None = None,
        index: Index | None = None,
        batch: dict | None = None,
    ):
        self.analyzer = analyzer
        self.coeffs = coeffs
        self.articles = list(articles or [])
        self.index = index
        self.batch = batch
        self.staged: list[Article] = []
        self.lock = threading.Lock()

    def known_ids(self) -> set[str]:
        ids = {a.id for a in self.articles}
        ids.update(a.id for a in self.staged)
        if self.index is not None:
            ids.update(self.index.doc_categories)
        return ids


def _envelope(payload: Any = None, error: Any = None) -> dict:
    return {
        "request_id": uuid.uuid4().hex,
        "status": "ok" if error is None else "error",
        "payload": payload,
        "error": error,
    }


def _error_response(status_code: int, error: Any) -> JSONResponse:
    return JSONResponse(status_code=status_code, content=_envelope(error=error))


def create_app(state: ServiceState) -> FastAPI:
    app = FastAPI(title="albrec service")

    @app.exception_handler(RequestValidationError)
    async def on_validation_error(request: Request, exc: RequestValidationError):
        detail = [
            {"field": ".".join(str(loc) for loc in err["loc"]), "message": err["msg"]}
            for err in exc.errors()
        ]
        return _error_response(422, detail)

    @app.exception_handler(StarletteHTTPException)
    async def on_http_error(request: Request, exc: StarletteHTTPException):
        return _error_response(exc.status_code, exc.detail)

    @app.get("/search")
    def ep_search(q: str = Query(...), limit: int = Query(DEFAULT_TOP_K, ge=1)):
        index = state.index
        if index is None:
            return _error_response(503, "no index loaded")
        try:
            result = search(index, q, state.analyzer, limit=limit)
        except EmptyQueryError:
            return _error_response(400, "query is empty after analysis")
        return _envelope(
            {
                "query_terms": result.query_terms,
                "results": [{"doc_id": d, "score": s} for d, s in result.ranked],
            }
        )

    @app.get("/articles/{doc_id}/recommendations")
    def ep_recommend(doc_id: str, k: int = Query(DEFAULT_TOP_K, ge=1)):
        index = state.index
        if index is None:
            return _error_response(503, "no index loaded")
        if doc_id not in index.doc_categories:
            return _error_response(404, f"unknown article id {doc_id!r}")
        batch = state.batch
        if (
            batch is not None
            and batch["analyzer_fingerprint"] == index.analyzer_fingerprint
            and doc_id in batch["recommendations"]
            and k <= batch["k"]
        ):
            results = batch["recommendations"][doc_id][:k]
            served_from = "batch"
        else:
            rec = recommend(index, doc_id, state.coeffs, k=k)
            results = [[d, round(s, SCORE_DECIMALS)] for d, s in rec.ranked]
            served_from = "computed"
        return _envelope(
            {
                "query_doc_id": doc_id,
                "served_from": served_from,
                "results": [{"doc_id": d, "score": s} for d, s in results],
            }
        )

    @app.post("/articles", status_code=202)
    def ep_ingest(record: dict = Body(...)):
        try:
            article = parse_article(record)
        except (ParseError, ValidationError) as exc:
            return _error_response(422, {"field": exc.field, "message": str(exc)})
        with state.lock:
            if article.id in state.known_ids():
                return _error_response(409, f"article id {article.id!r} already exists")
            state.staged.append(article)
            pending = len(state.staged)
        return JSONResponse(
            status_code=202,
            content=_envelope({"staged_id": article.id, "pending": pending}),
        )

    @app.post("/admin/rebuild")
    def ep_rebuild():
        with state.lock:
            articles = state.articles + state.staged
            try:
                new_index = build_index(articles, state.analyzer)
            except ValidationError as exc:
                return _error_response(409, str(exc))
            state.articles = articles
            state.staged = []
            state.index = new_index
            state.batch = None  # precomputed results belong to the old snapshot
        return _envelope(
            {
                "doc_count": new_index.n_docs,
                "analyzer_fingerprint": new_index.analyzer_fingerprint,
            }
        )

    return app
