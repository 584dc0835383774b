"""Experiment protocol: precision, recall, F1 with pooled relevance.

Experiments sweep field-coefficient settings and stemming modes. Every
recommended (query, candidate) pair is judged by a human as related or not;
the recall denominator for a query is the number of distinct candidates
judged related across *all* pooled runs, so a single run scores recall 1
against its own pool.

Relevance is a property of the (query, candidate) pair, not of the run
that surfaced it; conflicting labels across runs are rejected. Primary
metrics are micro-averaged over the query set; macro averages are reported
alongside. Cells with unjudged retrieved pairs are marked incomplete and
their precision is computed over the judged pairs only, never guessed.
"""

from __future__ import annotations

import csv
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .corpus import Article
from .errors import JudgmentConflictError, ParseError, UnknownDocError
from .index import build_index
from .recommend import Recommendation, WeightCoefficients, recommend
from .textproc import AnalyzerConfig, StemMode

REPORT_FORMAT = "albrec-eval-report"
REPORT_VERSION = 1

LABEL_RELATED = "related"
LABEL_NOT_RELATED = "not-related"


@dataclass(frozen=True)
class Judgment:
    """One human relevance label for a recommended candidate."""

    query_doc_id: str
    candidate_doc_id: str
    related: bool
    run_id: str


@dataclass
class ExperimentConfig:
    """One cell of the experiment grid."""

    coeffs: WeightCoefficients
    stem_mode: StemMode
    k: int
    query_set: list[str]
    label: str = ""

    def __post_init__(self):
        if not self.label:
            c = self.coeffs
            self.label = f"kw={c.kappa:g} title={c.tau:g} abstract={c.alpha:g} body={c.beta:g}"


@dataclass
class EvalCell:
    """Metrics for one (stem mode, coefficient setting) combination."""

    label: str
    stem_mode: StemMode
    coefficients: dict[str, float]
    k: int
    retrieved: int
    judged: int
    unjudged: int
    relevant_retrieved: int
    pooled_total: int
    precision: float
    recall: float
    f1: float
    precision_macro: float
    recall_macro: float
    f1_macro: float
    incomplete: bool
    per_query: dict[str, dict] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "stem_mode": self.stem_mode.value,
            "coefficients": self.coefficients,
            "k": self.k,
            "retrieved": self.retrieved,
            "judged": self.judged,
            "unjudged": self.unjudged,
            "relevant_retrieved": self.relevant_retrieved,
            "pooled_total": self.pooled_total,
            "precision": self.precision,
            "recall": self.recall,
            "f1": self.f1,
            "precision_macro": self.precision_macro,
            "recall_macro": self.recall_macro,
            "f1_macro": self.f1_macro,
            "incomplete": self.incomplete,
            "per_query": self.per_query,
        }


@dataclass
class EvalReport:
    """All cells of one sweep plus the pooled bookkeeping."""

    cells: list[EvalCell]
    pooled_per_query: dict[str, int]
    query_set: list[str]
    seed: int | None = None

    def to_dict(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "version": REPORT_VERSION,
            "seed": self.seed,
            "query_set": self.query_set,
            "pooled_per_query": self.pooled_per_query,
            "cells": [cell.to_dict() for cell in self.cells],
        }

    def render_grid(self) -> str:
        """Human-readable stem-mode x coefficient-setting grid (2 decimals)."""
        labels = list(dict.fromkeys(cell.label for cell in self.cells))
        modes = list(dict.fromkeys(cell.stem_mode for cell in self.cells))
        by_key = {(cell.stem_mode, cell.label): cell for cell in self.cells}

        def cell_text(mode: StemMode, label: str) -> str:
            cell = by_key.get((mode, label))
            if cell is None:
                return "-"
            mark = "*" if cell.incomplete else ""
            return f"P={cell.precision:.2f} R={cell.recall:.2f} F1={cell.f1:.2f}{mark}"

        mode_names = {StemMode.SINGLE_RUN: "single run", StemMode.FIXPOINT: "fixpoint"}
        rows = [["stemming \\ coefficients"] + labels]
        for mode in modes:
            rows.append([mode_names.get(mode, mode.value)] + [cell_text(mode, l) for l in labels])
        widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
        lines = [
            " | ".join(text.ljust(width) for text, width in zip(row, widths)).rstrip()
            for row in rows
        ]
        lines.insert(1, "-+-".join("-" * width for width in widths))
        if any(cell.incomplete for cell in self.cells):
            lines.append("* cell has unjudged retrieved pairs; precision computed over judged pairs")
        return "\n".join(lines)


def precision(relevant_retrieved: int, retrieved: int) -> float:
    """Fraction of retrieved items that are relevant; 0 when nothing retrieved."""
    if relevant_retrieved < 0 or retrieved < 0 or relevant_retrieved > retrieved:
        raise ValueError(
            f"need 0 <= relevant_retrieved <= retrieved, got {relevant_retrieved}/{retrieved}"
        )
    if retrieved == 0:
        return 0.0
    return relevant_retrieved / retrieved


def recall(relevant_retrieved: int, total_relevant: int) -> float:
    """Fraction of all relevant items retrieved; 0 when the pool is empty."""
    if relevant_retrieved < 0 or total_relevant < 0 or relevant_retrieved > total_relevant:
        raise ValueError(
            f"need 0 <= relevant_retrieved <= total_relevant, got {relevant_retrieved}/{total_relevant}"
        )
    if total_relevant == 0:
        return 0.0
    return relevant_retrieved / total_relevant


def f1(p: float, r: float) -> float:
    """Harmonic mean of precision and recall; 0 when both vanish."""
    if p + r == 0.0:
        return 0.0
    return (2 * p * r) / (p + r)


def judgment_labels(judgments: Iterable[Judgment]) -> dict[tuple[str, str], bool]:
    """Global (query, candidate) -> related map.

    Rejects duplicate (query, candidate, run) records and conflicting
    labels for the same pair across runs.
    """
    seen_triples: set[tuple[str, str, str]] = set()
    labels: dict[tuple[str, str], bool] = {}
    for j in judgments:
        triple = (j.query_doc_id, j.candidate_doc_id, j.run_id)
        if triple in seen_triples:
            raise JudgmentConflictError(f"duplicate judgment record for {triple}")
        seen_triples.add(triple)
        pair = (j.query_doc_id, j.candidate_doc_id)
        if pair in labels and labels[pair] != j.related:
            raise JudgmentConflictError(
                f"conflicting labels for query {pair[0]!r}, candidate {pair[1]!r}: "
                "relevance must be run-independent"
            )
        labels[pair] = j.related
    return labels


def pool_relevant(judgments: Iterable[Judgment]) -> dict[str, int]:
    """Per-query count of distinct candidates judged related across all runs."""
    judgments = list(judgments)
    judgment_labels(judgments)  # validates conflicts and duplicates
    pools: dict[str, set[str]] = {}
    for j in judgments:
        if j.related:
            pools.setdefault(j.query_doc_id, set()).add(j.candidate_doc_id)
    return {q: len(docs) for q, docs in pools.items()}


def load_judgments(path: str | Path) -> list[Judgment]:
    """Read a judgments CSV: query_id, candidate_id, label, run_id."""
    judgments = []
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        required = {"query_id", "candidate_id", "label", "run_id"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise ParseError(
                f"judgments file must have columns {sorted(required)}, "
                f"got {reader.fieldnames}",
                field="header",
            )
        for lineno, row in enumerate(reader, start=2):
            label = row["label"].strip().lower()
            if label not in (LABEL_RELATED, LABEL_NOT_RELATED):
                raise ParseError(
                    f"line {lineno}: label must be '{LABEL_RELATED}' or "
                    f"'{LABEL_NOT_RELATED}', got {row['label']!r}",
                    field="label",
                )
            judgments.append(
                Judgment(
                    query_doc_id=row["query_id"].strip(),
                    candidate_doc_id=row["candidate_id"].strip(),
                    related=label == LABEL_RELATED,
                    run_id=row["run_id"].strip(),
                )
            )
    return judgments


def save_judgments(judgments: Iterable[Judgment], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["query_id", "candidate_id", "label", "run_id"])
        for j in judgments:
            writer.writerow(
                [
                    j.query_doc_id,
                    j.candidate_doc_id,
                    LABEL_RELATED if j.related else LABEL_NOT_RELATED,
                    j.run_id,
                ]
            )


def sample_queries(articles: list[Article], n: int, seed: int) -> list[str]:
    """Seeded sample of query article ids (sorted for stable reports)."""
    ids = sorted(a.id for a in articles)
    rng = random.Random(seed)
    return sorted(rng.sample(ids, min(n, len(ids))))


def run_experiments(
    articles: list[Article],
    analyzer: AnalyzerConfig,
    experiments: list[ExperimentConfig],
    judgments: list[Judgment],
    seed: int | None = None,
) -> EvalReport:
    """Run every experiment cell and score it against the pooled judgments.

    One index is built per stemming mode and shared across cells. Queries
    must exist in the corpus. Deterministic given identical inputs.
    """
    labels = judgment_labels(judgments)
    pooled = pool_relevant(judgments)
    known_ids = {a.id for a in articles}

    indexes: dict[StemMode, object] = {}
    cells = []
    all_queries: list[str] = []
    for exp in experiments:
        exp.coeffs.validate()
        missing = [q for q in exp.query_set if q not in known_ids]
        if missing:
            raise UnknownDocError(f"query ids not in corpus: {missing}")
        for q in exp.query_set:
            if q not in all_queries:
                all_queries.append(q)
        if exp.stem_mode not in indexes:
            indexes[exp.stem_mode] = build_index(articles, analyzer.with_stem_mode(exp.stem_mode))
        index = indexes[exp.stem_mode]

        retrieved = judged = relevant = unjudged = 0
        p_macro: list[float] = []
        r_macro: list[float] = []
        f_macro: list[float] = []
        per_query: dict[str, dict] = {}
        for q in exp.query_set:
            rec: Recommendation = recommend(index, q, exp.coeffs, exp.k)
            candidates = [d for d, _ in rec.ranked]
            judged_q = [c for c in candidates if (q, c) in labels]
            relevant_q = sum(1 for c in judged_q if labels[(q, c)])
            pooled_q = pooled.get(q, 0)
            p_q = precision(relevant_q, len(judged_q))
            r_q = recall(relevant_q, pooled_q)
            per_query[q] = {
                "retrieved": len(candidates),
                "judged": len(judged_q),
                "relevant_retrieved": relevant_q,
                "pooled": pooled_q,
                "precision": p_q,
                "recall": r_q,
            }
            retrieved += len(candidates)
            judged += len(judged_q)
            relevant += relevant_q
            unjudged += len(candidates) - len(judged_q)
            p_macro.append(p_q)
            r_macro.append(r_q)
            f_macro.append(f1(p_q, r_q))

        pooled_total = sum(pooled.get(q, 0) for q in exp.query_set)
        p_micro = precision(relevant, judged)
        r_micro = recall(relevant, pooled_total)
        n_queries = len(exp.query_set)
        cells.append(
            EvalCell(
                label=exp.label,
                stem_mode=exp.stem_mode,
                coefficients=exp.coeffs.as_dict(),
                k=exp.k,
                retrieved=retrieved,
                judged=judged,
                unjudged=unjudged,
                relevant_retrieved=relevant,
                pooled_total=pooled_total,
                precision=p_micro,
                recall=r_micro,
                f1=f1(p_micro, r_micro),
                precision_macro=sum(p_macro) / n_queries if n_queries else 0.0,
                recall_macro=sum(r_macro) / n_queries if n_queries else 0.0,
                f1_macro=sum(f_macro) / n_queries if n_queries else 0.0,
                incomplete=unjudged > 0,
                per_query=per_query,
            )
        )

    pooled_for_queries = {q: pooled.get(q, 0) for q in all_queries}
    return EvalReport(
        cells=cells, pooled_per_query=pooled_for_queries, query_set=all_queries, seed=seed
    )


def save_report(report: EvalReport, path: str | Path) -> None:
    """Write the machine-readable report (full precision, sorted keys)."""
    blob = json.dumps(report.to_dict(), ensure_ascii=False, sort_keys=True, indent=2)
    Path(path).write_text(blob + "\n", encoding="utf-8")
