"""Command-line interface wiring all modules together.

Subcommands: ingest, index, search, recommend, batch, evaluate, sweep,
serve. Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import corpus as corpus_mod
from . import evaluation as eval_mod
from . import index as index_mod
from .errors import AlbrecError, CoefficientError, UsageError
from .recommend import (
    DEFAULT_TOP_K,
    WeightCoefficients,
    batch_recommend,
    load_batch,
    save_batch,
)
from .recommend import recommend as recommend_op
from .search import search as search_op
from .textproc import AnalyzerConfig, StemMode, default_config, load_rules, load_stopwords

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits with the usage code on bad flags."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_analyzer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rules", help="stemmer rule file (default: shipped Albanian pack)")
    parser.add_argument("--stopwords", help="stop-word file (default: shipped Albanian list)")
    parser.add_argument(
        "--stem-mode",
        choices=[m.value for m in StemMode],
        default=StemMode.SINGLE_RUN.value,
        help="single (one rule pass) or fixpoint (stem until stable)",
    )


def _add_coefficient_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--kappa", type=float, required=True, help="keywords coefficient")
    parser.add_argument("--tau", type=float, required=True, help="title coefficient")
    parser.add_argument("--alpha", type=float, required=True, help="abstract coefficient")
    parser.add_argument("--beta", type=float, required=True, help="body coefficient")


def _analyzer(args) -> AnalyzerConfig:
    mode = StemMode.parse(args.stem_mode)
    config = default_config(mode)
    if args.stopwords:
        config = AnalyzerConfig(
            stopwords=load_stopwords(args.stopwords), rules=config.rules, stem_mode=mode
        )
    if args.rules:
        config = AnalyzerConfig(
            stopwords=config.stopwords, rules=load_rules(args.rules), stem_mode=mode
        )
    return config


def _coefficients(args) -> WeightCoefficients:
    coeffs = WeightCoefficients(args.kappa, args.tau, args.alpha, args.beta)
    coeffs.validate()
    return coeffs


def cmd_ingest(args) -> int:
    articles = corpus_mod.load_corpus(args.corpus)
    stats, warnings = corpus_mod.validate_corpus(articles)
    print(f"articles: {stats.article_count}")
    for category, count in stats.per_category_counts.items():
        print(f"  {category}: {count}")
    for warning in warnings:
        print(f"warning [{warning.code}] {warning.article_id}: {warning.message}")
    print(f"warnings: {len(warnings)}")
    return EXIT_OK


def cmd_index(args) -> int:
    articles = corpus_mod.load_corpus(args.corpus)
    corpus_mod.validate_corpus(articles)
    config = _analyzer(args)
    index = index_mod.build_index(articles, config)
    index_mod.save_index(index, args.index)
    print(f"indexed {index.n_docs} articles, {len(index.doc_freq)} terms -> {args.index}")
    return EXIT_OK


def cmd_search(args) -> int:
    index = index_mod.load_index(args.index)
    config = _analyzer(args)
    result = search_op(index, args.query, config, limit=args.top_k)
    print(f"query terms: {' '.join(result.query_terms)}")
    for doc_id, score in result.ranked:
        print(f"{doc_id}\t{score}")
    return EXIT_OK


def cmd_recommend(args) -> int:
    coeffs = _coefficients(args)
    index = index_mod.load_index(args.index)
    rec = recommend_op(index, args.doc, coeffs, k=args.top_k)
    for doc_id, score in rec.ranked:
        print(f"{doc_id}\t{score:.4f}")
    return EXIT_OK


def cmd_batch(args) -> int:
    coeffs = _coefficients(args)
    index = index_mod.load_index(args.index)
    results = batch_recommend(index, coeffs, k=args.top_k)
    save_batch(results, coeffs, args.top_k, index.analyzer_fingerprint, args.out)
    print(f"wrote recommendations for {len(results)} articles -> {args.out}")
    return EXIT_OK


def cmd_evaluate(args) -> int:
    judgments = eval_mod.load_judgments(args.judgments)
    batch = load_batch(args.batch)
    labels = eval_mod.judgment_labels(judgments)
    pooled = eval_mod.pool_relevant(judgments)

    queries = sorted({j.query_doc_id for j in judgments})
    retrieved = judged = relevant = 0
    for q in queries:
        candidates = [d for d, _ in batch["recommendations"].get(q, [])]
        judged_q = [c for c in candidates if (q, c) in labels]
        retrieved += len(candidates)
        judged += len(judged_q)
        relevant += sum(1 for c in judged_q if labels[(q, c)])
    pooled_total = sum(pooled.get(q, 0) for q in queries)

    p = eval_mod.precision(relevant, judged)
    r = eval_mod.recall(relevant, pooled_total)
    print(f"queries: {len(queries)}  retrieved: {retrieved}  judged: {judged}")
    print(f"P={p:.4f} R={r:.4f} F1={eval_mod.f1(p, r):.4f}")
    if judged < retrieved:
        print(f"note: {retrieved - judged} retrieved pairs are unjudged")
    return EXIT_OK


def _parse_sweep_configs(path: str, k_default: int) -> tuple[list[dict], list[StemMode], int]:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"configs file is not valid JSON: {exc.msg}") from None
    if not isinstance(payload, dict):
        raise UsageError("configs file must be a JSON object")
    coefficients = payload.get("coefficients", [])
    if not isinstance(coefficients, list):
        raise UsageError("configs field 'coefficients' must be an array")
    for pos, entry in enumerate(coefficients):
        for name in ("kappa", "tau", "alpha", "beta"):
            if not isinstance(entry, dict) or name not in entry:
                raise UsageError(f"coefficients[{pos}] is missing field '{name}'")
            if not isinstance(entry[name], (int, float)):
                raise UsageError(f"coefficients[{pos}] field '{name}' must be a number")
    modes = []
    for raw in payload.get("stem_modes", []):
        try:
            modes.append(StemMode.parse(raw))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    return coefficients, modes, int(payload.get("k", k_default))


def cmd_sweep(args) -> int:
    coefficients, modes, k = _parse_sweep_configs(args.configs, args.top_k)
    coeff_objs = [
        WeightCoefficients(entry["kappa"], entry["tau"], entry["alpha"], entry["beta"])
        for entry in coefficients
    ]
    for coeffs in coeff_objs:
        coeffs.validate()

    articles = corpus_mod.load_corpus(args.corpus)
    corpus_mod.validate_corpus(articles)
    judgments = eval_mod.load_judgments(args.judgments)
    analyzer = _analyzer(args)

    if args.queries:
        query_set = sorted(args.queries.split(","))
        seed = None
    else:
        query_set = eval_mod.sample_queries(articles, args.sample_size, args.seed)
        seed = args.seed

    experiments = [
        eval_mod.ExperimentConfig(
            coeffs=coeffs,
            stem_mode=mode,
            k=k,
            query_set=list(query_set),
            label=entry.get("label", ""),
        )
        for mode in modes
        for entry, coeffs in zip(coefficients, coeff_objs)
    ]
    report = eval_mod.run_experiments(articles, analyzer, experiments, judgments, seed=seed)

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    eval_mod.save_report(report, out_dir / "report.json")
    grid = report.render_grid()
    (out_dir / "report.txt").write_text(grid + "\n", encoding="utf-8")
    print(grid)
    return EXIT_OK


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceState, create_app

    coeffs = _coefficients(args)
    analyzer = _analyzer(args)
    articles = corpus_mod.load_corpus(args.corpus)
    corpus_mod.validate_corpus(articles)
    index = index_mod.load_index(args.index) if args.index else index_mod.build_index(articles, analyzer)
    batch = load_batch(args.batch) if args.batch else None
    state = ServiceState(
        analyzer=analyzer, coeffs=coeffs, articles=articles, index=index, batch=batch
    )
    uvicorn.run(create_app(state), host=args.host, port=args.port)
    return EXIT_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="albrec", description="Article indexing, search and recommendation")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ingest", help="validate a corpus file and report its shape")
    p.add_argument("--corpus", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("index", help="build and persist the term index")
    p.add_argument("--corpus", required=True)
    p.add_argument("--index", required=True, help="output index file")
    _add_analyzer_flags(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", help="frequency-ranked keyword search")
    p.add_argument("--index", required=True)
    p.add_argument("--query", required=True)
    p.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)
    _add_analyzer_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("recommend", help="similar same-category articles for one article")
    p.add_argument("--index", required=True)
    p.add_argument("--doc", required=True, help="query article id")
    p.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)
    _add_coefficient_flags(p)
    p.set_defaults(func=cmd_recommend)

    p = sub.add_parser("batch", help="precompute recommendations for every article")
    p.add_argument("--index", required=True)
    p.add_argument("--out", required=True, help="output batch file")
    p.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)
    _add_coefficient_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("evaluate", help="score one batch output against judgments")
    p.add_argument("--batch", required=True)
    p.add_argument("--judgments", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="run the coefficient x stemming experiment grid")
    p.add_argument("--corpus", required=True)
    p.add_argument("--configs", required=True, help="JSON experiment matrix")
    p.add_argument("--judgments", required=True)
    p.add_argument("--out", default=".", help="output directory for report files")
    p.add_argument("--queries", help="comma-separated query ids (skips sampling)")
    p.add_argument("--sample-size", type=int, default=10, help="queries to sample")
    p.add_argument("--seed", type=int, default=42, help="query sampling seed")
    p.add_argument("--top-k", type=int, default=DEFAULT_TOP_K)
    _add_analyzer_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("serve", help="run the web service")
    p.add_argument("--corpus", required=True)
    p.add_argument("--index", help="prebuilt index file (default: build at startup)")
    p.add_argument("--batch", help="precomputed batch recommendations to serve")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    _add_analyzer_flags(p)
    _add_coefficient_flags(p)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (CoefficientError, UsageError) as exc:
        print(f"albrec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"albrec: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except AlbrecError as exc:
        print(f"albrec: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
