#!/usr/bin/env python3
"""Benchmark: compiled similarity kernels vs the pure-Python fallback.

Times the raw cosine kernel on synthetic CSR data and a full offline batch
run on a synthetic corpus. Numbers are wall-clock medians of --repeats runs.

Usage:
    python3 benchmarks/bench_kernels.py [--docs 400] [--terms-per-doc 60]
                                        [--vocab 5000] [--repeats 5]
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

import numpy as np

from albrec import _pykernels, kernels
from albrec.corpus import Article
from albrec.index import build_index
from albrec.recommend import WeightCoefficients, batch_recommend
from albrec.textproc import AnalyzerConfig, StemMode

try:
    from albrec import _ckernels
except ImportError:
    _ckernels = None


def synth_csr(rng, n_rows, terms_per_row, vocab):
    indptr = np.zeros(n_rows + 1, dtype=np.int64)
    ids_parts, w_parts, norms = [], [], np.zeros(n_rows)
    for i in range(n_rows):
        n_terms = rng.randint(terms_per_row // 2, terms_per_row)
        ids = np.array(sorted(rng.sample(range(vocab), n_terms)), dtype=np.int32)
        ws = np.array([rng.uniform(0.01, 4.0) for _ in range(n_terms)])
        indptr[i + 1] = indptr[i] + n_terms
        ids_parts.append(ids)
        w_parts.append(ws)
        acc = 0.0
        for w in ws:
            acc += w * w
        norms[i] = acc
    return indptr, np.concatenate(ids_parts), np.concatenate(w_parts), norms


def time_kernel(impl, queries, csr, repeats):
    indptr, c_ids, c_w, norms = csr
    out = np.zeros(len(norms))
    timings = []
    for _ in range(repeats):
        start = time.perf_counter()
        for q_ids, q_w, q_ns in queries:
            impl.cosine_scores(q_ids, q_w, q_ns, indptr, c_ids, c_w, norms, out)
        timings.append(time.perf_counter() - start)
    return statistics.median(timings)


def synth_corpus(rng, n_docs):
    vocab = [f"fjala{i:04d}" for i in range(800)]
    categories = ["biologji", "kimi", "matematike"]
    articles = []
    for i in range(n_docs):
        words = lambda n: " ".join(rng.choice(vocab) for _ in range(n))
        articles.append(
            Article(
                id=f"d{i:04d}",
                title=words(6),
                abstract=words(25),
                keywords=[rng.choice(vocab) for _ in range(4)],
                body=words(150),
                category=rng.choice(categories),
            )
        )
    return articles


def time_batch(impl, index, repeats):
    saved = kernels._impl
    kernels._impl = impl
    try:
        timings = []
        for _ in range(repeats):
            start = time.perf_counter()
            batch_recommend(index, WeightCoefficients(0.4, 0.3, 0.2, 0.1), k=10)
            timings.append(time.perf_counter() - start)
        return statistics.median(timings)
    finally:
        kernels._impl = saved


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--docs", type=int, default=400)
    parser.add_argument("--terms-per-doc", type=int, default=60)
    parser.add_argument("--vocab", type=int, default=5000)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = random.Random(2024)
    csr = synth_csr(rng, args.docs, args.terms_per_doc, args.vocab)
    queries = []
    for _ in range(args.docs):
        n_terms = rng.randint(args.terms_per_doc // 2, args.terms_per_doc)
        ids = np.array(sorted(rng.sample(range(args.vocab), n_terms)), dtype=np.int32)
        ws = np.array([rng.uniform(0.01, 4.0) for _ in range(n_terms)])
        acc = 0.0
        for w in ws:
            acc += w * w
        queries.append((ids, ws, acc))

    pairs = args.docs * args.docs
    print(f"kernel benchmark: {args.docs} queries x {args.docs} candidates "
          f"({pairs} similarity computations per pass)")

    py_time = time_kernel(_pykernels, queries, csr, args.repeats)
    print(f"  pure python : {py_time:8.3f} s   ({pairs / py_time:12.0f} pairs/s)")

    if _ckernels is None:
        print("  compiled    : not built (pip install -e . with a C toolchain)")
    else:
        c_time = time_kernel(_ckernels, queries, csr, args.repeats)
        print(f"  compiled    : {c_time:8.3f} s   ({pairs / c_time:12.0f} pairs/s)")
        print(f"  speedup     : {py_time / c_time:8.1f}x")

    print()
    corpus = synth_corpus(rng, args.docs)
    analyzer = AnalyzerConfig(stopwords=frozenset(), rules=(), stem_mode=StemMode.SINGLE_RUN)
    index = build_index(corpus, analyzer)
    print(f"end-to-end batch_recommend on a {args.docs}-doc synthetic corpus")
    py_batch = time_batch(_pykernels, index, args.repeats)
    print(f"  pure python : {py_batch:8.3f} s")
    if _ckernels is not None:
        c_batch = time_batch(_ckernels, index, args.repeats)
        print(f"  compiled    : {c_batch:8.3f} s")
        print(f"  speedup     : {py_batch / c_batch:8.1f}x")


if __name__ == "__main__":
    main()
