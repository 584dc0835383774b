import json
from pathlib import Path

import pytest

from albrec.errors import JudgmentConflictError, ParseError, UnknownDocError
from albrec.evaluation import (
    ExperimentConfig,
    Judgment,
    f1,
    judgment_labels,
    load_judgments,
    pool_relevant,
    precision,
    recall,
    run_experiments,
    sample_queries,
    save_judgments,
    save_report,
)
from albrec.recommend import WeightCoefficients
from albrec.textproc import StemMode

DATA_DIR = Path(__file__).parent / "data"

CONFIG1 = WeightCoefficients(0.4, 0.3, 0.2, 0.1)
CONFIG2 = WeightCoefficients(0.0, 0.6, 0.4, 0.0)
CONFIG3 = WeightCoefficients(0.4, 0.0, 0.0, 0.6)
SWEEP_QUERIES = ["bio00", "bio09", "kim04", "kim08", "mat03", "mat07"]


class TestPrecisionRecall:
    @pytest.mark.parametrize("rel,ret,expected", [(10, 10, 1.0), (0, 10, 0.0), (3, 10, 0.3)])
    def test_precision(self, rel, ret, expected):
        assert precision(rel, ret) == pytest.approx(expected)

    def test_precision_zero_retrieved(self):
        assert precision(0, 0) == 0.0

    def test_precision_precondition(self):
        with pytest.raises(ValueError):
            precision(5, 3)

    @pytest.mark.parametrize("rel,total,expected", [(5, 5, 1.0), (0, 7, 0.0), (2, 8, 0.25)])
    def test_recall(self, rel, total, expected):
        assert recall(rel, total) == pytest.approx(expected)

    def test_recall_zero_pool(self):
        assert recall(0, 0) == 0.0

    def test_recall_precondition(self):
        with pytest.raises(ValueError):
            recall(9, 8)


class TestF1:
    def test_perfect(self):
        assert f1(1.0, 1.0) == 1.0

    def test_zero(self):
        assert f1(0.0, 0.0) == 0.0

    def test_reported_cells_consistent(self):
        # All six published (P, R, F1) triples of the reference experiment
        # grid must satisfy F1 = 2PR/(P+R) after rounding to 2 decimals.
        cells = [
            (0.31, 0.18, 0.23),
            (0.34, 0.20, 0.25),
            (0.32, 0.18, 0.23),
            (0.26, 0.15, 0.19),
            (0.29, 0.17, 0.21),
            (0.21, 0.12, 0.15),
        ]
        for p, r, printed in cells:
            assert abs(round(f1(p, r), 2) - printed) <= 0.005


def _j(q, c, related, run="r1"):
    return Judgment(q, c, related, run)


class TestPooling:
    def test_no_related(self):
        assert pool_relevant([_j("q", "x", False), _j("q", "y", False)]) == {}

    def test_same_docs_in_two_runs_not_double_counted(self):
        judgments = [
            _j("q", "x", True, "A"), _j("q", "y", True, "A"), _j("q", "z", True, "A"),
            _j("q", "x", True, "B"), _j("q", "y", True, "B"), _j("q", "z", True, "B"),
        ]
        assert pool_relevant(judgments) == {"q": 3}

    def test_union_across_runs(self):
        judgments = [
            _j("q", "x", True, "A"), _j("q", "y", True, "A"),
            _j("q", "y", True, "B"), _j("q", "z", True, "B"),
        ]
        assert pool_relevant(judgments) == {"q": 3}

    def test_conflicting_labels_rejected(self):
        judgments = [_j("q", "x", True, "A"), _j("q", "x", False, "B")]
        with pytest.raises(JudgmentConflictError, match="conflicting"):
            pool_relevant(judgments)

    def test_duplicate_triple_rejected(self):
        judgments = [_j("q", "x", True, "A"), _j("q", "x", True, "A")]
        with pytest.raises(JudgmentConflictError, match="duplicate"):
            judgment_labels(judgments)


class TestJudgmentsFile:
    def test_round_trip(self, tmp_path):
        judgments = [_j("q1", "x", True, "A"), _j("q2", "y", False, "B")]
        path = tmp_path / "judgments.csv"
        save_judgments(judgments, path)
        assert load_judgments(path) == judgments

    def test_bad_label(self, tmp_path):
        path = tmp_path / "judgments.csv"
        path.write_text(
            "query_id,candidate_id,label,run_id\nq,x,maybe,A\n", encoding="utf-8"
        )
        with pytest.raises(ParseError, match="label"):
            load_judgments(path)

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "judgments.csv"
        path.write_text("query,doc\nq,x\n", encoding="utf-8")
        with pytest.raises(ParseError, match="columns"):
            load_judgments(path)


class TestSampleQueries:
    def test_deterministic_and_sorted(self, sweep_corpus):
        s1 = sample_queries(sweep_corpus, 10, seed=42)
        s2 = sample_queries(sweep_corpus, 10, seed=42)
        assert s1 == s2 == sorted(s1)
        assert len(s1) == 10

    def test_seed_changes_sample(self, sweep_corpus):
        assert sample_queries(sweep_corpus, 10, 1) != sample_queries(sweep_corpus, 10, 2)

    def test_small_corpus_capped(self, tiny_corpus):
        assert sample_queries(tiny_corpus, 10, 0) == ["a1", "a2", "a3"]


def _experiments(k=4, queries=SWEEP_QUERIES):
    labeled = [
        ("kw=0.4 title=0.3 abstract=0.2 body=0.1", CONFIG1),
        ("kw=0 title=0.6 abstract=0.4 body=0", CONFIG2),
        ("kw=0.4 title=0 abstract=0 body=0.6", CONFIG3),
    ]
    return [
        ExperimentConfig(coeffs=coeffs, stem_mode=mode, k=k, query_set=list(queries), label=label)
        for mode in (StemMode.SINGLE_RUN, StemMode.FIXPOINT)
        for label, coeffs in labeled
    ]


class TestRunExperiments:
    def test_grid_matches_independent_golden(self, sweep_corpus, sweep_analyzer):
        golden = json.loads((DATA_DIR / "sweep_golden.json").read_text())
        judgments = load_judgments(DATA_DIR / "judgments_sweep.csv")
        report = run_experiments(sweep_corpus, sweep_analyzer, _experiments(), judgments)

        assert report.pooled_per_query == golden["pooled_per_query"]
        assert len(report.cells) == len(golden["cells"]) == 6
        for cell, expected in zip(report.cells, golden["cells"]):
            assert cell.stem_mode.value == expected["stem_mode"]
            assert cell.label == expected["label"]
            for key in (
                "retrieved", "judged", "unjudged", "relevant_retrieved", "pooled_total",
                "precision", "recall", "f1", "precision_macro", "recall_macro",
                "f1_macro", "incomplete",
            ):
                assert getattr(cell, key) == expected[key], (cell.label, key)

    def test_all_related_gives_perfect_precision(self, tiny_corpus, tiny_analyzer):
        exp = ExperimentConfig(
            coeffs=CONFIG1, stem_mode=StemMode.SINGLE_RUN, k=4, query_set=["a1", "a2"]
        )
        judgments = [
            _j("a1", "a2", True), _j("a1", "a3", True), _j("a2", "a1", True),
        ]
        report = run_experiments(tiny_corpus, tiny_analyzer, [exp], judgments)
        assert report.cells[0].precision == 1.0

    def test_single_run_pool_gives_recall_one(self, tiny_corpus, tiny_analyzer):
        exp = ExperimentConfig(
            coeffs=CONFIG1, stem_mode=StemMode.SINGLE_RUN, k=4, query_set=["a1"]
        )
        judgments = [_j("a1", "a3", True, "solo"), _j("a1", "a2", False, "solo")]
        report = run_experiments(tiny_corpus, tiny_analyzer, [exp], judgments)
        assert report.cells[0].recall == 1.0

    def test_unjudged_pairs_flag_cell_incomplete(self, tiny_corpus, tiny_analyzer):
        exp = ExperimentConfig(
            coeffs=CONFIG1, stem_mode=StemMode.SINGLE_RUN, k=4, query_set=["a1"]
        )
        judgments = [_j("a1", "a3", True)]  # a2 retrieved but never judged
        report = run_experiments(tiny_corpus, tiny_analyzer, [exp], judgments)
        cell = report.cells[0]
        assert cell.incomplete
        assert cell.unjudged == 1
        assert cell.judged == 1
        assert cell.precision == 1.0  # computed over judged pairs only

    def test_unknown_query_rejected(self, tiny_corpus, tiny_analyzer):
        exp = ExperimentConfig(
            coeffs=CONFIG1, stem_mode=StemMode.SINGLE_RUN, k=4, query_set=["askund"]
        )
        with pytest.raises(UnknownDocError):
            run_experiments(tiny_corpus, tiny_analyzer, [exp], [])

    def test_deterministic(self, sweep_corpus, sweep_analyzer):
        judgments = load_judgments(DATA_DIR / "judgments_sweep.csv")
        r1 = run_experiments(sweep_corpus, sweep_analyzer, _experiments(), judgments)
        r2 = run_experiments(sweep_corpus, sweep_analyzer, _experiments(), judgments)
        assert r1.to_dict() == r2.to_dict()


class TestReportRendering:
    def _report(self, sweep_corpus, sweep_analyzer):
        judgments = load_judgments(DATA_DIR / "judgments_sweep.csv")
        return run_experiments(sweep_corpus, sweep_analyzer, _experiments(), judgments, seed=7)

    def test_grid_shape(self, sweep_corpus, sweep_analyzer):
        grid = self._report(sweep_corpus, sweep_analyzer).render_grid()
        lines = grid.splitlines()
        assert len(lines) == 4  # header, rule, two stem-mode rows
        assert "single run" in lines[2]
        assert "fixpoint" in lines[3]
        assert lines[2].count("P=") == 3

    def test_rendered_f1_consistent_with_rendered_p_r(self, sweep_corpus, sweep_analyzer):
        report = self._report(sweep_corpus, sweep_analyzer)
        for cell in report.cells:
            assert abs(round(f1(cell.precision, cell.recall), 2) - round(cell.f1, 2)) <= 0.005

    def test_report_file(self, tmp_path, sweep_corpus, sweep_analyzer):
        report = self._report(sweep_corpus, sweep_analyzer)
        path = tmp_path / "report.json"
        save_report(report, path)
        payload = json.loads(path.read_text())
        assert payload["format"] == "albrec-eval-report"
        assert payload["seed"] == 7
        assert len(payload["cells"]) == 6
