import csv

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lexsim.evaluation import (EvaluationError, EvaluationPair, ScoreUnavailable, combine,
                               format_summary, load_pairs, pearson, run_benchmark,
                               write_pair_report, write_summary)
from lexsim.thematic import Aggregation


def write_pairs(path, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_a", "doc_b", "score"])
        writer.writerows(rows)


class TestLoadPairs:
    def test_basic(self, tmp_path):
        path = tmp_path / "pairs.csv"
        write_pairs(path, [["1992_47", "1992_76", "0"], ["1983_37", "1979_33", "10"]])
        pairs = load_pairs(path)
        assert pairs[0] == EvaluationPair("1992_47", "1992_76", 0.0)
        assert pairs[1].expert_score == 10.0

    def test_identical_ids_rejected(self, tmp_path):
        path = tmp_path / "pairs.csv"
        write_pairs(path, [["X", "X", "5"]])
        with pytest.raises(EvaluationError, match="identical"):
            load_pairs(path)

    def test_out_of_range_rejected(self, tmp_path):
        path = tmp_path / "pairs.csv"
        write_pairs(path, [["A", "B", "11"]])
        with pytest.raises(EvaluationError, match="outside"):
            load_pairs(path)

    def test_duplicate_rejected(self, tmp_path):
        path = tmp_path / "pairs.csv"
        write_pairs(path, [["A", "B", "5"], ["B", "A", "3"]])
        with pytest.raises(EvaluationError, match="duplicate"):
            load_pairs(path)

    def test_unknown_id_strict(self, tmp_path):
        path = tmp_path / "pairs.csv"
        write_pairs(path, [["A", "B", "5"]])
        with pytest.raises(EvaluationError, match="unknown"):
            load_pairs(path, known_ids={"A"}, strict=True)

    def test_unknown_id_warns(self, tmp_path):
        path = tmp_path / "pairs.csv"
        write_pairs(path, [["A", "B", "5"]])
        warnings = []
        pairs = load_pairs(path, known_ids={"A"}, warn=warnings.append)
        assert len(pairs) == 1
        assert len(warnings) == 1

    def test_bad_header(self, tmp_path):
        path = tmp_path / "pairs.csv"
        path.write_text("a,b,c\n")
        with pytest.raises(EvaluationError, match="header"):
            load_pairs(path)


class TestPearson:
    def test_perfect_linear(self):
        assert pearson([1, 2, 3], [2, 4, 6]) == 1.0

    def test_perfect_inverse(self):
        assert pearson([1, 2, 3], [3, 2, 1]) == -1.0

    def test_sample_column_oracle(self):
        # expert scores vs an inferred-similarity column, frozen external value
        x = [0, 3, 7, 10]
        y = [0.195, 0.613, 0.234, 0.574]
        assert pearson(x, y) == pytest.approx(0.39185013103247524, abs=1e-9)
        assert pearson(x, y) == pytest.approx(np.corrcoef(x, y)[0, 1], abs=1e-12)

    def test_length_mismatch(self):
        with pytest.raises(EvaluationError):
            pearson([1, 2], [1, 2, 3])

    def test_too_few_points(self):
        with pytest.raises(EvaluationError):
            pearson([1], [2])

    def test_zero_variance(self):
        with pytest.raises(EvaluationError):
            pearson([1, 1, 1], [1, 2, 3])

    def test_symmetry(self):
        rng = np.random.default_rng(0)
        x, y = rng.random(20), rng.random(20)
        assert pearson(x, y) == pearson(y, x)

    @given(st.integers(0, 2**32 - 1),
           st.floats(min_value=0.1, max_value=50),
           st.floats(min_value=-100, max_value=100))
    @settings(max_examples=100, deadline=None)
    def test_affine_invariance(self, seed, a, b):
        rng = np.random.default_rng(seed)
        x, y = rng.random(15), rng.random(15)
        assert pearson(a * x + b, y) == pytest.approx(pearson(x, y), abs=1e-12)


class TestCombine:
    def test_max(self):
        assert combine(0.3, 0.7, Aggregation.MAX) == 0.7

    def test_average(self):
        assert combine(0.3, 0.7, Aggregation.AVERAGE) == 0.5

    def test_idempotent(self):
        for agg in Aggregation:
            assert combine(0.4, 0.4, agg) == 0.4

    @given(st.floats(-1, 1), st.floats(-1, 1))
    def test_ordering(self, s1, s2):
        assert combine(s1, s2, Aggregation.MAX) >= combine(s1, s2, Aggregation.AVERAGE) >= min(s1, s2)


def affine_pairs(n=6):
    return [EvaluationPair(f"a{i}", f"b{i}", i * 10 / (n - 1)) for i in range(n)]


class TestRunBenchmark:
    def test_affine_scorer_correlates_perfectly(self):
        pairs = affine_pairs()
        scorers = {"m": lambda a, b: int(a[1:]) / 10}
        results = run_benchmark(pairs, scorers)
        assert results[0].correlation == pytest.approx(1.0, abs=1e-9)
        assert results[0].coverage == len(pairs)

    def test_method_failing_everywhere(self):
        def broken(a, b):
            raise ScoreUnavailable("nope")
        with pytest.raises(EvaluationError, match="no scorable pairs"):
            run_benchmark(affine_pairs(), {"broken": broken})

    def test_partial_coverage(self):
        def sometimes(a, b):
            if a == "a0":
                raise ScoreUnavailable("skip")
            return int(a[1:]) * 1.0
        results = run_benchmark(affine_pairs(), {"m": sometimes})
        assert results[0].coverage == len(affine_pairs()) - 1

    def test_combination_rows_match_constituents(self):
        pairs = affine_pairs()
        s1 = {p.a: 0.1 * i for i, p in enumerate(pairs)}
        s2 = {p.a: 1.0 - 0.07 * i for i, p in enumerate(pairs)}
        scorers = {"net": lambda a, b: s1[a], "text": lambda a, b: s2[a]}
        results = run_benchmark(pairs, scorers,
                                combinations=[("net", "text", Aggregation.MAX),
                                              ("net", "text", Aggregation.AVERAGE)])
        by_name = {r.method: r for r in results}
        for i, p in enumerate(pairs):
            assert by_name["net+text:max"].scores[i] == max(s1[p.a], s2[p.a])
            assert by_name["net+text:average"].scores[i] == 0.5 * (s1[p.a] + s2[p.a])

    def test_rescale_adds_variants(self):
        pairs = affine_pairs()
        scorers = {"m": lambda a, b: 5.0 + int(a[1:])}
        results = run_benchmark(pairs, scorers, rescale=True)
        names = [r.method for r in results]
        assert "m" in names and "m_rescaled" in names
        rescaled = next(r for r in results if r.method == "m_rescaled")
        assert min(rescaled.scores.values()) == 0.0
        assert max(rescaled.scores.values()) == 1.0

    def test_deterministic(self):
        pairs = affine_pairs()
        scorers = {"m": lambda a, b: (hash(a) % 97) / 97}
        r1 = run_benchmark(pairs, scorers)
        r2 = run_benchmark(pairs, scorers)
        assert r1[0].scores == r2[0].scores
        assert r1[0].correlation == r2[0].correlation


class TestReports:
    def test_round_trip_reproduces_correlations(self, tmp_path):
        rng = np.random.default_rng(3)
        pairs = [EvaluationPair(f"a{i}", f"b{i}", float(s))
                 for i, s in enumerate(rng.uniform(0, 10, 12))]
        table = {p.a: float(v) for p, v in zip(pairs, rng.random(12))}
        results = run_benchmark(pairs, {"m": lambda a, b: table[a]})
        report = tmp_path / "pairs.csv"
        write_pair_report(report, pairs, results)

        with open(report, newline="") as fh:
            rows = list(csv.DictReader(fh))
        x = [float(r["expert"]) for r in rows]
        y = [float(r["m"]) for r in rows]
        assert pearson(x, y) == results[0].correlation  # exact, full-precision CSV

    def test_summary_contents(self, tmp_path):
        results = run_benchmark(affine_pairs(), {"m": lambda a, b: int(a[1:]) * 1.0})
        path = tmp_path / "summary.csv"
        write_summary(path, results)
        with open(path, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert rows[0]["method"] == "m"
        assert float(rows[0]["correlation"]) == results[0].correlation
        assert int(rows[0]["coverage"]) == results[0].coverage

    def test_format_summary(self):
        results = run_benchmark(affine_pairs(), {"m": lambda a, b: int(a[1:]) * 1.0})
        text = format_summary(results)
        assert "method" in text and "m" in text
