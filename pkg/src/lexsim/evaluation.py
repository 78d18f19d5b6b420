"""Benchmark harness: expert pairs, Pearson correlation, method combination, reports."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from lexsim.thematic import Aggregation


class EvaluationError(ValueError):
    """Bad pairs file, degenerate correlation input, or unscorable method."""


class ScoreUnavailable(Exception):
    """A method cannot score this pair (isolated node, OOV text, no shared roles)."""


@dataclass(frozen=True)
class EvaluationPair:
    a: str
    b: str
    expert_score: float

    def __post_init__(self):
        if self.a == self.b:
            raise EvaluationError(f"pair with identical ids {self.a!r}")
        if not 0.0 <= self.expert_score <= 10.0:
            raise EvaluationError(
                f"expert score {self.expert_score} for ({self.a}, {self.b}) outside [0, 10]")


@dataclass
class MethodResult:
    method: str
    scores: dict[int, float]          # pair index -> similarity
    correlation: float
    coverage: int


PairScorer = Callable[[str, str], float]


def load_pairs(path: str | Path, known_ids: set[str] | None = None,
               strict: bool = False, warn=None) -> list[EvaluationPair]:
    """Load `doc_a,doc_b,score` rows; duplicates rejected, scores range-checked.

    With known_ids given, unknown documents error in strict mode and invoke
    ``warn`` (default: ignore) otherwise.
    """
    path = Path(path)
    if not path.is_file():
        raise EvaluationError(f"pairs file not found: {path}")
    pairs: list[EvaluationPair] = []
    seen: set[frozenset] = set()
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != ["doc_a", "doc_b", "score"]:
            raise EvaluationError(f"{path}: expected header 'doc_a,doc_b,score', got {header!r}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 3:
                raise EvaluationError(f"{path}:{lineno}: expected 3 fields, got {len(row)}")
            a, b = row[0].strip(), row[1].strip()
            try:
                score = float(row[2])
            except ValueError as exc:
                raise EvaluationError(f"{path}:{lineno}: bad score {row[2]!r}") from exc
            try:
                pair = EvaluationPair(a, b, score)
            except EvaluationError as exc:
                raise EvaluationError(f"{path}:{lineno}: {exc}") from exc
            key = frozenset((a, b))
            if key in seen:
                raise EvaluationError(f"{path}:{lineno}: duplicate pair ({a}, {b})")
            seen.add(key)
            if known_ids is not None:
                unknown = [d for d in (a, b) if d not in known_ids]
                if unknown:
                    if strict:
                        raise EvaluationError(f"{path}:{lineno}: unknown document {unknown[0]!r}")
                    if warn is not None:
                        warn(f"{path}:{lineno}: unknown document(s) {unknown}")
            pairs.append(pair)
    return pairs


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson correlation coefficient; errors on degenerate input."""
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.ndim != 1 or ya.ndim != 1 or xa.shape != ya.shape:
        raise EvaluationError("pearson inputs must be 1-d and equal length")
    if xa.size < 2:
        raise EvaluationError("pearson needs at least 2 points")
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx == 0.0 or syy == 0.0:
        raise EvaluationError("pearson input has zero variance")
    r = float(dx @ dy) / float(np.sqrt(sxx * syy))
    return max(-1.0, min(1.0, r))


def combine(s1: float, s2: float, agg: Aggregation) -> float:
    if agg is Aggregation.MAX:
        return max(s1, s2)
    return 0.5 * (s1 + s2)


def _rescaled(scores: dict[int, float]) -> dict[int, float]:
    lo, hi = min(scores.values()), max(scores.values())
    if hi == lo:
        return {i: 0.0 for i in scores}
    return {i: (v - lo) / (hi - lo) for i, v in scores.items()}


def _result(method: str, scores: dict[int, float],
            pairs: Sequence[EvaluationPair]) -> MethodResult:
    if not scores:
        raise EvaluationError(f"no scorable pairs for method {method!r}")
    idx = sorted(scores)
    r = pearson([pairs[i].expert_score for i in idx], [scores[i] for i in idx])
    return MethodResult(method, scores, r, len(scores))


def run_benchmark(pairs: Sequence[EvaluationPair], scorers: Mapping[str, PairScorer],
                  combinations: Sequence[tuple[str, str, Aggregation]] = (),
                  rescale: bool = False) -> list[MethodResult]:
    """Score every pair under every method and combination.

    Pairs a scorer cannot handle (it raises ScoreUnavailable) are excluded
    from that method's correlation; coverage records how many were scored.
    Combinations operate on raw constituent outputs; with rescale, min-max
    normalized variants are reported additionally under a `_rescaled` suffix.
    """
    base_scores: dict[str, dict[int, float]] = {}
    results: list[MethodResult] = []
    for method, scorer in scorers.items():
        scores: dict[int, float] = {}
        for i, pair in enumerate(pairs):
            try:
                scores[i] = float(scorer(pair.a, pair.b))
            except ScoreUnavailable:
                continue
        base_scores[method] = scores
        results.append(_result(method, scores, pairs))

    variants = [("", base_scores)]
    if rescale:
        variants.append(("_rescaled", {m: _rescaled(s) for m, s in base_scores.items() if s}))
        for suffix, table in variants[1:]:
            for method in scorers:
                results.append(_result(method + suffix, table[method], pairs))

    for net, text, agg in combinations:
        for suffix, table in variants:
            for name in (net, text):
                if name not in table:
                    raise EvaluationError(f"combination references unknown method {name!r}")
            shared = set(table[net]) & set(table[text])
            combined = {i: combine(table[net][i], table[text][i], agg) for i in shared}
            results.append(_result(f"{net}+{text}:{agg.value}{suffix}", combined, pairs))
    return results


def write_pair_report(path: str | Path, pairs: Sequence[EvaluationPair],
                      results: Sequence[MethodResult]) -> None:
    """Per-pair CSV: doc_a,doc_b,expert,<method...>; full-precision values."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["doc_a", "doc_b", "expert"] + [r.method for r in results])
        for i, pair in enumerate(pairs):
            row = [pair.a, pair.b, repr(pair.expert_score)]
            for r in results:
                row.append(repr(r.scores[i]) if i in r.scores else "")
            writer.writerow(row)


def write_summary(path: str | Path, results: Sequence[MethodResult]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["method", "correlation", "coverage"])
        for r in results:
            writer.writerow([r.method, repr(r.correlation), r.coverage])


def format_summary(results: Sequence[MethodResult]) -> str:
    width = max(len(r.method) for r in results) if results else 6
    out = io.StringIO()
    out.write(f"{'method'.ljust(width)}  correlation  coverage\n")
    for r in results:
        out.write(f"{r.method.ljust(width)}  {r.correlation:11.3f}  {r.coverage:8d}\n")
    return out.getvalue()
