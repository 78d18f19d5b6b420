"""Rhetorical-role segmentation and thematic (per-role) similarity.

The segmenter is pluggable: annotated mode reads gold labels from a
sidecar TSV (one `<role>\\t<paragraph-index>` line per paragraph), so
outputs of an external neural segmenter can be dropped in; heuristic mode
assigns each paragraph the role with the highest cue-lexicon score.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from statistics import mean
from typing import Any

from lexsim.corpus import Document, SimilarityScore, tokenize
from lexsim.tfidf import TfIdfModel, cosine, transform_tfidf

_DATA_DIR = Path(__file__).parent / "data"
DEFAULT_LEXICON_PATH = _DATA_DIR / "role_cues.json"


class RhetoricalRole(Enum):
    FACTS = "Facts"
    ARGUMENTS = "Arguments"
    RATIO = "Ratio"
    STATUTE = "Statute"
    PRECEDENT = "Precedent"
    RULING_LOWER_COURT = "RulingLowerCourt"
    RULING_PRESENT_COURT = "RulingPresentCourt"


class Aggregation(Enum):
    MAX = "max"
    AVERAGE = "average"


class SegmentationError(ValueError):
    """Bad sidecar file, empty document, or no shared roles."""


@dataclass(frozen=True)
class SegmentedDocument:
    id: str
    segments: dict[RhetoricalRole, str]

    def __post_init__(self):
        if not self.segments:
            raise SegmentationError(f"document {self.id!r}: no segments")
        for role, text in self.segments.items():
            if not text.strip():
                raise SegmentationError(f"document {self.id!r}: empty segment for {role.value}")

    @property
    def roles(self) -> set[RhetoricalRole]:
        return set(self.segments)


@dataclass(frozen=True)
class CueLexicon:
    version: int
    default_role: RhetoricalRole
    priority: tuple[RhetoricalRole, ...]
    cues: dict[RhetoricalRole, tuple[str, ...]]
    patterns: dict[RhetoricalRole, tuple[re.Pattern, ...]]

    @classmethod
    def from_file(cls, path: str | Path = DEFAULT_LEXICON_PATH) -> "CueLexicon":
        with open(path, encoding="utf-8") as fh:
            raw: dict[str, Any] = json.load(fh)
        return cls(
            version=int(raw["version"]),
            default_role=RhetoricalRole(raw["default_role"]),
            priority=tuple(RhetoricalRole(r) for r in raw["priority"]),
            cues={RhetoricalRole(r): tuple(c.lower() for c in cs)
                  for r, cs in raw.get("cues", {}).items()},
            patterns={RhetoricalRole(r): tuple(re.compile(p) for p in ps)
                      for r, ps in raw.get("patterns", {}).items()},
        )

    def score(self, paragraph: str) -> dict[RhetoricalRole, int]:
        lowered = paragraph.lower()
        scores: dict[RhetoricalRole, int] = {}
        for role, cues in self.cues.items():
            scores[role] = sum(lowered.count(c) for c in cues)
        for role, pats in self.patterns.items():
            scores[role] = scores.get(role, 0) + sum(len(p.findall(paragraph)) for p in pats)
        return scores

    def classify(self, paragraph: str) -> RhetoricalRole:
        scores = self.score(paragraph)
        best = max(scores.values(), default=0)
        if best == 0:
            return self.default_role
        # ties resolve by the fixed priority order
        for role in self.priority:
            if scores.get(role, 0) == best:
                return role
        return self.default_role


_default_lexicon: CueLexicon | None = None


def default_lexicon() -> CueLexicon:
    global _default_lexicon
    if _default_lexicon is None:
        _default_lexicon = CueLexicon.from_file(DEFAULT_LEXICON_PATH)
    return _default_lexicon


def parse_segment_sidecar(path: str | Path, n_paragraphs: int) -> list[RhetoricalRole]:
    """Parse `<role>\\t<paragraph-index>` lines covering every paragraph once."""
    assignments: dict[int, RhetoricalRole] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise SegmentationError(f"{path}:{lineno}: expected '<role>\\t<index>'")
            role_name, idx_str = parts
            try:
                role = RhetoricalRole(role_name)
            except ValueError as exc:
                raise SegmentationError(f"{path}:{lineno}: unknown role {role_name!r}") from exc
            try:
                idx = int(idx_str)
            except ValueError as exc:
                raise SegmentationError(f"{path}:{lineno}: bad paragraph index {idx_str!r}") from exc
            if not 0 <= idx < n_paragraphs:
                raise SegmentationError(f"{path}:{lineno}: paragraph index {idx} out of range")
            if idx in assignments:
                raise SegmentationError(f"{path}:{lineno}: paragraph {idx} assigned twice")
            assignments[idx] = role
    missing = sorted(set(range(n_paragraphs)) - set(assignments))
    if missing:
        raise SegmentationError(f"{path}: paragraphs without a role: {missing}")
    return [assignments[i] for i in range(n_paragraphs)]


def segment_document(doc: Document, mode: str = "heuristic",
                     sidecar: str | Path | None = None,
                     lexicon: CueLexicon | None = None) -> SegmentedDocument:
    """Group paragraphs by rhetorical role, concatenating same-role paragraphs."""
    if not doc.paragraphs:
        raise SegmentationError(f"document {doc.id!r} is empty")
    if mode == "annotated":
        if sidecar is None or not Path(sidecar).is_file():
            raise SegmentationError(f"document {doc.id!r}: missing segment sidecar {sidecar}")
        roles = parse_segment_sidecar(sidecar, len(doc.paragraphs))
    elif mode == "heuristic":
        lex = lexicon or default_lexicon()
        roles = [lex.classify(p) for p in doc.paragraphs]
    else:
        raise SegmentationError(f"unknown segmentation mode {mode!r}")

    grouped: dict[RhetoricalRole, list[str]] = {}
    for role, paragraph in zip(roles, doc.paragraphs):
        grouped.setdefault(role, []).append(paragraph)
    return SegmentedDocument(doc.id, {r: "\n\n".join(ps) for r, ps in grouped.items()})


def _segment_similarity(text1: str, text2: str, rep: str, context,
                        infer_epochs: int, seed: int) -> float:
    if rep == "tfidf":
        if not isinstance(context, TfIdfModel):
            raise SegmentationError("tfidf representation needs a fitted TfIdfModel context")
        return cosine(transform_tfidf(context, tokenize(text1)),
                      transform_tfidf(context, tokenize(text2)))
    if rep == "docvec":
        from lexsim.doc_embedding import DocEmbeddingModel, infer_doc_vector
        from lexsim.sgns import dense_cosine
        if not isinstance(context, DocEmbeddingModel):
            raise SegmentationError("docvec representation needs a DocEmbeddingModel context")
        v1 = infer_doc_vector(context, Document.from_text("seg-a", text1), infer_epochs, seed)
        v2 = infer_doc_vector(context, Document.from_text("seg-b", text2), infer_epochs, seed)
        return dense_cosine(v1, v2)
    raise SegmentationError(f"unknown segment representation {rep!r}")


def per_role_report(s1: SegmentedDocument, s2: SegmentedDocument, rep: str = "tfidf",
                    context=None, infer_epochs: int = 50,
                    seed: int = 42) -> dict[RhetoricalRole, float]:
    """Similarity per role present in both documents; empty map if disjoint."""
    shared = sorted(s1.roles & s2.roles, key=lambda r: r.value)
    return {role: _segment_similarity(s1.segments[role], s2.segments[role],
                                      rep, context, infer_epochs, seed)
            for role in shared}


def thematic_similarity(s1: SegmentedDocument, s2: SegmentedDocument,
                        agg: Aggregation, rep: str = "tfidf", context=None,
                        infer_epochs: int = 50, seed: int = 42) -> SimilarityScore:
    report = per_role_report(s1, s2, rep, context, infer_epochs, seed)
    if not report:
        raise SegmentationError(
            f"documents {s1.id!r} and {s2.id!r} share no rhetorical roles")
    values = list(report.values())
    value = max(values) if agg is Aggregation.MAX else mean(values)
    return SimilarityScore(f"thematic_{agg.value}", (s1.id, s2.id), value)
