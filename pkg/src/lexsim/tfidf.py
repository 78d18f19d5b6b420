"""TF-IDF vectors, sparse cosine, and the paragraph-link document measure."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from lexsim.corpus import Document, SimilarityScore, tokenize

SparseVector = dict[int, float]

DEFAULT_PARA_THRESHOLD = 0.3


class VectorizerError(ValueError):
    """Unfittable or unscorable text input."""


@dataclass(frozen=True)
class TfIdfModel:
    vocabulary: dict[str, int]
    doc_freq: dict[str, int]
    n_docs: int


def fit_tfidf(units: list[list[str]], min_count: int = 1) -> TfIdfModel:
    """Fit vocabulary and document frequencies over tokenized units."""
    if not units:
        raise VectorizerError("cannot fit TF-IDF on an empty unit list")
    df: Counter[str] = Counter()
    for unit in units:
        df.update(set(unit))
    kept = sorted(t for t, c in df.items() if c >= min_count)
    vocabulary = {t: i for i, t in enumerate(kept)}
    return TfIdfModel(vocabulary, {t: df[t] for t in kept}, len(units))


def idf(model: TfIdfModel, token: str) -> float:
    # smoothed so no idf is zero and unseen-df edge cases are defined
    return math.log((1 + model.n_docs) / (1 + model.doc_freq[token])) + 1.0


def transform_tfidf(model: TfIdfModel, unit: list[str]) -> SparseVector:
    """Raw-count tf times smoothed idf, then L2-normalized (zero stays zero)."""
    tf = Counter(t for t in unit if t in model.vocabulary)
    vec = {model.vocabulary[t]: c * idf(model, t) for t, c in tf.items()}
    norm = math.sqrt(sum(w * w for w in vec.values()))
    if norm > 0:
        vec = {i: w / norm for i, w in vec.items()}
    return vec


def cosine(a: SparseVector, b: SparseVector) -> float:
    """Cosine of two sparse vectors; 0 if either is empty."""
    if not a or not b:
        return 0.0
    if len(b) < len(a):
        a, b = b, a
    dot = sum(w * b[i] for i, w in a.items() if i in b)
    na = math.sqrt(sum(w * w for w in a.values()))
    nb = math.sqrt(sum(w * w for w in b.values()))
    return dot / (na * nb)


def paragraph_links_similarity(d1: Document, d2: Document, model: TfIdfModel,
                               threshold: float = DEFAULT_PARA_THRESHOLD) -> SimilarityScore:
    """Fraction of paragraphs with at least one cross-document link.

    Paragraphs i of d1 and j of d2 are linked when their TF-IDF cosine
    strictly exceeds the threshold.
    """
    if not d1.paragraphs or not d2.paragraphs:
        empty = d1.id if not d1.paragraphs else d2.id
        raise VectorizerError(f"document {empty!r} has no paragraphs")
    v1 = [transform_tfidf(model, tokenize(p)) for p in d1.paragraphs]
    v2 = [transform_tfidf(model, tokenize(p)) for p in d2.paragraphs]
    linked1 = [False] * len(v1)
    linked2 = [False] * len(v2)
    for i, a in enumerate(v1):
        for j, b in enumerate(v2):
            if cosine(a, b) > threshold:
                linked1[i] = True
                linked2[j] = True
    value = (sum(linked1) + sum(linked2)) / (len(v1) + len(v2))
    return SimilarityScore("paragraph", (d1.id, d2.id), value)
