"""Whole-document embeddings (distributed bag-of-words paragraph vectors).

A per-document input vector is trained to predict the document's tokens
under negative sampling. Held-out documents get vectors by inference:
fresh doc vector, frozen word output vectors.
"""

from __future__ import annotations

import zlib
from collections import Counter
from dataclasses import dataclass, field, fields

from pathlib import Path

import numpy as np

from lexsim.corpus import Corpus, Document, SimilarityScore, tokenize
from lexsim.sgns import (EmbeddingError, TrainConfig, dense_cosine, noise_table, sigmoid,
                         train_pair_embeddings)

MODEL_HEADER = "#lexsim-docvec 1"
DEFAULT_INFER_EPOCHS = 50


@dataclass
class DocEmbeddingModel:
    doc_vectors: dict[str, np.ndarray]
    vocab: list[str]
    word_counts: np.ndarray          # training occurrence counts, aligned with vocab
    word_output: np.ndarray          # (len(vocab), dimensions)
    cfg: TrainConfig
    epoch_losses: list[float] = field(default_factory=list)

    def __post_init__(self):
        self.word_index = {t: i for i, t in enumerate(self.vocab)}

    @property
    def dimensions(self) -> int:
        return self.cfg.dimensions

    def word_output_vector(self, token: str) -> np.ndarray:
        if token not in self.word_index:
            raise EmbeddingError(f"token {token!r} not in model vocabulary")
        return self.word_output[self.word_index[token]]


def train_doc_embeddings(corpus: Corpus, holdout: set[str], cfg: TrainConfig,
                         stopwords: set[str] | None = None,
                         workers: int = 1) -> DocEmbeddingModel:
    """Train doc vectors on corpus minus holdout; holdout documents get none."""
    train_ids = sorted(set(corpus.documents) - set(holdout))
    if not train_ids:
        raise EmbeddingError("empty training set: holdout excludes every document")
    tokens_by_doc = {d: tokenize(corpus.documents[d].text, stopwords) for d in train_ids}
    counts = Counter(t for toks in tokens_by_doc.values() for t in toks)
    vocab = sorted(t for t, c in counts.items() if c >= max(cfg.min_count, 1))
    if not vocab:
        raise EmbeddingError("empty vocabulary after min_count filtering")
    word_index = {t: i for i, t in enumerate(vocab)}

    pairs = []
    for doc_pos, doc_id in enumerate(train_ids):
        doc_pairs = [(doc_pos, word_index[t]) for t in tokens_by_doc[doc_id] if t in word_index]
        if not doc_pairs:
            raise EmbeddingError(f"document {doc_id!r} has no in-vocabulary tokens")
        pairs.extend(doc_pairs)

    word_counts = np.array([counts[t] for t in vocab], dtype=np.float64)
    w_in, w_out, losses = train_pair_embeddings(
        pairs, len(train_ids), len(vocab), word_counts, cfg, workers=workers)
    doc_vectors = {doc_id: w_in[i].copy() for i, doc_id in enumerate(train_ids)}
    return DocEmbeddingModel(doc_vectors, vocab, word_counts, w_out, cfg, losses)


def infer_doc_vector(model: DocEmbeddingModel, doc: Document,
                     infer_epochs: int = DEFAULT_INFER_EPOCHS, seed: int = 42,
                     stopwords: set[str] | None = None) -> np.ndarray:
    """Fit a fresh doc vector against the frozen word output matrix."""
    if infer_epochs <= 0:
        raise ValueError("infer_epochs must be positive")
    word_ids = np.array([model.word_index[t]
                         for t in tokenize(doc.text, stopwords) if t in model.word_index],
                        dtype=np.int64)
    if word_ids.size == 0:
        raise EmbeddingError(f"document {doc.id!r} has no in-vocabulary tokens")

    cfg = model.cfg
    rng = np.random.default_rng(seed)
    vec = (rng.random(cfg.dimensions) - 0.5) / cfg.dimensions
    noise = noise_table(model.word_counts)
    w_out = model.word_output
    k = cfg.negative_samples
    for epoch in range(infer_epochs):
        lr = max(cfg.min_learning_rate, cfg.learning_rate * (1.0 - epoch / infer_epochs))
        order = rng.permutation(word_ids.size)
        negs = noise.sample_array(rng, (word_ids.size, k))
        for pos, oi in enumerate(word_ids[order]):
            v = w_out[oi]
            vn = w_out[negs[pos]]
            g_pos = sigmoid(float(v @ vec)) - 1.0
            g_neg = sigmoid(vn @ vec)
            vec = vec - lr * (g_pos * v + g_neg @ vn)
    return vec


def _doc_seed(seed: int, doc_id: str) -> list[int]:
    return [seed, zlib.crc32(doc_id.encode("utf-8"))]


def fulltext_similarity(model: DocEmbeddingModel, d1: Document, d2: Document,
                        infer_epochs: int = DEFAULT_INFER_EPOCHS, seed: int = 42,
                        stopwords: set[str] | None = None) -> SimilarityScore:
    """Cosine of doc vectors: stored for trained documents, inferred otherwise."""
    def vector(doc: Document) -> np.ndarray:
        if doc.id in model.doc_vectors:
            return model.doc_vectors[doc.id]
        return infer_doc_vector(model, doc, infer_epochs, _doc_seed(seed, doc.id), stopwords)

    return SimilarityScore("fulltext", (d1.id, d2.id), dense_cosine(vector(d1), vector(d2)))


def save_doc_embeddings(model: DocEmbeddingModel, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(MODEL_HEADER + "\n")
        for f in fields(model.cfg):
            fh.write(f"#{f.name}={getattr(model.cfg, f.name)!r}\n")
        fh.write(f"#docs {len(model.doc_vectors)}\n")
        for doc_id in sorted(model.doc_vectors):
            vec = model.doc_vectors[doc_id]
            fh.write(f"{doc_id} {len(vec)} " + " ".join(repr(float(x)) for x in vec) + "\n")
        fh.write(f"#words {len(model.vocab)}\n")
        for i, token in enumerate(model.vocab):
            vec = model.word_output[i]
            fh.write(f"{token} {int(model.word_counts[i])} {len(vec)} "
                     + " ".join(repr(float(x)) for x in vec) + "\n")


def load_doc_embeddings(path: str | Path) -> DocEmbeddingModel:
    from lexsim.node_embedding import _cfg_from_header

    cfg_kwargs: dict[str, str] = {}
    doc_vectors: dict[str, np.ndarray] = {}
    vocab: list[str] = []
    counts: list[float] = []
    word_rows: list[np.ndarray] = []
    section = None
    dim = None

    def check_dim(n: int, what: str):
        nonlocal dim
        if dim is None:
            dim = n
        elif n != dim:
            raise EmbeddingError(f"{path}: inconsistent dimensions in {what} ({dim} vs {n})")

    with open(path, encoding="utf-8") as fh:
        first = fh.readline().rstrip("\n")
        if first != MODEL_HEADER:
            raise EmbeddingError(f"{path}: not a document embedding model file")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#docs"):
                section = "docs"
                continue
            if line.startswith("#words"):
                section = "words"
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                cfg_kwargs[key] = value
                continue
            parts = line.split(" ")
            if section == "docs":
                doc_id, n = parts[0], int(parts[1])
                vec = np.array([float(x) for x in parts[2:]], dtype=np.float64)
                if len(vec) != n:
                    raise EmbeddingError(f"{path}: bad vector for document {doc_id!r}")
                check_dim(n, "doc vectors")
                doc_vectors[doc_id] = vec
            elif section == "words":
                token, count, n = parts[0], float(parts[1]), int(parts[2])
                vec = np.array([float(x) for x in parts[3:]], dtype=np.float64)
                if len(vec) != n:
                    raise EmbeddingError(f"{path}: bad vector for token {token!r}")
                check_dim(n, "word vectors")
                vocab.append(token)
                counts.append(count)
                word_rows.append(vec)
            else:
                raise EmbeddingError(f"{path}: data line before a section marker")
    if not vocab:
        raise EmbeddingError(f"{path}: model has no vocabulary section")
    cfg = _cfg_from_header(cfg_kwargs)
    return DocEmbeddingModel(doc_vectors, vocab, np.array(counts), np.vstack(word_rows), cfg)
