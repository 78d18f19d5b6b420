"""Node vectors for the citation graph: walks -> skip-gram -> cosine."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from lexsim.corpus import SimilarityScore
from lexsim.sgns import EmbeddingError, TrainConfig, dense_cosine, train_pair_embeddings

MODEL_HEADER = "#lexsim-node2vec 1"


@dataclass
class NodeEmbeddingModel:
    vectors: dict[str, np.ndarray]
    cfg: TrainConfig
    epoch_losses: list[float] = field(default_factory=list)

    @property
    def dimensions(self) -> int:
        return self.cfg.dimensions


def skipgram_pairs(walks: list[list[str]], window: int, index: dict[str, int]) -> list[tuple[int, int]]:
    pairs = []
    for walk in walks:
        ids = [index[t] for t in walk if t in index]
        for i, center in enumerate(ids):
            lo = max(0, i - window)
            hi = min(len(ids), i + window + 1)
            for j in range(lo, hi):
                if j != i:
                    pairs.append((center, ids[j]))
    return pairs


def train_node_embeddings(walks: list[list[str]], cfg: TrainConfig,
                          workers: int = 1) -> NodeEmbeddingModel:
    """Skip-gram with negative sampling over walk windows; returns input vectors."""
    counts = Counter(token for walk in walks for token in walk)
    vocab = sorted(t for t, c in counts.items() if c >= max(cfg.min_count, 1))
    index = {t: i for i, t in enumerate(vocab)}
    pairs = skipgram_pairs(walks, cfg.window, index)
    if not pairs:
        raise EmbeddingError("no trainable pairs: need at least one walk of length >= 2")
    noise_counts = np.array([counts[t] for t in vocab], dtype=np.float64)
    w_in, _, losses = train_pair_embeddings(
        pairs, len(vocab), len(vocab), noise_counts, cfg, workers=workers)
    vectors = {t: w_in[i].copy() for t, i in index.items()}
    return NodeEmbeddingModel(vectors, cfg, losses)


def node_cosine(model: NodeEmbeddingModel, a: str, b: str) -> SimilarityScore:
    for node in (a, b):
        if node not in model.vectors:
            raise EmbeddingError(f"no embedding for node {node!r} (isolated or unseen)")
    return SimilarityScore("node2vec", (a, b), dense_cosine(model.vectors[a], model.vectors[b]))


def save_node_embeddings(model: NodeEmbeddingModel, path: str | Path) -> None:
    """Text format: header comments, then `<id> <dim> <v1> ... <vdim>` per node."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(MODEL_HEADER + "\n")
        for f in fields(model.cfg):
            fh.write(f"#{f.name}={getattr(model.cfg, f.name)!r}\n")
        for node in sorted(model.vectors):
            vec = model.vectors[node]
            values = " ".join(repr(float(x)) for x in vec)
            fh.write(f"{node} {len(vec)} {values}\n")


def load_node_embeddings(path: str | Path) -> NodeEmbeddingModel:
    cfg_kwargs: dict = {}
    vectors: dict[str, np.ndarray] = {}
    dim = None
    with open(path, encoding="utf-8") as fh:
        first = fh.readline().rstrip("\n")
        if first != MODEL_HEADER:
            raise EmbeddingError(f"{path}: not a node embedding model file")
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                cfg_kwargs[key] = value
                continue
            parts = line.split(" ")
            node, n = parts[0], int(parts[1])
            vec = np.array([float(x) for x in parts[2:]], dtype=np.float64)
            if len(vec) != n:
                raise EmbeddingError(f"{path}: vector for {node!r} declares {n} values, has {len(vec)}")
            if dim is None:
                dim = n
            elif n != dim:
                raise EmbeddingError(f"{path}: inconsistent dimensions ({dim} vs {n})")
            vectors[node] = vec
    cfg = _cfg_from_header(cfg_kwargs)
    return NodeEmbeddingModel(vectors, cfg)


def _cfg_from_header(raw: dict[str, str]) -> TrainConfig:
    kwargs = {}
    for f in fields(TrainConfig):
        if f.name in raw:
            kwargs[f.name] = _convert(f.default, raw[f.name])
    return TrainConfig(**kwargs)


def _convert(default, value: str):
    if isinstance(default, bool):
        return value == "True"
    if isinstance(default, int):
        return int(value)
    if isinstance(default, float):
        return float(value)
    return value
