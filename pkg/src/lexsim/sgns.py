"""Shared negative-sampling embedding trainer.

Both the node-embedding skip-gram and the document-embedding (distributed
bag-of-words) objectives reduce to the same pair problem: given (input,
output) index pairs, maximize sigma(u_i . v_o) while minimizing
sigma(u_i . v_n) for negatives n drawn from a 0.75-power unigram
distribution. Training is vectorized mini-batch SGD; with workers == 1 it
is bitwise deterministic given the seed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from lexsim.alias import AliasTable

_EPS = 1e-10
NOISE_POWER = 0.75


class EmbeddingError(ValueError):
    """Untrainable input: no pairs, empty vocabulary, missing vectors."""


@dataclass(frozen=True)
class TrainConfig:
    dimensions: int = 128
    window: int = 10
    negative_samples: int = 5
    epochs: int = 5
    learning_rate: float = 0.025
    min_learning_rate: float = 0.0001
    min_count: int = 1
    seed: int = 42

    def __post_init__(self):
        if self.dimensions < 2:
            raise ValueError("dimensions must be >= 2")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.negative_samples <= 0 or self.epochs <= 0:
            raise ValueError("negative_samples and epochs must be positive")
        if self.learning_rate <= 0 or self.min_learning_rate <= 0:
            raise ValueError("learning rates must be positive")
        if self.min_count < 0:
            raise ValueError("min_count must be non-negative")


def sigmoid(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-np.clip(x, -30.0, 30.0)))


def dense_cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu, nv = float(np.linalg.norm(u)), float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise EmbeddingError("cosine undefined for a zero-norm vector")
    return float(np.dot(u, v) / (nu * nv))


def noise_table(counts) -> AliasTable:
    return AliasTable(np.asarray(counts, dtype=np.float64) ** NOISE_POWER)


def _sgd_batch(w_in, w_out, batch, negs, lr) -> float:
    ci, oi = batch[:, 0], batch[:, 1]
    u = w_in[ci]                      # (B, d)
    v = w_out[oi]                     # (B, d)
    vn = w_out[negs]                  # (B, k, d)
    pos = sigmoid(np.einsum("bd,bd->b", u, v))
    neg = sigmoid(np.einsum("bd,bkd->bk", u, vn))

    g_pos = pos - 1.0                 # gradient of -log sigma(u.v) wrt (u.v)
    grad_u = g_pos[:, None] * v + np.einsum("bk,bkd->bd", neg, vn)
    grad_v = g_pos[:, None] * u
    grad_vn = neg[..., None] * u[:, None, :]

    np.add.at(w_in, ci, -lr * grad_u)
    np.add.at(w_out, oi, -lr * grad_v)
    np.add.at(w_out, negs.reshape(-1), -lr * grad_vn.reshape(-1, w_out.shape[1]))

    loss = -np.log(pos + _EPS) - np.log(1.0 - neg + _EPS).sum(axis=1)
    return float(loss.mean())


def train_pair_embeddings(pairs, n_in: int, n_out: int, noise_counts, cfg: TrainConfig,
                          batch_size: int = 256, workers: int = 1):
    """Train input/output embedding matrices over (input, output) pairs.

    Returns (w_in, w_out, per-epoch mean training loss). The learning rate
    decays linearly over all batches down to cfg.min_learning_rate.
    """
    pairs = np.asarray(pairs, dtype=np.int64)
    if pairs.size == 0:
        raise EmbeddingError("no training pairs")
    rng = np.random.default_rng(cfg.seed)
    w_in = (rng.random((n_in, cfg.dimensions)) - 0.5) / cfg.dimensions
    w_out = np.zeros((n_out, cfg.dimensions))
    noise = noise_table(noise_counts)

    n_pairs = len(pairs)
    total_batches = cfg.epochs * math.ceil(n_pairs / batch_size)
    step = 0
    epoch_losses: list[float] = []
    for _ in range(cfg.epochs):
        order = rng.permutation(n_pairs)
        batches, negs, lrs = [], [], []
        for start in range(0, n_pairs, batch_size):
            batch = pairs[order[start:start + batch_size]]
            batches.append(batch)
            negs.append(noise.sample_array(rng, (len(batch), cfg.negative_samples)))
            lrs.append(max(cfg.min_learning_rate,
                           cfg.learning_rate * (1.0 - step / total_batches)))
            step += 1
        if workers > 1:
            # hogwild-style: concurrent unsynchronized updates, no bitwise determinism
            with ThreadPoolExecutor(max_workers=workers) as pool:
                losses = list(pool.map(
                    lambda args: _sgd_batch(w_in, w_out, *args), zip(batches, negs, lrs)))
        else:
            losses = [_sgd_batch(w_in, w_out, b, n, lr)
                      for b, n, lr in zip(batches, negs, lrs)]
        weighted = sum(l * len(b) for l, b in zip(losses, batches))
        epoch_losses.append(weighted / n_pairs)
    return w_in, w_out, epoch_losses
