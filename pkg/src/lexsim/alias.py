"""Alias-method sampling from a fixed discrete distribution in O(1) per draw."""

from __future__ import annotations

import numpy as np


class AliasTable:
    def __init__(self, weights):
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise ValueError("weights must be a non-empty 1-d array")
        if (w < 0).any() or w.sum() <= 0:
            raise ValueError("weights must be non-negative with a positive sum")
        n = w.size
        scaled = w * n / w.sum()
        self.n = n
        self.prob = np.ones(n, dtype=np.float64)
        self.alias = np.arange(n, dtype=np.int64)

        small = [i for i in range(n) if scaled[i] < 1.0]
        large = [i for i in range(n) if scaled[i] >= 1.0]
        while small and large:
            s = small.pop()
            l = large.pop()
            self.prob[s] = scaled[s]
            self.alias[s] = l
            scaled[l] -= 1.0 - scaled[s]
            (small if scaled[l] < 1.0 else large).append(l)
        # leftovers are 1.0 up to rounding
        for i in small + large:
            self.prob[i] = 1.0

    def sample(self, rng: np.random.Generator) -> int:
        i = int(rng.integers(self.n))
        if rng.random() < self.prob[i]:
            return i
        return int(self.alias[i])

    def sample_array(self, rng: np.random.Generator, shape) -> np.ndarray:
        idx = rng.integers(0, self.n, size=shape)
        keep = rng.random(shape) < self.prob[idx]
        return np.where(keep, idx, self.alias[idx])

    def probabilities(self) -> np.ndarray:
        """Exact distribution the table samples from (for tests)."""
        p = self.prob / self.n
        out = p.copy()
        np.add.at(out, self.alias, (1.0 - self.prob) / self.n)
        return out
