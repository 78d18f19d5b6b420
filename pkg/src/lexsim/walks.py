"""Second-order biased random walks over the citation graph.

Transitions follow the return/in-out bias: stepping from v with previous
node t, a candidate x gets unnormalized weight 1/p if x == t, 1 if x is
adjacent to t, and 1/q otherwise. Sampling uses precomputed alias tables
and is fully deterministic given the seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from lexsim.alias import AliasTable
from lexsim.graph import CitationGraph, GraphError


@dataclass(frozen=True)
class WalkConfig:
    num_walks_per_node: int = 10
    walk_length: int = 80
    p: float = 1.0
    q: float = 1.0
    seed: int = 42

    def __post_init__(self):
        if self.num_walks_per_node <= 0 or self.walk_length <= 0:
            raise ValueError("num_walks_per_node and walk_length must be positive")
        if self.p <= 0 or self.q <= 0:
            raise ValueError("p and q must be positive")


def _neighbor_lists(graph: CitationGraph, directed: bool) -> dict[str, list[str]]:
    if directed:
        return {n: sorted(graph.out_neighbors(n)) for n in graph.nodes}
    return {n: sorted(graph.undirected_neighbors(n)) for n in graph.nodes}


def step_weights(nbrs: dict[str, list[str]], prev: str, cur: str, p: float, q: float) -> list[float]:
    """Unnormalized transition weights from cur to each neighbor, given prev."""
    prev_adj = set(nbrs[prev])
    weights = []
    for x in nbrs[cur]:
        if x == prev:
            weights.append(1.0 / p)
        elif x in prev_adj:
            weights.append(1.0)
        else:
            weights.append(1.0 / q)
    return weights


def step_distribution(graph: CitationGraph, prev: str, cur: str, p: float, q: float,
                      directed: bool = False) -> dict[str, float]:
    """Normalized transition probabilities (independent of the sampler)."""
    nbrs = _neighbor_lists(graph, directed)
    weights = step_weights(nbrs, prev, cur, p, q)
    total = sum(weights)
    if total == 0:
        return {}
    return {x: w / total for x, w in zip(nbrs[cur], weights)}


def generate_walks(graph: CitationGraph, cfg: WalkConfig, directed: bool = False) -> list[list[str]]:
    """Emit num_walks_per_node walks from every non-isolated node.

    The first step is uniform over neighbors; later steps use the p/q bias.
    Walks may end early if the current node has no usable next step (only
    possible with directed walks).
    """
    if len(graph) == 0:
        raise GraphError("cannot generate walks on an empty graph")
    nbrs = _neighbor_lists(graph, directed)

    tables: dict[tuple[str, str], AliasTable] = {}
    for prev in sorted(graph.nodes):
        for cur in nbrs[prev]:
            weights = step_weights(nbrs, prev, cur, cfg.p, cfg.q)
            if weights:
                tables[(prev, cur)] = AliasTable(weights)

    rng = np.random.default_rng(cfg.seed)
    starts = sorted(n for n in graph.nodes if nbrs[n])
    walks: list[list[str]] = []
    for _ in range(cfg.num_walks_per_node):
        for start in starts:
            walk = [start]
            while len(walk) < cfg.walk_length:
                cur = walk[-1]
                cur_nbrs = nbrs[cur]
                if not cur_nbrs:
                    break
                if len(walk) == 1:
                    nxt = cur_nbrs[int(rng.integers(len(cur_nbrs)))]
                else:
                    table = tables.get((walk[-2], cur))
                    if table is None:
                        break
                    nxt = cur_nbrs[table.sample(rng)]
                walk.append(nxt)
            walks.append(walk)
    return walks
