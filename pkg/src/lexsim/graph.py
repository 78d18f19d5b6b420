"""Directed precedent-citation graph and classical pairwise network measures."""

from __future__ import annotations

import csv
from itertools import combinations
from pathlib import Path
from typing import Iterable, Iterator

from lexsim.corpus import Corpus, SimilarityScore


class GraphError(ValueError):
    """Unknown node, identical-pair query, or inconsistent edge data."""


class CitationGraph:
    """Immutable directed graph over document ids with both adjacency directions.

    Duplicate edges collapse to one (set semantics); self-loops are rejected.
    """

    def __init__(self, nodes: Iterable[str], edges: Iterable[tuple[str, str]]):
        self._nodes = frozenset(nodes)
        out_adj: dict[str, set[str]] = {n: set() for n in self._nodes}
        in_adj: dict[str, set[str]] = {n: set() for n in self._nodes}
        for src, dst in edges:
            if src == dst:
                raise GraphError(f"self-loop edge {src!r}")
            if src not in out_adj or dst not in in_adj:
                raise GraphError(f"edge ({src!r}, {dst!r}) references an unknown node")
            out_adj[src].add(dst)
            in_adj[dst].add(src)
        self._out = {n: frozenset(s) for n, s in out_adj.items()}
        self._in = {n: frozenset(s) for n, s in in_adj.items()}

    @property
    def nodes(self) -> frozenset[str]:
        return self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def __contains__(self, node: str) -> bool:
        return node in self._nodes

    def out_neighbors(self, node: str) -> frozenset[str]:
        self._require_node(node)
        return self._out[node]

    def in_neighbors(self, node: str) -> frozenset[str]:
        self._require_node(node)
        return self._in[node]

    def undirected_neighbors(self, node: str) -> frozenset[str]:
        self._require_node(node)
        return self._out[node] | self._in[node]

    def edges(self) -> Iterator[tuple[str, str]]:
        for src in sorted(self._out):
            for dst in sorted(self._out[src]):
                yield src, dst

    @property
    def n_edges(self) -> int:
        return sum(len(s) for s in self._out.values())

    def isolated_nodes(self) -> list[str]:
        return sorted(n for n in self._nodes if not self._out[n] and not self._in[n])

    def _require_node(self, node: str) -> None:
        if node not in self._nodes:
            raise GraphError(f"unknown node {node!r}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CitationGraph):
            return NotImplemented
        return self._nodes == other._nodes and self._out == other._out


def build_graph(corpus: Corpus) -> CitationGraph:
    """One node per document (isolated nodes kept, external endpoints included)."""
    nodes = set(corpus.documents) | set(corpus.external_ids)
    return CitationGraph(nodes, corpus.citation_edges)


def export_edges(graph: CitationGraph, path: str | Path) -> None:
    """Write the edge list in the same CSV format the loader accepts."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst"])
        for src, dst in graph.edges():
            writer.writerow([src, dst])


def _require_pair(graph: CitationGraph, a: str, b: str) -> None:
    graph._require_node(a)
    graph._require_node(b)
    if a == b:
        raise GraphError(f"similarity of a node with itself is not defined (got {a!r} twice)")


def biblio_coupling(graph: CitationGraph, a: str, b: str) -> SimilarityScore:
    """Jaccard overlap of out-citation sets; 0 when both sets are empty."""
    _require_pair(graph, a, b)
    a_out, b_out = graph.out_neighbors(a), graph.out_neighbors(b)
    union = a_out | b_out
    value = len(a_out & b_out) / len(union) if union else 0.0
    return SimilarityScore("biblio", (a, b), value)


def co_citation(graph: CitationGraph, a: str, b: str) -> SimilarityScore:
    """Jaccard overlap of in-citation sets; 0 when both sets are empty."""
    _require_pair(graph, a, b)
    a_in, b_in = graph.in_neighbors(a), graph.in_neighbors(b)
    union = a_in | b_in
    value = len(a_in & b_in) / len(union) if union else 0.0
    return SimilarityScore("cocite", (a, b), value)


def dispersion(graph: CitationGraph, a: str, b: str, normalized: bool = True) -> SimilarityScore:
    """Dispersion of the pair on the undirected projection of the graph.

    Counts unordered pairs {s, t} of common neighbors of a and b that are
    (i) not adjacent and (ii) share no common neighbor besides a and b.
    Normalized form divides by the embeddedness |common neighbors|, with 0
    at embeddedness 0.
    """
    _require_pair(graph, a, b)
    nbrs = graph.undirected_neighbors
    common = (nbrs(a) & nbrs(b)) - {a, b}
    raw = 0
    for s, t in combinations(sorted(common), 2):
        if t in nbrs(s):
            continue
        if (nbrs(s) & nbrs(t)) - {a, b}:
            continue
        raw += 1
    if normalized:
        value = raw / len(common) if common else 0.0
    else:
        value = float(raw)
    return SimilarityScore("dispersion", (a, b), value)
