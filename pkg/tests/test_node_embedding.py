import numpy as np
import pytest

from lexsim.graph import CitationGraph
from lexsim.node_embedding import (NodeEmbeddingModel, load_node_embeddings, node_cosine,
                                   save_node_embeddings, train_node_embeddings)
from lexsim.sgns import EmbeddingError, TrainConfig, dense_cosine
from lexsim.walks import WalkConfig, generate_walks

SMALL = TrainConfig(dimensions=8, window=3, epochs=2, seed=9)


def two_clique_graph(size=10):
    edges = []
    for base in (0, size):
        for i in range(size):
            for j in range(i + 1, size):
                edges.append((f"n{base + i}", f"n{base + j}"))
    edges.append(("n0", f"n{size}"))
    return CitationGraph([f"n{i}" for i in range(2 * size)], edges)


def clique_separation(model, size=10):
    ids = sorted(model.vectors)
    intra, inter = [], []
    for i in range(len(ids)):
        for j in range(i + 1, len(ids)):
            c = dense_cosine(model.vectors[ids[i]], model.vectors[ids[j]])
            same = (int(ids[i][1:]) < size) == (int(ids[j][1:]) < size)
            (intra if same else inter).append(c)
    return float(np.mean(intra)), float(np.mean(inter))


class TestTrainConfig:
    @pytest.mark.parametrize("kwargs", [
        dict(dimensions=1), dict(window=0), dict(negative_samples=0),
        dict(epochs=0), dict(learning_rate=0.0), dict(min_count=-1),
    ])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            TrainConfig(**kwargs)


class TestTraining:
    def test_vector_shapes(self, toy_graph):
        walks = generate_walks(toy_graph, WalkConfig(num_walks_per_node=2, walk_length=8, seed=1))
        model = train_node_embeddings(walks, SMALL)
        assert set(model.vectors) == set(toy_graph.nodes)
        assert all(v.shape == (8,) for v in model.vectors.values())

    def test_deterministic_bitwise(self, toy_graph):
        walks = generate_walks(toy_graph, WalkConfig(num_walks_per_node=2, walk_length=8, seed=1))
        m1 = train_node_embeddings(walks, SMALL)
        m2 = train_node_embeddings(walks, SMALL)
        for node in m1.vectors:
            assert (m1.vectors[node] == m2.vectors[node]).all()

    def test_no_trainable_pairs(self):
        with pytest.raises(EmbeddingError):
            train_node_embeddings([["A"], ["B"]], SMALL)

    def test_clique_separation_single_seed(self):
        g = two_clique_graph()
        walks = generate_walks(g, WalkConfig(num_walks_per_node=5, walk_length=20, seed=0))
        model = train_node_embeddings(
            walks, TrainConfig(dimensions=16, window=5, epochs=3, seed=0))
        intra, inter = clique_separation(model)
        assert intra > inter


class TestNodeCosine:
    def make_model(self, vectors):
        return NodeEmbeddingModel({k: np.array(v, float) for k, v in vectors.items()},
                                  TrainConfig(dimensions=2))

    def test_identical_vectors(self):
        m = self.make_model({"a": [1, 2], "b": [1, 2]})
        assert node_cosine(m, "a", "b").value == pytest.approx(1.0)

    def test_orthogonal(self):
        m = self.make_model({"a": [1, 0], "b": [0, 1]})
        assert node_cosine(m, "a", "b").value == pytest.approx(0.0)

    def test_opposite(self):
        m = self.make_model({"a": [1, 2], "b": [-1, -2]})
        assert node_cosine(m, "a", "b").value == pytest.approx(-1.0)

    def test_missing_vector(self):
        m = self.make_model({"a": [1, 0]})
        with pytest.raises(EmbeddingError):
            node_cosine(m, "a", "zzz")

    def test_zero_norm(self):
        m = self.make_model({"a": [0, 0], "b": [1, 0]})
        with pytest.raises(EmbeddingError):
            node_cosine(m, "a", "b")

    def test_symmetry_and_range(self, toy_graph):
        walks = generate_walks(toy_graph, WalkConfig(num_walks_per_node=2, walk_length=8, seed=3))
        model = train_node_embeddings(walks, SMALL)
        nodes = sorted(model.vectors)
        for a, b in zip(nodes, nodes[1:]):
            ab, ba = node_cosine(model, a, b).value, node_cosine(model, b, a).value
            assert ab == ba
            assert -1.0 <= ab <= 1.0


class TestPersistence:
    def test_round_trip(self, toy_graph, tmp_path):
        walks = generate_walks(toy_graph, WalkConfig(num_walks_per_node=2, walk_length=8, seed=1))
        model = train_node_embeddings(walks, SMALL)
        path = tmp_path / "model.txt"
        save_node_embeddings(model, path)
        loaded = load_node_embeddings(path)
        assert set(loaded.vectors) == set(model.vectors)
        for node in model.vectors:
            assert (loaded.vectors[node] == model.vectors[node]).all()
        assert loaded.cfg == model.cfg

    def test_rejects_wrong_header(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("not a model\n")
        with pytest.raises(EmbeddingError):
            load_node_embeddings(path)

    def test_rejects_inconsistent_dims(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("#lexsim-node2vec 1\nA 2 0.0 1.0\nB 3 0.0 1.0 2.0\n")
        with pytest.raises(EmbeddingError, match="dimensions"):
            load_node_embeddings(path)
