"""lexsim: similarity measures for legal case documents.

Network measures operate on the precedent citation graph (bibliographic
coupling, co-citation, dispersion, node2vec cosine); text measures operate
on the judgment text (paragraph links, full-text embedding cosine, thematic
segment similarity). The evaluation harness correlates every measure with
expert-annotated pair scores.
"""

from lexsim.corpus import Corpus, Document, SimilarityScore, load_corpus, split_paragraphs, tokenize
from lexsim.graph import CitationGraph, biblio_coupling, build_graph, co_citation, dispersion
from lexsim.walks import WalkConfig, generate_walks
from lexsim.sgns import TrainConfig
from lexsim.node_embedding import NodeEmbeddingModel, node_cosine, train_node_embeddings
from lexsim.doc_embedding import DocEmbeddingModel, fulltext_similarity, infer_doc_vector, train_doc_embeddings
from lexsim.tfidf import TfIdfModel, cosine, fit_tfidf, paragraph_links_similarity, transform_tfidf
from lexsim.thematic import Aggregation, RhetoricalRole, SegmentedDocument, per_role_report, segment_document, thematic_similarity
from lexsim.evaluation import EvaluationPair, MethodResult, combine, load_pairs, pearson, run_benchmark

__version__ = "0.1.0"
