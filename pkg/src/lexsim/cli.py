"""Command-line interface: build-graph, train, sim, segment, evaluate.

A JSON config file (``--config`` or $LEXSIM_CONFIG) supplies defaults for
any flag; explicit flags win. All randomness flows from ``--seed``, so a
run in deterministic mode (``--threads 1``) is fully reproducible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from lexsim.corpus import Corpus, CorpusError, load_corpus, load_stopwords
from lexsim.doc_embedding import (fulltext_similarity, load_doc_embeddings,
                                  save_doc_embeddings, train_doc_embeddings)
from lexsim.evaluation import (EvaluationError, ScoreUnavailable, format_summary, load_pairs,
                               run_benchmark, write_pair_report, write_summary)
from lexsim.graph import (CitationGraph, GraphError, biblio_coupling, build_graph, co_citation,
                          dispersion, export_edges)
from lexsim.node_embedding import (load_node_embeddings, node_cosine, save_node_embeddings,
                                   train_node_embeddings)
from lexsim.sgns import EmbeddingError, TrainConfig
from lexsim.corpus import tokenize
from lexsim.tfidf import VectorizerError, fit_tfidf, paragraph_links_similarity
from lexsim.thematic import (Aggregation, CueLexicon, SegmentationError, default_lexicon,
                             segment_document, thematic_similarity)
from lexsim.walks import WalkConfig, generate_walks

DEFAULT_SEED = 42
CONFIG_ENV = "LEXSIM_CONFIG"

NETWORK_METHODS = ("biblio", "cocite", "dispersion", "node2vec")
TEXT_METHODS = ("paragraph", "fulltext", "thematic_max", "thematic_avg")
ALL_METHODS = NETWORK_METHODS + TEXT_METHODS


def _add_corpus_args(parser):
    parser.add_argument("--corpus", required=True, help="directory of <DocumentId>.txt files")
    parser.add_argument("--citations", required=True, help="CSV edge list with header src,dst")
    parser.add_argument("--strict", action="store_true",
                        help="reject citation endpoints and pair ids not in the corpus")
    parser.add_argument("--stopwords", help="optional stopword file, one word per line")


def _add_train_args(parser):
    parser.add_argument("--dimensions", type=int, default=None)
    parser.add_argument("--window", type=int, default=None)
    parser.add_argument("--negative", type=int, default=None)
    parser.add_argument("--epochs", type=int, default=None)
    parser.add_argument("--lr", type=float, default=None)
    parser.add_argument("--min-count", type=int, default=None)
    parser.add_argument("--num-walks", type=int, default=10)
    parser.add_argument("--walk-length", type=int, default=80)
    parser.add_argument("--p", type=float, default=1.0)
    parser.add_argument("--q", type=float, default=1.0)
    parser.add_argument("--directed-walks", action="store_true",
                        help="walk along citation direction instead of the undirected projection")
    parser.add_argument("--infer-epochs", type=int, default=50)
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--threads", type=int, default=1,
                        help="1 = deterministic; >1 = fast mode without bitwise determinism")


def _train_config(args, kind: str) -> TrainConfig:
    # per-kind defaults where flags were not given
    defaults = {
        "node2vec": dict(dimensions=128, window=10, negative=5, epochs=5, lr=0.025, min_count=1),
        "docvec": dict(dimensions=100, window=10, negative=5, epochs=20, lr=0.025, min_count=5),
    }[kind]
    return TrainConfig(
        dimensions=args.dimensions if args.dimensions is not None else defaults["dimensions"],
        window=args.window if args.window is not None else defaults["window"],
        negative_samples=args.negative if args.negative is not None else defaults["negative"],
        epochs=args.epochs if args.epochs is not None else defaults["epochs"],
        learning_rate=args.lr if args.lr is not None else defaults["lr"],
        min_count=args.min_count if args.min_count is not None else defaults["min_count"],
        seed=args.seed,
    )


def _walk_config(args) -> WalkConfig:
    return WalkConfig(num_walks_per_node=args.num_walks, walk_length=args.walk_length,
                      p=args.p, q=args.q, seed=args.seed)


def build_parser() -> tuple[argparse.ArgumentParser, list[argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(prog="lexsim",
                                     description="Legal case document similarity toolkit")
    parser.add_argument("--config", help="JSON config file with flag defaults")
    sub = parser.add_subparsers(dest="command", required=True)
    subparsers = []

    p = sub.add_parser("build-graph", help="build the citation graph and print stats")
    _add_corpus_args(p)
    p.add_argument("--export", help="write the edge list CSV here")
    p.set_defaults(func=cmd_build_graph)
    subparsers.append(p)

    p = sub.add_parser("train", help="train and persist an embedding model")
    p.add_argument("kind", choices=["node2vec", "docvec"])
    _add_corpus_args(p)
    _add_train_args(p)
    p.add_argument("--holdout", action="append", default=[],
                   help="document id excluded from docvec training (repeatable)")
    p.add_argument("--out", required=True, help="model file path")
    p.set_defaults(func=cmd_train)
    subparsers.append(p)

    p = sub.add_parser("sim", help="score one document pair under one method")
    p.add_argument("method", choices=ALL_METHODS)
    p.add_argument("doc_a")
    p.add_argument("doc_b")
    _add_corpus_args(p)
    p.add_argument("--model", help="trained model file (node2vec / fulltext)")
    p.add_argument("--para-threshold", type=float, default=0.3)
    p.add_argument("--segments-dir", help="directory of <DocumentId>.tsv role sidecars")
    p.add_argument("--lexicon", help="cue lexicon JSON overriding the shipped one")
    p.add_argument("--infer-epochs", type=int, default=50)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_sim)
    subparsers.append(p)

    p = sub.add_parser("segment", help="print rhetorical-role assignment per paragraph")
    p.add_argument("doc_id")
    _add_corpus_args(p)
    p.add_argument("--mode", choices=["heuristic", "annotated"], default="heuristic")
    p.add_argument("--segments-dir")
    p.add_argument("--lexicon")
    p.set_defaults(func=cmd_segment)
    subparsers.append(p)

    p = sub.add_parser("evaluate", help="run the benchmark against expert pairs")
    _add_corpus_args(p)
    _add_train_args(p)
    p.add_argument("--pairs", required=True, help="CSV with header doc_a,doc_b,score")
    p.add_argument("--method", action="append", choices=ALL_METHODS,
                   help="method to evaluate (repeatable)")
    p.add_argument("--combine", action="append", default=[],
                   help="network:text:agg combination, e.g. biblio:fulltext:max (repeatable)")
    p.add_argument("--rescale", action="store_true",
                   help="also report min-max rescaled scores and combinations")
    p.add_argument("--para-threshold", type=float, default=0.3)
    p.add_argument("--segments-dir")
    p.add_argument("--lexicon")
    p.add_argument("--node2vec-model", help="load instead of training")
    p.add_argument("--docvec-model", help="load instead of training")
    p.add_argument("--out", required=True, help="output directory for report CSVs")
    p.set_defaults(func=cmd_evaluate)
    subparsers.append(p)

    return parser, subparsers


def _apply_config(argv, parser, subparsers) -> None:
    path = None
    for i, arg in enumerate(argv):
        if arg == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif arg.startswith("--config="):
            path = arg.split("=", 1)[1]
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return
    with open(path, encoding="utf-8") as fh:
        config = json.load(fh)
    defaults = {k.replace("-", "_"): v for k, v in config.items()}
    for sp in subparsers:
        sp.set_defaults(**defaults)


def cmd_build_graph(args) -> int:
    corpus = load_corpus(args.corpus, args.citations, args.strict)
    graph = build_graph(corpus)
    print(f"{len(graph)} nodes, {graph.n_edges} edges")
    print(f"{len(graph.isolated_nodes())} isolated nodes")
    if args.export:
        export_edges(graph, args.export)
        print(f"edge list written to {args.export}")
    return 0


def cmd_train(args) -> int:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    corpus = load_corpus(args.corpus, args.citations, args.strict)
    cfg = _train_config(args, args.kind)
    if args.kind == "node2vec":
        graph = build_graph(corpus)
        walks = generate_walks(graph, _walk_config(args), directed=args.directed_walks)
        model = train_node_embeddings(walks, cfg, workers=args.threads)
        save_node_embeddings(model, args.out)
        print(f"node2vec model with {len(model.vectors)} vectors written to {args.out}")
    else:
        model = train_doc_embeddings(corpus, set(args.holdout), cfg,
                                     stopwords=stopwords, workers=args.threads)
        save_doc_embeddings(model, args.out)
        print(f"docvec model with {len(model.doc_vectors)} document vectors "
              f"written to {args.out}")
    return 0


def _get_document(corpus: Corpus, doc_id: str):
    if doc_id not in corpus.documents:
        raise CorpusError(f"unknown document {doc_id!r}")
    return corpus.documents[doc_id]


def _paragraph_tfidf(corpus: Corpus, stopwords=None):
    units = [tokenize(p, stopwords)
             for doc_id in sorted(corpus.documents)
             for p in corpus.documents[doc_id].paragraphs]
    return fit_tfidf(units)


def _segmented(corpus: Corpus, doc_id: str, args, lexicon):
    doc = _get_document(corpus, doc_id)
    if args.segments_dir:
        sidecar = Path(args.segments_dir) / f"{doc_id}.tsv"
        return segment_document(doc, "annotated", sidecar=sidecar)
    return segment_document(doc, "heuristic", lexicon=lexicon)


def cmd_sim(args) -> int:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    corpus = load_corpus(args.corpus, args.citations, args.strict)
    a, b = args.doc_a, args.doc_b
    method = args.method

    if method in ("biblio", "cocite", "dispersion"):
        graph = build_graph(corpus)
        fn = {"biblio": biblio_coupling, "cocite": co_citation, "dispersion": dispersion}[method]
        score = fn(graph, a, b)
    elif method == "node2vec":
        if not args.model:
            raise EmbeddingError("method node2vec requires --model")
        score = node_cosine(load_node_embeddings(args.model), a, b)
    elif method == "fulltext":
        if not args.model:
            raise EmbeddingError("method fulltext requires --model")
        model = load_doc_embeddings(args.model)
        score = fulltext_similarity(model, _get_document(corpus, a), _get_document(corpus, b),
                                    infer_epochs=args.infer_epochs, seed=args.seed,
                                    stopwords=stopwords)
    elif method == "paragraph":
        model = _paragraph_tfidf(corpus, stopwords)
        score = paragraph_links_similarity(_get_document(corpus, a), _get_document(corpus, b),
                                           model, args.para_threshold)
    else:  # thematic_max / thematic_avg
        lexicon = CueLexicon.from_file(args.lexicon) if args.lexicon else default_lexicon()
        model = _paragraph_tfidf(corpus, stopwords)
        agg = Aggregation.MAX if method == "thematic_max" else Aggregation.AVERAGE
        score = thematic_similarity(_segmented(corpus, a, args, lexicon),
                                    _segmented(corpus, b, args, lexicon),
                                    agg, rep="tfidf", context=model)
    print(f"{method} {a} {b} {score.value:.6f}")
    return 0


def cmd_segment(args) -> int:
    corpus = load_corpus(args.corpus, args.citations, args.strict)
    doc = _get_document(corpus, args.doc_id)
    if args.mode == "annotated":
        if not args.segments_dir:
            raise SegmentationError("annotated mode requires --segments-dir")
        from lexsim.thematic import parse_segment_sidecar
        sidecar = Path(args.segments_dir) / f"{args.doc_id}.tsv"
        if not sidecar.is_file():
            raise SegmentationError(f"missing segment sidecar {sidecar}")
        roles = parse_segment_sidecar(sidecar, len(doc.paragraphs))
    else:
        lexicon = CueLexicon.from_file(args.lexicon) if args.lexicon else default_lexicon()
        roles = [lexicon.classify(p) for p in doc.paragraphs]
    for i, role in enumerate(roles):
        print(f"{role.value}\t{i}")
    return 0


def _parse_combo(spec: str) -> tuple[str, str, Aggregation]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise EvaluationError(f"bad --combine spec {spec!r}, expected net:text:agg")
    net, text, agg = parts
    if net not in NETWORK_METHODS:
        raise EvaluationError(f"unknown network method {net!r} in --combine")
    if text not in TEXT_METHODS:
        raise EvaluationError(f"unknown text method {text!r} in --combine")
    try:
        aggregation = Aggregation(agg)
    except ValueError as exc:
        raise EvaluationError(f"unknown aggregation {agg!r} in --combine") from exc
    return net, text, aggregation


def _build_scorers(methods, corpus, graph, pairs, args, stopwords):
    lexicon = None
    tfidf_model = None
    node_model = None
    doc_model = None

    def paragraph_model():
        nonlocal tfidf_model
        if tfidf_model is None:
            tfidf_model = _paragraph_tfidf(corpus, stopwords)
        return tfidf_model

    def get_lexicon():
        nonlocal lexicon
        if lexicon is None:
            lexicon = CueLexicon.from_file(args.lexicon) if args.lexicon else default_lexicon()
        return lexicon

    def node2vec_model():
        nonlocal node_model
        if node_model is None:
            if args.node2vec_model:
                node_model = load_node_embeddings(args.node2vec_model)
            else:
                walks = generate_walks(graph, _walk_config(args),
                                       directed=args.directed_walks)
                node_model = train_node_embeddings(walks, _train_config(args, "node2vec"),
                                                   workers=args.threads)
        return node_model

    def docvec_model():
        nonlocal doc_model
        if doc_model is None:
            if args.docvec_model:
                doc_model = load_doc_embeddings(args.docvec_model)
            else:
                holdout = {d for p in pairs for d in (p.a, p.b)}
                doc_model = train_doc_embeddings(corpus, holdout,
                                                 _train_config(args, "docvec"),
                                                 stopwords=stopwords, workers=args.threads)
        return doc_model

    def unavailable(fn):
        def scorer(a, b):
            try:
                return fn(a, b)
            except (GraphError, EmbeddingError, VectorizerError,
                    SegmentationError, CorpusError) as exc:
                raise ScoreUnavailable(str(exc)) from exc
        return scorer

    def thematic_scorer(agg):
        def scorer(a, b):
            s1 = _segmented(corpus, a, args, get_lexicon())
            s2 = _segmented(corpus, b, args, get_lexicon())
            return thematic_similarity(s1, s2, agg, rep="tfidf",
                                       context=paragraph_model()).value
        return scorer

    factory = {
        "biblio": lambda: unavailable(lambda a, b: biblio_coupling(graph, a, b).value),
        "cocite": lambda: unavailable(lambda a, b: co_citation(graph, a, b).value),
        "dispersion": lambda: unavailable(lambda a, b: dispersion(graph, a, b).value),
        "node2vec": lambda: unavailable(lambda a, b: node_cosine(node2vec_model(), a, b).value),
        "paragraph": lambda: unavailable(
            lambda a, b: paragraph_links_similarity(
                _get_document(corpus, a), _get_document(corpus, b),
                paragraph_model(), args.para_threshold).value),
        "fulltext": lambda: unavailable(
            lambda a, b: fulltext_similarity(
                docvec_model(), _get_document(corpus, a), _get_document(corpus, b),
                infer_epochs=args.infer_epochs, seed=args.seed, stopwords=stopwords).value),
        "thematic_max": lambda: unavailable(thematic_scorer(Aggregation.MAX)),
        "thematic_avg": lambda: unavailable(thematic_scorer(Aggregation.AVERAGE)),
    }
    return {name: factory[name]() for name in methods}


def cmd_evaluate(args) -> int:
    stopwords = load_stopwords(args.stopwords) if args.stopwords else None
    corpus = load_corpus(args.corpus, args.citations, args.strict)
    graph = build_graph(corpus)
    pairs = load_pairs(args.pairs, known_ids=set(corpus.documents), strict=args.strict,
                       warn=lambda msg: print(f"warning: {msg}", file=sys.stderr))
    if not pairs:
        raise EvaluationError(f"{args.pairs}: no evaluation pairs")

    methods = list(args.method) if args.method else ["biblio", "cocite", "dispersion", "paragraph"]
    combos = [_parse_combo(c) for c in args.combine]
    for net, text, _ in combos:
        for name in (net, text):
            if name not in methods:
                methods.append(name)

    scorers = _build_scorers(methods, corpus, graph, pairs, args, stopwords)
    results = run_benchmark(pairs, scorers, combos, rescale=args.rescale)

    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    write_pair_report(outdir / "pairs.csv", pairs, results)
    write_summary(outdir / "summary.csv", results)
    print(format_summary(results), end="")
    print(f"reports written to {outdir}")
    return 0


def main(argv=None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, subparsers = build_parser()
    try:
        _apply_config(argv, parser, subparsers)
        args = parser.parse_args(argv)
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
